#include "mod2betti/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mod2betti/errors.hpp"
#include "mod2betti/moduli.hpp"
#include "mod2betti/mv.hpp"
#include "mod2betti/output.hpp"
#include "mod2betti/printed.hpp"
#include "mod2betti/serre.hpp"

namespace mod2betti {

namespace {

using Status = CheckResult::Status;

std::string join(const std::vector<BigCount>& v, std::size_t from, std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to && i < v.size(); ++i) s += (i > from ? "," : "") + v[i].str();
  return s;
}

MapRef parse_map(const std::string& s) {
  // kind:genus:degree, e.g. nu:2:5
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos) throw ParseError("bad map \"" + s + "\" (expected nu:G:R)");
  MapRef m;
  const std::string kind = s.substr(0, a);
  if (kind == "nu") {
    m.kind = MapKind::nu;
  } else if (kind == "rho") {
    m.kind = MapKind::rho;
  } else if (kind == "mu") {
    m.kind = MapKind::mu;
  } else {
    throw ParseError("bad map kind \"" + kind + "\" in \"" + s + "\"");
  }
  try {
    std::size_t used = 0;
    const std::string g = s.substr(a + 1, b - a - 1);
    const std::string r = s.substr(b + 1);
    m.genus = std::stoi(g, &used);
    if (used != g.size()) throw std::invalid_argument(g);
    m.degree = std::stol(r, &used);
    if (used != r.size()) throw std::invalid_argument(r);
  } catch (const std::logic_error&) {
    throw ParseError("bad map \"" + s + "\" (expected nu:G:R)");
  }
  return m;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "FAIL";
    case Status::info:
      return "info";
  }
  return "?";
}

Field parse_field(const std::string& s) {
  if (s == "f2") return Field::F2;
  if (s == "q") return Field::Q;
  throw ParseError("unknown field \"" + s + "\" (expected q or f2)");
}

void require_genus(int g, int lo, int hi, const char* flag) {
  if (g < lo || g > hi) {
    throw ValidationError(fmt::format("{} {} is out of range {}..{}", flag, g, lo, hi));
  }
}

// ---- subcommand bodies -------------------------------------------------

std::vector<Table> cmd_betti(int g, const std::string& field) {
  require_genus(g, 1, 500, "--genus");
  const Field f = parse_field(field);
  const BettiTable t = f == Field::F2 ? mod2_table(g) : rational_table(g);
  return {betti_rows(t, fmt::format("{} Betti numbers of the framed moduli space, genus {}",
                                    to_string(f), g))};
}

std::vector<Table> cmd_tables(int max_genus, const std::string& field, bool full) {
  require_genus(max_genus, 1, 60, "--max-genus");
  std::vector<Table> out;
  if (field == "both" || field == "f2") out.push_back(half_column_table(max_genus, Field::F2, full));
  if (field == "both" || field == "q") out.push_back(half_column_table(max_genus, Field::Q, full));
  if (out.empty()) throw ParseError("unknown field \"" + field + "\" (expected q, f2 or both)");
  return out;
}

std::vector<Table> cmd_nplus(int g) {
  require_genus(g, 1, 60, "--genus");
  const BettiTable h = mod2_table(g);
  const BettiTable np = nplus_betti(g, h);
  const BettiTable nh = nhat_betti(g, h);
  Table t{fmt::format("Z/2 Betti numbers of N+ and (N+, boundary), genus {}", g),
          {"r", "h", "nplus", "nhat"},
          {},
          {}};
  for (long r = 0; r <= 6L * g; ++r)
    t.rows.push_back({std::to_string(r), h.at(r).str(), np.at(r).str(), nh.at(r).str()});
  return {t};
}

std::vector<Table> cmd_profiles(int g) {
  require_genus(g, 1, 2, "--genus");
  const GenusData d = g == 1 ? genus1_data() : genus2_data();
  Table t{fmt::format("Genus {} data", g), {"r", "h", "nplus", "mu", "rho", "nu"}, {}, {}};
  for (long r = 0; r <= 6L * g - 1; ++r) {
    const auto nu = d.nu_at(r);
    t.rows.push_back({std::to_string(r), d.h.at(r).str(), d.nplus.at(r).str(), d.mu_at(r).str(),
                      d.rho_at(r).str(), nu ? nu->str() : "?"});
  }
  for (const auto& c : d.constraints) t.notes.push_back("constraint: " + c.str() + " [" + c.source + "]");
  for (const auto& diag : compare_with_printed(g)) {
    t.notes.push_back(fmt::format("{} [{}]: {}", diag.id,
                                  diag.severity == Diagnostic::Severity::info ? "info" : "error",
                                  diag.message));
  }
  return {t};
}

std::vector<Table> cmd_serre(std::optional<int> genus, const std::string& ring_file) {
  AlphaAction a;
  if (!ring_file.empty()) {
    a = load_alpha_profile(ring_file);
  } else {
    if (!genus || *genus != 2) throw ValidationError("serre needs --genus 2 or --ring-file PATH");
    a = genus2_ring();
  }
  const BettiTable h = serre_betti(a);
  Table t = betti_rows(h, fmt::format("Betti numbers from the alpha action, genus {}", a.genus));
  const BettiTable rec = mod2_table(a.genus);
  if (h == rec) {
    t.notes.push_back("Agrees with the recursive table.");
  } else {
    for (long r = 0; r <= h.top_degree(); ++r) {
      if (h.at(r) != rec.at(r)) {
        t.notes.push_back(fmt::format("Differs from the recursive table first at degree {}: {} vs {}.",
                                      r, h.at(r).str(), rec.at(r).str()));
        break;
      }
    }
  }
  return {t};
}

std::vector<Table> cmd_mv_degree(const Split& s, long r, std::uint64_t seed, std::size_t samples,
                                 bool dump, std::ostream& out) {
  const GenusData da = split_factor_data(s.a);
  const GenusData db = split_factor_data(s.b);
  const Diagram d = build_split(r, da, db);
  if (dump) out << dump_diagram(d) << "\n";
  const GenusRealization ra = realize_genus(da, seed);
  const GenusRealization rb = realize_genus(db, seed == 0 ? 0 : seed + 1);
  const KerCoker kc = samples > 1 ? sample_lambda(r, da, db, seed, samples)
                                  : lambda_ker_coker(r, da, db, ra, rb);
  const Diagram reduced = eliminate(materialize(d, Factors{&ra, &rb}));
  Table t{d.name + " (" + s.str() + ")", {"quantity", "value"}, {}, {}};
  t.rows.push_back({"domain summands", std::to_string(d.domain.size())});
  t.rows.push_back({"domain dim", std::to_string(d.domain_dim())});
  t.rows.push_back({"codomain summands", std::to_string(d.codomain.size())});
  t.rows.push_back({"codomain dim", std::to_string(d.codomain_dim())});
  t.rows.push_back({"ker", kc.ker.str()});
  t.rows.push_back({"coker", kc.coker.str()});
  const KerCoker rkc = diagram_ker_coker(reduced);
  t.rows.push_back({"summands after elimination",
                    fmt::format("{} -> {}", reduced.domain.size(), reduced.codomain.size())});
  t.rows.push_back({"ker after elimination", rkc.ker.str()});
  t.rows.push_back({"coker after elimination", rkc.coker.str()});
  if (s.a == 1) {
    if (const auto l = closed_form_1g(r, s.b, db.h)) {
      t.rows.push_back({fmt::format("closed form ker (case {})", l->ker_case), std::to_string(l->ker)});
      t.rows.push_back({fmt::format("closed form coker (case {})", l->coker_case), std::to_string(l->coker)});
    }
  }
  t.notes.push_back(fmt::format("seed {}, {} sample(s)", seed, std::max<std::size_t>(samples, 1)));
  return {t};
}

std::vector<Table> cmd_mv_table(const Split& s) {
  const GenusData da = split_factor_data(s.a);
  const GenusData db = split_factor_data(s.b);
  const BettiTable target = mod2_table(s.target_genus());
  const FeasibleTable all = feasible_table(da, db);
  const FeasibleTable glued = feasible_table(da, db, &target);
  const bool reference = s.a == 2 && s.b == 2;
  Table t{fmt::format("lambda^{{{},{}}} over all admissible realizations", s.a, s.b),
          {"r", "h", "coker", "ker", "coker (glued)", "ker (glued)", "pinned"},
          {},
          {}};
  if (reference) {
    t.columns.push_back("printed coker");
    t.columns.push_back("printed ker");
  }
  const auto printed = printed_split22_table();
  std::vector<std::string> pinned, open;
  for (std::size_t i = 0; i < all.rows.size(); ++i) {
    const FeasibleRow& a = all.rows[i];
    const FeasibleRow& g = glued.rows[i];
    const bool pin = a.ker.exact() && a.coker.exact();
    (pin ? pinned : open).push_back(std::to_string(a.r));
    std::vector<std::string> row{std::to_string(a.r), target.at(a.r).str(), a.coker.str(),
                                 a.ker.str(), g.coker.str(), g.ker.str(), pin ? "yes" : "no"};
    if (reference) {
      row.push_back(std::to_string(printed[i].coker));
      row.push_back(std::to_string(printed[i].ker));
    }
    t.rows.push_back(std::move(row));
  }
  const auto list = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s.empty() ? std::string("none") : s;
  };
  t.notes.push_back(fmt::format("{} realization pairs{}; {} glue to the genus {} table.", all.pairs,
                                all.exhaustive ? " (all)" : " (sampled)", glued.kept,
                                s.target_genus()));
  t.notes.push_back("Pinned by the factor data alone: r = " + list(pinned) + ".");
  t.notes.push_back("Open until glued: r = " + list(open) + ".");
  return {t};
}

std::vector<Table> cmd_infer(const Split& s, const std::vector<std::string>& maps,
                             std::optional<long> degree, std::size_t samples, std::uint64_t seed,
                             const std::string& conjecture) {
  InferQuery q;
  if (!conjecture.empty()) q.conjecture = parse_half_reading(conjecture);
  q.split = s;
  for (const auto& m : maps) q.unknowns.push_back(parse_map(m));
  q.degree = degree;
  q.samples = samples;
  q.seed = seed;
  const InferResult res = infer(q);
  Table t{fmt::format("Inference on the {} split{}", s.str(),
                      degree ? fmt::format(" at degree {}", *degree) : std::string()),
          {},
          {},
          {}};
  for (const auto& u : res.unknowns) t.columns.push_back("rank " + u.str());
  t.columns.push_back("feasible");
  t.columns.push_back("reason");
  for (const auto& c : res.candidates) {
    std::vector<std::string> row;
    for (auto v : c.ranks) row.push_back(std::to_string(v));
    row.push_back(c.feasible ? "yes" : "no");
    row.push_back(c.reason);
    t.rows.push_back(std::move(row));
  }
  const auto feas = res.feasible();
  if (feas.size() == 1) {
    for (std::size_t k = 0; k < res.unknowns.size(); ++k) {
      const MapProfile p{feas.front().ranks[k], res.shapes[k].dom, res.shapes[k].cod};
      t.notes.push_back(fmt::format("Deduced {} = {}: {}.", res.unknowns[k].str(), p.str(),
                                    describe_rank(p)));
    }
  } else {
    t.notes.push_back(fmt::format("{} feasible assignments; no unique deduction.", feas.size()));
  }
  return {t};
}

std::vector<Table> cmd_verify(int max_genus, bool& failed) {
  require_genus(max_genus, 1, 40, "--max-genus");
  Table t{fmt::format("Verification up to genus {}", max_genus), {"check", "status", "detail"}, {}, {}};
  failed = false;
  for (const auto& c : verify_suite(max_genus)) {
    failed = failed || c.status == Status::fail;
    t.rows.push_back({c.name, status_name(c.status), c.detail});
  }
  t.notes.push_back(failed ? "Some checks failed." : "All checks passed.");
  return {t};
}

}  // namespace

std::vector<CheckResult> verify_suite(int max_genus) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
  };
  auto guarded = [&](const std::string& name, const auto& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };

  for (int g = 1; g <= max_genus; ++g) {
    guarded(fmt::format("genus {} tables", g), [&] {
      const BettiTable m = mod2_table(g);
      const BettiTable q = rational_table(g);
      add(fmt::format("genus {} duality", g),
          first_duality_failure(m) < 0 && first_duality_failure(q) < 0);
      add(fmt::format("genus {} Euler characteristic", g),
          euler_characteristic(m) == 0 && euler_characteristic(q) == 0);
      const BigCount expect = 2 * g * binomial(2 * static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(g));
      const auto [s2, sq] = total_rank_identity(g);
      add(fmt::format("genus {} total rank", g), s2 == sq && s2 == expect,
          fmt::format("{} vs {} vs {}", s2.str(), sq.str(), expect.str()));
      if (g >= 2) {
        const BigCount mid = middle_closed_form(g);
        bool ok = true;
        for (long r = 3L * g - 3; r <= 3L * g; ++r) ok = ok && m.at(r) == mid;
        add(fmt::format("genus {} middle degrees", g), ok, mid.str());
        bool agree = true;
        for (long r = 0; r <= 2L * g - 2; ++r) agree = agree && m.at(r) == q.at(r);
        add(fmt::format("genus {} tables agree below 2g-1, differ by 1 there", g),
            agree && m.at(2L * g - 1) - q.at(2L * g - 1) == 1);
        const TheoremReport rep = verify_theorem(g - 1, m);
        std::string bad;
        for (const auto& v : rep.verdicts)
          if (!v.passed) bad += v.name + " ";
        add(fmt::format("genus {} recursive bounds", g), rep.all_passed(), bad);
      }
    });
  }

  const auto f2 = printed_half_columns(Field::F2);
  const auto fq = printed_half_columns(Field::Q);
  for (int g = 1; g <= std::min(max_genus, 6); ++g) {
    const auto i = static_cast<std::size_t>(g - 1);
    std::vector<BigCount> p2(f2[i].begin(), f2[i].end()), pq(fq[i].begin(), fq[i].end());
    const BettiTable m = mod2_table(g);
    const BettiTable q = rational_table(g);
    add(fmt::format("printed half column Z/2 g={}", g),
        std::equal(p2.begin(), p2.end(), m.values().begin()), join(m.values(), 0, p2.size()));
    add(fmt::format("printed half column Q g={}", g),
        std::equal(pq.begin(), pq.end(), q.values().begin()), join(q.values(), 0, pq.size()));
  }

  for (int g : {1, 2}) {
    guarded(fmt::format("printed genus {} data", g), [&] {
      const auto diags = compare_with_printed(g);
      std::size_t errors = 0;
      for (const auto& d : diags) {
        const bool info = d.severity == Diagnostic::Severity::info;
        errors += !info;
        out.push_back({d.id, info ? Status::info : Status::fail, d.message});
      }
      add(fmt::format("printed genus {} data", g), errors == 0,
          fmt::format("{} diagnostic(s)", diags.size()));
    });
  }

  // both readings of the maximal-rank split, against the known nu data
  for (HalfReading h : {HalfReading::base, HalfReading::framed}) {
    std::string where;
    for (const auto& d : {genus1_data(), genus2_data()}) {
      for (const auto& c : conjecture_conflicts(d, h)) {
        out.push_back({c.id, Status::info, c.message});
        where += (where.empty() ? "" : ", ") + c.id;
      }
    }
    out.push_back({"maximal-rank split, " + to_string(h) + " reading", Status::info,
                   where.empty() ? "consistent with genus 1 and 2" : "conflicts: " + where});
  }

  guarded("alpha action genus 2", [&] {
    add("alpha action genus 2", serre_betti(genus2_ring()) == mod2_table(2));
  });

  for (const Split s : {Split{1, 1}, Split{1, 2}}) {
    guarded("glue " + s.str(), [&] {
      const GenusData da = split_factor_data(s.a);
      const GenusData db = split_factor_data(s.b);
      const FeasibleTable t = feasible_table(da, db);
      std::vector<std::size_t> cok, ker;
      bool exact = true;
      for (const auto& row : t.rows) {
        exact = exact && row.ker.exact() && row.coker.exact();
        cok.push_back(row.coker.lo);
        ker.push_back(row.ker.lo);
      }
      add("witness independence " + s.str(), exact);
      add("glue " + s.str(), glue(s.target_genus(), cok, ker) == mod2_table(s.target_genus()));
      bool closed_ok = true;
      std::string where;
      for (const auto& row : t.rows) {
        if (const auto l = closed_form_1g(row.r, s.b, db.h)) {
          if (l->ker != row.ker.lo || l->coker != row.coker.lo) {
            closed_ok = false;
            where += std::to_string(row.r) + " ";
          }
        }
      }
      add("closed forms vs diagram " + s.str(), closed_ok, where);
    });
  }

  guarded("2+2 table", [&] {
    const GenusData d2 = genus2_data();
    const BettiTable h4 = mod2_table(4);
    const FeasibleTable all = feasible_table(d2, d2);
    const FeasibleTable glued = feasible_table(d2, d2, &h4);
    const auto printed = printed_split22_table();
    bool contains = true;
    bool pinned = true;
    for (const auto& p : printed) {
      const auto i = static_cast<std::size_t>(p.r);
      contains = contains && all.rows[i].coker.contains(p.coker) && all.rows[i].ker.contains(p.ker);
      pinned = pinned && glued.rows[i].coker == Range{p.coker, p.coker} &&
               glued.rows[i].ker == Range{p.ker, p.ker};
    }
    add("2+2 feasible intervals contain the printed rows", contains);
    add("2+2 rows pinned by gluing equal the printed rows", pinned);
  });
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Betti numbers of framed moduli spaces over Z/2"};
  app.name("mod2betti");
  app.require_subcommand(1);

  std::string format = "markdown";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "markdown, csv or json")
        ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
  };

  int genus = 0;
  int max_genus = 0;
  std::string field = "f2";
  bool full = false;
  std::optional<int> serre_genus;
  std::string ring_file;
  std::string split;
  std::optional<long> degree;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool dump = false;
  std::vector<std::string> unknowns;

  auto* betti = app.add_subcommand("betti", "Betti table of one genus");
  betti->add_option("--genus", genus)->required();
  betti->add_option("--field", field, "q or f2");
  add_format(betti);

  std::string tables_field = "both";
  auto* tables = app.add_subcommand("tables", "Side-by-side half columns");
  tables->add_option("--max-genus", max_genus)->required();
  tables->add_option("--field", tables_field, "q, f2 or both");
  tables->add_flag("--full", full, "print every degree");
  add_format(tables);

  auto* nplus = app.add_subcommand("nplus", "Betti numbers of N+ and its relative group");
  nplus->add_option("--genus", genus)->required();
  add_format(nplus);

  auto* profiles = app.add_subcommand("profiles", "Boundary map data for genus 1 or 2");
  profiles->add_option("--genus", genus)->required();
  add_format(profiles);

  auto* serre = app.add_subcommand("serre", "Betti numbers from an alpha action");
  serre->add_option("--genus", serre_genus);
  serre->add_option("--ring-file", ring_file);
  add_format(serre);

  auto* mv = app.add_subcommand("mv", "Mayer-Vietoris map of a split");
  mv->add_option("--split", split, "1+1, 1+2 or 2+2")->required();
  mv->add_option("--degree", degree, "one degree; all degrees when omitted");
  mv->add_option("--seed", seed);
  mv->add_option("--samples", samples);
  mv->add_flag("--dump", dump, "print the diagram as json first");
  add_format(mv);

  auto* inf = app.add_subcommand("infer", "Deduce unknown ranks from the glued table");
  inf->add_option("--split", split, "1+1, 1+2 or 2+2")->required();
  inf->add_option("--unknown", unknowns, "map as nu:G:R, repeatable")->required();
  inf->add_option("--degree", degree);
  inf->add_option("--seed", seed);
  inf->add_option("--samples", samples);
  std::string conjecture;
  inf->add_option("--conjecture", conjecture, "pin unknowns to the maximal-rank prediction")
      ->check(CLI::IsMember({"base", "framed"}));
  add_format(inf);

  auto* verify = app.add_subcommand("verify", "Invariant suite and golden comparisons");
  verify->add_option("--max-genus", max_genus)->required();
  add_format(verify);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::vector<Table> doc;
    int code = 0;
    if (betti->parsed()) {
      doc = cmd_betti(genus, field);
    } else if (tables->parsed()) {
      doc = cmd_tables(max_genus, tables_field, full);
    } else if (nplus->parsed()) {
      doc = cmd_nplus(genus);
    } else if (profiles->parsed()) {
      doc = cmd_profiles(genus);
    } else if (serre->parsed()) {
      doc = cmd_serre(serre_genus, ring_file);
    } else if (mv->parsed()) {
      const Split s = parse_split(split);
      doc = degree ? cmd_mv_degree(s, *degree, seed, samples, dump, out) : cmd_mv_table(s);
    } else if (inf->parsed()) {
      doc = cmd_infer(parse_split(split), unknowns, degree, samples, seed, conjecture);
    } else if (verify->parsed()) {
      bool failed = false;
      doc = cmd_verify(max_genus, failed);
      code = failed ? 2 : 0;
    }
    out << render(doc, parse_format(format));
    return code;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const StructuralError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    err << "inconsistent: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "inconsistent: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mod2betti
