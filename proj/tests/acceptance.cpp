// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures, so ctest goes red on any of them.

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "mod2betti/cli.hpp"
#include "mod2betti/errors.hpp"
#include "mod2betti/mv.hpp"
#include "mod2betti/printed.hpp"
#include "mod2betti/serre.hpp"

using namespace mod2betti;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

Outcome half_columns() {
  Outcome o;
  for (Field f : {Field::F2, Field::Q}) {
    const auto cols = printed_half_columns(f);
    for (int g = 1; g <= 6; ++g) {
      const BettiTable t = f == Field::F2 ? mod2_table(g) : rational_table(g);
      const auto& col = cols[static_cast<std::size_t>(g - 1)];
      for (std::size_t r = 0; r < col.size(); ++r) {
        o.expect(t.at(static_cast<long>(r)) == col[r],
                 to_string(f) + " g=" + std::to_string(g) + " r=" + std::to_string(r));
      }
    }
  }
  const auto t6 = mod2_table(6);
  const int want[] = {1, 0, 1, 12, 1, 12, 67, 12, 67, 232, 67, 233, 574, 299, 794, 1586, 1586};
  for (long r = 0; r < 17; ++r) o.expect(t6.at(r) == want[r], "Z/2 g=6 example column");
  return o;
}

Outcome total_rank() {
  Outcome o;
  for (int g = 1; g <= 10; ++g) {
    const auto [a, b] = total_rank_identity(g);
    const BigCount c = 2 * g * binomial(2 * static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(g));
    o.expect(a == b && b == c, "g=" + std::to_string(g));
  }
  return o;
}

Outcome middle() {
  Outcome o;
  for (int g = 2; g <= 10; ++g) {
    BigCount closed = 1;
    closed <<= static_cast<unsigned>(2 * g - 1);
    closed -= binomial(2 * static_cast<std::uint64_t>(g) - 1, static_cast<std::uint64_t>(g));
    const auto t = mod2_table(g);
    for (long r = 3L * g - 3; r <= 3L * g; ++r) o.expect(t.at(r) == closed, "g=" + std::to_string(g));
  }
  return o;
}

Outcome serre_engine() {
  Outcome o;
  const std::vector<BigCount> want{1, 0, 1, 5, 5, 5, 5, 1, 0, 1};
  o.expect(serre_betti(genus2_ring()).values() == want, "genus 2 ring");
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    AlphaAction a;
    a.genus = 2 + t % 4;
    const std::size_t n = 6 * static_cast<std::size_t>(a.genus) - 5;
    a.dims.assign(n, 0);
    for (std::size_t r = 0; r <= (n - 1) / 2; ++r)
      a.dims[r] = a.dims[n - 1 - r] = std::uniform_int_distribution<std::size_t>(0, 9)(rng);
    a.dims[0] = a.dims[n - 1] = 1;
    a.dims[1] = a.dims[n - 2] = 0;
    a.alpha_ranks.assign(n - 2, 0);
    const auto h = serre_betti(a);
    for (long r = 0; r <= h.top_degree(); ++r) {
      o.expect(h.at(r) == a.dim(r) + a.dim(r - 1) + a.dim(r - 2) + a.dim(r - 3), "product case");
    }
  }
  return o;
}

Outcome boundary_maps() {
  Outcome o;
  const auto n2 = nplus_betti(2, mod2_table(2));
  const int col[] = {1, 0, 1, 4, 1, 5, 11, 5, 1, 1, 0, 0};
  for (long r = 0; r < 12; ++r) o.expect(n2.at(r) == col[r], "nplus genus 2 r=" + std::to_string(r));
  for (int g : {1, 2}) {
    const auto d = g == 1 ? genus1_data() : genus2_data();
    for (const auto& row : printed_table(g)) {
      o.expect(d.mu_at(row.r) == row.mu, "mu g=" + std::to_string(g) + " r=" + std::to_string(row.r));
      o.expect(d.rho_at(row.r) == row.rho, "rho g=" + std::to_string(g) + " r=" + std::to_string(row.r));
    }
  }
  // the misprint must surface as a named diagnostic
  bool named = false;
  for (const auto& c : verify_suite(2))
    named = named || (c.name == "printed-genus1-nplus-r5" && c.status == CheckResult::Status::info);
  o.expect(named, "verify does not report the genus 1 r=5 diagnostic");
  return o;
}

Outcome mv_11() {
  Outcome o;
  const auto d1 = genus1_data();
  const auto r1 = realize_genus(d1);
  const std::pair<std::size_t, std::size_t> want[] = {{1, 0}, {0, 0}, {1, 1}, {4, 0}};
  std::vector<std::size_t> cok, ker;
  for (long r = 0; r <= 9; ++r) {
    const auto kc = lambda_ker_coker(r, d1, d1, r1, r1);
    if (r < 4) o.expect(kc.coker.lo == want[r].first && kc.ker.lo == want[r].second, "r=" + std::to_string(r));
    if (r == 4) o.expect(kc.coker.lo == 5, "r=4");
    cok.push_back(kc.coker.lo);
    ker.push_back(kc.ker.lo);
    const auto s = sample_lambda(r, d1, d1, 100, 20);
    o.expect(s.ker.exact() && s.coker.exact(), "seed variance at r=" + std::to_string(r));
  }
  o.expect(glue(2, cok, ker) == mod2_table(2), "glue");
  return o;
}

Outcome closed_forms() {
  Outcome o;
  const auto d1 = genus1_data();
  const auto r1 = realize_genus(d1);
  std::vector<GenusData> cases{genus2_data()};
  // genus 3: nu is not known, so try the extreme completions
  for (int mode : {0, 1}) {
    GenusData d = genus_data(3, mod2_table(3));
    for (long r = 0; r <= d.max_degree(); ++r) {
      if (d.nu_at(r)) continue;
      const auto [lo, hi] = nu_rank_window(d, r);
      d.nu[static_cast<std::size_t>(r)] = MapProfile{mode ? lo : hi, d.h.count(r), d.nplus.count(r)};
    }
    cases.push_back(d);
  }
  std::size_t compared = 0;
  std::set<int> genera;
  for (const auto& dg : cases) {
    GenusRealization rg;
    try {
      rg = realize_genus(dg);
    } catch (const InfeasibleError&) {
      continue;
    }
    genera.insert(dg.genus);
    for (long r = 0; r <= 6L * (dg.genus + 1) - 3; ++r) {
      const auto l = closed_form_1g(r, dg.genus, dg.h);
      if (!l) continue;
      const auto kc = lambda_ker_coker(r, d1, dg, r1, rg);
      o.expect(kc.ker.lo == l->ker && kc.coker.lo == l->coker,
               "g=" + std::to_string(dg.genus) + " r=" + std::to_string(r));
      ++compared;
    }
  }
  o.expect(genera == std::set<int>{2, 3}, "some genus had no realizable completion");
  o.note = o.ok ? std::to_string(compared) + " degree/genus cases" : o.note;
  return o;
}

Outcome split22() {
  Outcome o;
  const auto d2 = genus2_data();
  const auto h4 = mod2_table(4);
  const auto all = feasible_table(d2, d2);
  const auto printed = printed_split22_table();
  std::vector<std::size_t> cok, ker;
  std::string open;
  for (const auto& p : printed) {
    const auto& row = all.rows[static_cast<std::size_t>(p.r)];
    o.expect(row.coker.contains(p.coker) && row.ker.contains(p.ker), "r=" + std::to_string(p.r));
    cok.push_back(p.coker);
    ker.push_back(p.ker);
    if (!(row.coker.exact() && row.ker.exact())) open += (open.empty() ? "" : ",") + std::to_string(p.r);
  }
  const auto glued = glue(4, cok, ker);
  o.expect(glued == h4 && glued.at(10) == 93, "glue of printed rows");
  o.expect(printed[9].coker == 68 && printed[8].ker == 25, "r=9 row");
  const auto narrowed = feasible_table(d2, d2, &h4);
  for (const auto& p : printed) {
    const auto& row = narrowed.rows[static_cast<std::size_t>(p.r)];
    o.expect(row.coker == Range{p.coker, p.coker} && row.ker == Range{p.ker, p.ker},
             "glued row r=" + std::to_string(p.r));
  }
  if (o.ok) o.note = "open before gluing: r = " + open + "; every row unique after gluing";
  return o;
}

Outcome inference() {
  Outcome o;
  struct Case {
    Split s;
    MapRef u;
    long degree;
    std::string want;
  };
  const Case cases[] = {{{1, 1}, {1, MapKind::nu, 2}, 3, "isomorphism"},
                        {{1, 1}, {1, MapKind::nu, 3}, 4, "injective"},
                        {{1, 2}, {2, MapKind::nu, 2}, 3, "isomorphism"},
                        {{1, 2}, {2, MapKind::nu, 9}, 11, "isomorphism"}};
  for (const auto& c : cases) {
    InferQuery q;
    q.split = c.s;
    q.unknowns = {c.u};
    q.degree = c.degree;
    const auto res = infer(q);
    const bool ok = res.unique() &&
                    describe_rank({res.feasible().front().ranks.front(), res.shapes[0].dom,
                                   res.shapes[0].cod}) == c.want;
    o.expect(ok, c.u.str());
  }
  return o;
}

Outcome properties() {
  Outcome o;
  for (int g = 2; g <= 10; ++g) {
    const auto m = mod2_table(g);
    const auto q = rational_table(g);
    for (const auto& t : {m, q}) {
      o.expect(first_duality_failure(t) == -1, "duality g=" + std::to_string(g));
      o.expect(euler_characteristic(t) == 0, "euler g=" + std::to_string(g));
    }
    for (long r = 0; r <= 2L * g - 2; ++r) o.expect(m.at(r) == q.at(r), "agreement g=" + std::to_string(g));
    o.expect(m.at(2L * g - 1) == q.at(2L * g - 1) + 1, "differ by one g=" + std::to_string(g));
    for (long r = 0; r <= 6L * g; ++r) o.expect(m_coeff(g, r) == m_coeff(g, 6L * g - r), "m symmetry");
  }
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto a = BitMatrix::random(1 + t % 17, 1 + (t * 7) % 23, rng);
    o.expect(rank(a) + kernel_dim(a) == a.cols(), "rank-nullity");
  }
  for (int t = 0; t < 100; ++t) {
    Diagram d;
    const std::size_t nd = 1 + t % 5, nc = 1 + (t * 3) % 5;
    for (std::size_t i = 0; i < nd; ++i) d.domain.push_back({"d", 1 + (i + t) % 4});
    for (std::size_t j = 0; j < nc; ++j) d.codomain.push_back({"c", 1 + (j * 2 + t) % 4});
    for (std::size_t i = 0; i < nd; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        if (rng() % 3 == 0) continue;
        const std::size_t rows = d.codomain[j].dim, cols = d.domain[i].dim;
        const std::size_t r = std::min(rows, cols) - rng() % 2;  // dims are >= 1
        d.edges.push_back({i, j, synth_with_rank(rows, cols, r, rng() | 1U), Side::red});
      }
    }
    const auto before = ker_coker(realize(d, Factors{}));
    const auto after = ker_coker(realize(eliminate(d), Factors{}));
    o.expect(before.ker == after.ker && before.coker == after.coker, "elimination");
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"half-column tables", half_columns},
      {"total-rank identity", total_rank},
      {"middle closed form", middle},
      {"Serre engine", serre_engine},
      {"N+ and boundary-map formulas", boundary_maps},
      {"1+1 Mayer-Vietoris suite", mv_11},
      {"closed-form cross-check", closed_forms},
      {"2+2 table", split22},
      {"inference deductions", inference},
      {"property suite", properties},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << k << " " << name;
    if (!o.note.empty()) std::cout << " (" << o.note << ")";
    std::cout << "\n";
  }
  return failed;
}
