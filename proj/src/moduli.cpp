#include "mod2betti/moduli.hpp"

#include <algorithm>

#include "mod2betti/errors.hpp"

namespace mod2betti {

namespace {

std::size_t to_count(const BigCount& v, const char* what, long r) {
  if (v < 0) {
    throw ConsistencyError(std::string(what) + " is negative at degree " + std::to_string(r));
  }
  return v.convert_to<std::size_t>();
}

}  // namespace

std::string MapProfile::str() const {
  return std::to_string(rank) + "_" + std::to_string(dom) + "^" + std::to_string(cod);
}

MapProfile make_profile(std::size_t rank, std::size_t dom, std::size_t cod) {
  if (rank > std::min(dom, cod)) {
    throw ValidationError("profile " + std::to_string(rank) + "_" + std::to_string(dom) + "^" +
                          std::to_string(cod) + " has rank above min(dom, cod)");
  }
  return {rank, dom, cod};
}

std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::nu:
      return "nu";
    case MapKind::rho:
      return "rho";
    case MapKind::mu:
      return "mu";
  }
  return "?";
}

std::string MapRef::str() const {
  std::string s = to_string(kind) + "^" + std::to_string(genus) + "_" + std::to_string(degree);
  return inverted ? "(" + s + ")^-1" : s;
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kernel_intersection_dim:
      return "kernel_intersection_dim";
    case ConstraintKind::image_containment:
      return "image_containment";
    case ConstraintKind::composite_kernel_dim:
      return "composite_kernel_dim";
  }
  return "?";
}

std::string SideConstraint::str() const {
  std::string ops;
  for (const auto& o : operands) ops += (ops.empty() ? "" : ", ") + o.str();
  return to_string(kind) + "(" + ops + ") = " + std::to_string(value);
}

MapProfile GenusData::mu_at(long r) const {
  if (r < 0 || r >= static_cast<long>(mu.size())) return {0, h.count(r) + h.count(r - 2), 0};
  return mu[static_cast<std::size_t>(r)];
}

MapProfile GenusData::rho_at(long r) const {
  if (r < 0 || r >= static_cast<long>(rho.size())) return {0, h.count(r - 2), 0};
  return rho[static_cast<std::size_t>(r)];
}

std::optional<MapProfile> GenusData::nu_at(long r) const {
  if (r < 0 || r >= static_cast<long>(nu.size())) return MapProfile{0, h.count(r), 0};
  return nu[static_cast<std::size_t>(r)];
}

bool GenusData::nu_known() const {
  return std::all_of(nu.begin(), nu.end(), [](const auto& p) { return p.has_value(); });
}

BettiTable nplus_betti(int g, const BettiTable& h) {
  const long lg = g;
  std::vector<BigCount> out(table_length(g, Space::plus), 0);
  for (long r = 0; r <= 6 * lg; ++r) {
    const BigCount low = h.at(r - 2) + m_coeff(g, r);
    const BigCount high = h.at(r - 2) - m_coeff(g, r + 1);
    if (r == 3 * lg + 1 && low != high) {
      throw ConsistencyError("N+ Betti branches disagree at degree " + std::to_string(r) + ": " +
                             low.str() + " vs " + high.str());
    }
    const BigCount v = r <= 3 * lg + 1 ? low : high;
    if (v < 0) {
      throw ConsistencyError("N+ Betti number negative at degree " + std::to_string(r));
    }
    out[static_cast<std::size_t>(r)] = v;
  }
  return {g, h.field(), Space::plus, std::move(out)};
}

BettiTable nhat_betti(int g, const BettiTable& h) {
  const long lg = g;
  std::vector<BigCount> out(table_length(g, Space::relative), 0);
  for (long r = 0; r <= 6 * lg; ++r) {
    const BigCount low = h.at(r - 1) - m_coeff(g, r - 1);
    const BigCount high = h.at(r - 1) + m_coeff(g, r);
    if (r == 3 * lg - 1 && low != high) {
      throw ConsistencyError("relative Betti branches disagree at degree " + std::to_string(r));
    }
    const BigCount v = r <= 3 * lg - 1 ? low : high;
    if (v < 0) {
      throw ConsistencyError("relative Betti number negative at degree " + std::to_string(r));
    }
    out[static_cast<std::size_t>(r)] = v;
  }
  return {g, h.field(), Space::relative, std::move(out)};
}

std::size_t mu_kernel_dim(int g, long r, const BettiTable& h) {
  const BigCount v = r < 3L * g ? h.at(r) - m_coeff(g, r) : h.at(r) + m_coeff(g, r + 1);
  return to_count(v, "ker mu", r);
}

MapProfile mu_profile(int g, long r, const BettiTable& h) {
  const std::size_t dom = h.count(r) + h.count(r - 2);
  const std::size_t cod = to_count(nplus_betti(g, h).at(r), "N+ Betti", r);
  const std::size_t ker = mu_kernel_dim(g, r, h);
  if (ker > dom) throw ConsistencyError("ker mu exceeds its domain at degree " + std::to_string(r));
  return make_profile(dom - ker, dom, cod);
}

MapProfile rho_profile(int g, long r, const BettiTable& h) {
  const std::size_t dom = h.count(r - 2);
  const std::size_t cod = to_count(nplus_betti(g, h).at(r), "N+ Betti", r);
  // Injective up to degree 3g+1, surjective from there on.
  return make_profile(r <= 3L * g + 1 ? dom : cod, dom, cod);
}

GenusData genus_data(int g, const BettiTable& h) {
  if (h.genus() != g || h.space() != Space::framed) {
    throw ValidationError("genus_data needs the framed table of genus " + std::to_string(g));
  }
  GenusData d;
  d.genus = g;
  d.h = h;
  d.nplus = nplus_betti(g, h);
  for (long r = 0; r <= 6L * g; ++r) {
    d.mu.push_back(mu_profile(g, r, h));
    d.rho.push_back(rho_profile(g, r, h));
    const std::size_t dom = h.count(r);
    const std::size_t cod = d.nplus.count(r);
    if (dom == 0 || cod == 0) {
      d.nu.emplace_back(MapProfile{0, dom, cod});
    } else if (d.rho.back().dom == 0) {
      d.nu.emplace_back(MapProfile{d.mu.back().rank, dom, cod});
    } else {
      d.nu.emplace_back(std::nullopt);
    }
  }
  return d;
}

namespace {

void fill_nu(GenusData& d, long r, MapProfile p) {
  auto& slot = d.nu.at(static_cast<std::size_t>(r));
  if (p.dom != d.h.count(r) || p.cod != d.nplus.count(r)) {
    throw ConsistencyError("nu profile " + p.str() + " at degree " + std::to_string(r) +
                           " does not match the Betti numbers");
  }
  if (slot && !(*slot == p)) {
    throw ConsistencyError("nu profile " + p.str() + " at degree " + std::to_string(r) +
                           " contradicts the derived value " + slot->str());
  }
  slot = p;
}

}  // namespace

GenusData genus1_data() {
  GenusData d = genus_data(1, mod2_table(1));
  fill_nu(d, 2, {1, 1, 1});
  fill_nu(d, 3, {1, 1, 3});
  d.constraints.push_back({ConstraintKind::image_containment,
                           {{1, MapKind::nu, 3}, {1, MapKind::rho, 3}},
                           1,
                           "rank of mu^1_3 is 1"});
  validate(d);
  return d;
}

GenusData genus2_data() {
  GenusData d = genus_data(2, mod2_table(2));
  fill_nu(d, 2, {1, 1, 1});
  fill_nu(d, 4, {1, 5, 1});
  fill_nu(d, 5, {5, 5, 5});
  fill_nu(d, 6, {5, 5, 11});
  fill_nu(d, 7, {1, 1, 5});
  fill_nu(d, 9, {1, 1, 1});
  d.constraints.push_back({ConstraintKind::kernel_intersection_dim,
                           {{2, MapKind::nu, 3}, {2, MapKind::mu, 5}},
                           1,
                           "2+1 split, degree 6 deduction"});
  d.constraints.push_back({ConstraintKind::kernel_intersection_dim,
                           {{2, MapKind::nu, 6}, {1, MapKind::rho, 8}},
                           0,
                           "2+1 split, degree 8 deduction"});
  d.constraints.push_back({ConstraintKind::composite_kernel_dim,
                           {{2, MapKind::nu, 3}, {2, MapKind::rho, 5, true}, {2, MapKind::nu, 5}},
                           1,
                           "refinement of the degree 6 deduction"});
  validate(d);
  return d;
}

void validate(const GenusData& d) {
  const int g = d.genus;
  auto fail = [&](const std::string& what, long r) {
    throw ValidationError("genus " + std::to_string(g) + " data: " + what + " at degree " +
                          std::to_string(r));
  };
  const BettiTable nhat = nhat_betti(g, d.h);
  for (long r = 0; r <= d.max_degree(); ++r) {
    const MapProfile mu = d.mu_at(r);
    const MapProfile rho = d.rho_at(r);
    const std::size_t hr = d.h.count(r);
    const std::size_t hr2 = d.h.count(r - 2);
    const std::size_t nr = d.nplus.count(r);
    if (mu.dom != hr + hr2 || mu.cod != nr) fail("mu dimensions", r);
    if (rho.dom != hr2 || rho.cod != nr) fail("rho dimensions", r);
    if (mu.rank > std::min(mu.dom, mu.cod) || rho.rank > std::min(rho.dom, rho.cod)) {
      fail("rank bound", r);
    }
    if (mu.rank < rho.rank) fail("rank mu < rank rho", r);
    if (const auto nu = d.nu_at(r)) {
      if (nu->dom != hr || nu->cod != nr) fail("nu dimensions", r);
      if (nu->rank > std::min(nu->dom, nu->cod)) fail("nu rank bound", r);
      if (mu.rank < nu->rank || mu.rank > nu->rank + rho.rank) {
        fail("rank mu outside [max(nu, rho), nu + rho]", r);
      }
    }
    // Long exact sequence of the pair (N+, boundary).
    const std::size_t prev_ker = r == 0 ? 0 : d.mu_at(r - 1).kernel();
    if (mu.cokernel() + prev_ker != nhat.count(r)) fail("coker mu + ker mu_{r-1} != relative", r);
  }
  for (const auto& c : d.constraints) {
    for (const auto& op : c.operands) {
      if (op.genus < 1 || op.degree < 0) {
        throw ValidationError("constraint operand " + op.str() + " has no such degree");
      }
      if (op.genus == g && op.degree > d.max_degree()) {
        throw ValidationError("constraint operand " + op.str() + " has no such degree");
      }
    }
  }
}

std::vector<PrintedRow> printed_table(int g) {
  if (g == 1) {
    return {
        {0, 1, 1, {1, 1, 1}, {0, 0, 1}, {1, 1, 1}},
        {1, 1, 0, {0, 1, 0}, {0, 0, 0}, {0, 1, 0}},
        {2, 1, 1, {1, 2, 1}, {1, 1, 1}, {1, 1, 1}},
        {3, 1, 3, {1, 2, 3}, {1, 1, 3}, {1, 1, 3}},
        {4, 0, 1, {1, 1, 1}, {1, 1, 1}, {0, 0, 1}},
        {5, 0, 1, {0, 1, 0}, {0, 1, 0}, {0, 0, 0}},
    };
  }
  if (g == 2) {
    return {
        {0, 1, 1, {1, 1, 1}, {0, 0, 1}, {1, 1, 1}},
        {1, 0, 0, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
        {2, 1, 1, {1, 2, 1}, {1, 1, 1}, {1, 1, 1}},
        {3, 5, 4, {4, 5, 4}, {0, 0, 4}, {4, 5, 4}},
        {4, 5, 1, {1, 6, 1}, {1, 1, 1}, {1, 5, 1}},
        {5, 5, 5, {5, 10, 5}, {5, 5, 5}, {5, 5, 5}},
        {6, 5, 11, {5, 10, 11}, {5, 5, 11}, {5, 5, 11}},
        {7, 1, 5, {5, 6, 5}, {5, 5, 5}, {1, 1, 5}},
        {8, 0, 1, {1, 5, 1}, {1, 5, 1}, {0, 0, 1}},
        {9, 1, 1, {1, 2, 1}, {1, 1, 1}, {1, 1, 1}},
        {10, 0, 0, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
        {11, 0, 0, {0, 1, 0}, {0, 1, 0}, {0, 0, 0}},
    };
  }
  throw ValidationError("printed data tables exist only for genus 1 and 2");
}

namespace {

// Printed entries that disagree with the formulas for a reason already
// understood: the genus-1 N+ column at degree 5 prints 1 while the formula
// and the printed mu/rho codomains in the same row give 0.
bool known_discrepancy(int g, long r, const std::string& column) {
  return g == 1 && r == 5 && column == "nplus";
}

}  // namespace

std::vector<Diagnostic> compare_with_printed(int g) {
  const GenusData d = g == 1 ? genus1_data() : genus2_data();
  std::vector<Diagnostic> out;
  auto check = [&](long r, const std::string& column, const std::string& printed,
                   const std::string& derived) {
    if (printed == derived) return;
    const bool known = known_discrepancy(g, r, column);
    out.push_back({"printed-genus" + std::to_string(g) + "-" + column + "-r" + std::to_string(r),
                   known ? Diagnostic::Severity::info : Diagnostic::Severity::error,
                   "printed " + column + " at degree " + std::to_string(r) + " is " + printed +
                       ", formulas give " + derived +
                       (known ? " (known misprint; formulas used)" : "")});
  };
  for (const auto& row : printed_table(g)) {
    check(row.r, "h", std::to_string(row.h), d.h.at(row.r).str());
    check(row.r, "nplus", std::to_string(row.nplus), d.nplus.at(row.r).str());
    check(row.r, "mu", row.mu.str(), d.mu_at(row.r).str());
    check(row.r, "rho", row.rho.str(), d.rho_at(row.r).str());
    const auto nu = d.nu_at(row.r);
    check(row.r, "nu", row.nu.str(), nu ? nu->str() : "unknown");
  }
  return out;
}

std::string to_string(HalfReading h) { return h == HalfReading::base ? "base" : "framed"; }

HalfReading parse_half_reading(const std::string& s) {
  if (s == "base") return HalfReading::base;
  if (s == "framed") return HalfReading::framed;
  throw ParseError("unknown reading \"" + s + "\" (expected base or framed)");
}

long surjective_until(int g, HalfReading h) {
  return h == HalfReading::base ? 3L * g - 3 : 3L * g - 2;
}

std::optional<MapProfile> conjectured_nu(const GenusData& d, long r, HalfReading h) {
  const std::size_t dom = d.h.count(r);
  const std::size_t cod = d.nplus.count(r);
  const bool surjective = r <= surjective_until(d.genus, h);
  if (surjective ? dom < cod : dom > cod) return std::nullopt;
  return MapProfile{surjective ? cod : dom, dom, cod};
}

std::vector<Diagnostic> conjecture_conflicts(const GenusData& d, HalfReading h) {
  std::vector<Diagnostic> out;
  const std::string tag = "conjecture-" + to_string(h) + "-genus" + std::to_string(d.genus);
  for (long r = 0; r <= 6L * d.genus - 3; ++r) {
    const auto want = conjectured_nu(d, r, h);
    const bool surjective = r <= surjective_until(d.genus, h);
    if (!want) {
      out.push_back({tag + "-r" + std::to_string(r), Diagnostic::Severity::info,
                     "nu_" + std::to_string(r) + " cannot be " +
                         (surjective ? "surjective" : "injective") + ": " +
                         std::to_string(d.h.count(r)) + " -> " + std::to_string(d.nplus.count(r))});
    } else if (const auto known = d.nu_at(r); known && *known != *want) {
      out.push_back({tag + "-r" + std::to_string(r), Diagnostic::Severity::info,
                     "predicted " + want->str() + ", known " + known->str()});
    }
  }
  return out;
}

}  // namespace mod2betti
