#include <algorithm>
#include <exception>

#include <fmt/format.h>

#include "mod2betti/errors.hpp"
#include "mod2betti/mv.hpp"

namespace mod2betti {

namespace {

std::size_t nonneg(const BigCount& v, const std::string& what) {
  if (v < 0) throw ConsistencyError(what + " is negative");
  return v.convert_to<std::size_t>();
}

}  // namespace

std::optional<ClosedForm> closed_form_1g(long r, int g, const BettiTable& h) {
  const long lg = g;
  const long res = r % 3;
  const auto m = [g](long k) { return m_coeff(g, k); };
  const std::string where = fmt::format("closed_form_1g(r={}, g={})", r, g);
  if (r < 0) return std::nullopt;
  if (r < 3 * lg + 1 && (res == 1 || res == 2)) {
    return ClosedForm{nonneg(h.at(r - 1) - m(r - 1), where),
                       nonneg(2 * h.at(r - 3) + h.at(r - 4) + m(r - 2), where), 1, 4};
  }
  if (r == 3 * lg + 1) {
    return ClosedForm{nonneg(h.at(3 * lg), where),
                       nonneg(2 * h.at(3 * lg - 2) + h.at(3 * lg - 3) + m(3 * lg), where), 2, 5};
  }
  if (r >= 3 * lg + 4 && (res == 0 || res == 1)) {
    return ClosedForm{nonneg(h.at(r - 1) + m(r), where),
                       nonneg(2 * h.at(r - 3) + h.at(r - 4) - m(r - 1), where), 3, 6};
  }
  return std::nullopt;
}

std::size_t kernel_formula_with_intersection(long r, const GenusData& d,
                                             std::optional<std::size_t> meet, bool assume_zero) {
  const long g = d.genus;
  if (r < 3 * g + 4 || r % 3 != 2) {
    throw ValidationError(fmt::format(
        "kernel formula with intersection needs r >= 3g+4 and r = 2 mod 3, got r={}, g={}", r, g));
  }
  if (!meet && !assume_zero) {
    throw ValidationError(fmt::format(
        "needs-constraint: |ker rho_{} meet ker nu_{}| for genus {} is not supplied", r, r - 2, g));
  }
  return d.rho_at(r - 3).kernel() + d.mu_at(r - 1).kernel() + meet.value_or(0);
}

std::size_t surjectivity_mode_kernel(long r, int g, const BettiTable& h) {
  return nonneg(h.at(r - 1) - m_coeff(g, r - 1) - m_coeff(g, r - 3),
                fmt::format("surjectivity-mode kernel at r={}", r));
}

BettiTable glue(int target_genus, const std::vector<std::size_t>& cokers,
                const std::vector<std::size_t>& kers) {
  if (target_genus < 1) throw ValidationError("glue: target genus must be >= 1");
  const long top = 6L * target_genus - 3;
  const auto at = [](const std::vector<std::size_t>& v, long r) -> std::size_t {
    return r >= 0 && r < static_cast<long>(v.size()) ? v[static_cast<std::size_t>(r)] : 0;
  };
  for (long r = top + 1; r < static_cast<long>(cokers.size()); ++r) {
    if (at(cokers, r) != 0) throw ValidationError(fmt::format("glue: coker nonzero at degree {} beyond the top", r));
  }
  for (long r = top; r < static_cast<long>(kers.size()); ++r) {
    if (at(kers, r) != 0) throw ValidationError(fmt::format("glue: ker nonzero at degree {} beyond the top", r));
  }
  std::vector<BigCount> h;
  for (long r = 0; r <= top; ++r) h.emplace_back(at(cokers, r) + at(kers, r - 1));
  if (h.front() != 1 || h.back() != 1) {
    throw ValidationError(fmt::format(
        "glue: duality fails at degree 0: h_0 = {} and h_{} = {}, a closed connected manifold needs 1",
        h.front().str(), top, h.back().str()));
  }
  BettiTable t(target_genus, Field::F2, Space::framed, std::move(h));
  if (const long bad = first_duality_failure(t); bad >= 0) {
    throw ValidationError(fmt::format("glue: duality fails at degree {}: h_{} = {}, h_{} = {}", bad,
                                      bad, t.at(bad).str(), top - bad, t.at(top - bad).str()));
  }
  if (const BigCount chi = euler_characteristic(t); chi != 0) {
    throw ValidationError("glue: Euler characteristic is " + chi.str() + ", expected 0");
  }
  return t;
}

GenusData split_factor_data(int genus) {
  if (genus == 1) return genus1_data();
  if (genus == 2) return genus2_data();
  throw ValidationError(fmt::format("no boundary-map data for factor genus {}", genus));
}

KerCoker lambda_ker_coker(long r, const GenusData& da, const GenusData& db,
                          const GenusRealization& ra, const GenusRealization& rb) {
  return ker_coker(realize(build_split(r, da, db), Factors{&ra, &rb}));
}

namespace {

Range widen(Range acc, std::size_t v, bool first) {
  if (first) return {v, v};
  return {std::min(acc.lo, v), std::max(acc.hi, v)};
}

std::uint64_t factor_seed(std::uint64_t seed, int which) {
  return seed == 0 ? 0 : seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(which) + 1;
}

}  // namespace

KerCoker sample_lambda(long r, const GenusData& da, const GenusData& db, std::uint64_t seed,
                       std::size_t samples) {
  samples = std::max<std::size_t>(samples, 1);
  std::vector<KerCoker> got(samples);
  std::exception_ptr err;
  const auto n = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      const GenusRealization ra = realize_genus(da, factor_seed(s, 0));
      const GenusRealization rb = realize_genus(db, factor_seed(s, 1));
      got[static_cast<std::size_t>(i)] = lambda_ker_coker(r, da, db, ra, rb);
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  KerCoker out;
  for (std::size_t i = 0; i < samples; ++i) {
    out.ker = widen(out.ker, got[i].ker.lo, i == 0);
    out.coker = widen(out.coker, got[i].coker.lo, i == 0);
  }
  return out;
}

FeasibleTable feasible_table(const GenusData& da, const GenusData& db,
                             const BettiTable* glue_target) {
  const RealizationSet sa = admissible_decompositions(da);
  const RealizationSet sb = admissible_decompositions(db);
  std::vector<GenusRealization> ra, rb;
  for (const auto& dec : sa.decompositions) ra.push_back(realize_decomposition(da, dec, 0));
  for (const auto& dec : sb.decompositions) rb.push_back(realize_decomposition(db, dec, 0));

  const long top = 6L * (da.genus + db.genus) - 3;
  const std::size_t pairs = ra.size() * rb.size();
  std::vector<std::vector<KerCoker>> got(pairs);
  std::exception_ptr err;
  const auto n = static_cast<std::ptrdiff_t>(pairs);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    try {
      const auto up = static_cast<std::size_t>(p);
      const GenusRealization& x = ra[up / rb.size()];
      const GenusRealization& y = rb[up % rb.size()];
      for (long r = 0; r <= top; ++r) got[up].push_back(lambda_ker_coker(r, da, db, x, y));
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  const auto glues = [&](const std::vector<KerCoker>& t) {
    for (long r = 0; r <= top; ++r) {
      const std::size_t ker = r > 0 ? t[static_cast<std::size_t>(r - 1)].ker.lo : 0;
      if (glue_target->at(r) != t[static_cast<std::size_t>(r)].coker.lo + ker) return false;
    }
    return true;
  };
  FeasibleTable out;
  out.pairs = pairs;
  out.exhaustive = sa.exhaustive && sb.exhaustive;
  for (long r = 0; r <= top; ++r) out.rows.push_back({r, {}, {}});
  for (std::size_t p = 0; p < pairs; ++p) {
    if (glue_target && !glues(got[p])) continue;
    for (long r = 0; r <= top; ++r) {
      const KerCoker& kc = got[p][static_cast<std::size_t>(r)];
      FeasibleRow& row = out.rows[static_cast<std::size_t>(r)];
      row.ker = widen(row.ker, kc.ker.lo, out.kept == 0);
      row.coker = widen(row.coker, kc.coker.lo, out.kept == 0);
    }
    ++out.kept;
  }
  if (out.kept == 0) {
    throw InfeasibleError("no realization pair of the factor data glues to the target table");
  }
  return out;
}

}  // namespace mod2betti
