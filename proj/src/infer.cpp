#include <algorithm>
#include <exception>

#include <fmt/format.h>

#include "mod2betti/errors.hpp"
#include "mod2betti/mv.hpp"

namespace mod2betti {

std::vector<Candidate> InferResult::feasible() const {
  std::vector<Candidate> out;
  for (const auto& c : candidates)
    if (c.feasible) out.push_back(c);
  return out;
}

std::pair<std::size_t, std::size_t> nu_rank_window(const GenusData& d, long r) {
  const MapProfile mu = d.mu_at(r);
  const MapProfile rho = d.rho_at(r);
  const std::size_t lo = mu.rank > rho.rank ? mu.rank - rho.rank : 0;
  const std::size_t hi = std::min({mu.rank, d.h.count(r), d.nplus.count(r)});
  return {lo, hi};
}

std::string describe_rank(const MapProfile& p) {
  if (p.dom == 0 || p.cod == 0) return "zero map between trivial spaces";
  if (p.iso()) return "isomorphism";
  if (p.injective()) return "injective";
  if (p.surjective()) return "surjective";
  if (p.rank == 0) return "zero";
  return fmt::format("rank {} (maximal {})", p.rank, std::min(p.dom, p.cod));
}

namespace {

// Returns an empty string when some realization satisfies every checked
// glue relation, else the reason the last one failed.
std::string check_candidate(const GenusData& da, const GenusData& db, const InferQuery& q,
                            const BettiTable& target) {
  RealizationSet sa, sb;
  try {
    sa = admissible_decompositions(da, 4096, q.samples, q.seed);
    sb = admissible_decompositions(db, 4096, q.samples, q.seed + 1);
  } catch (const InfeasibleError& e) {
    return e.what();
  }
  const long top = target.top_degree();
  std::vector<long> degrees;
  if (q.degree) {
    degrees.push_back(*q.degree);
  } else {
    for (long r = 0; r <= top; ++r) degrees.push_back(r);
  }
  std::string reason;
  for (const auto& deca : sa.decompositions) {
    const GenusRealization ra = realize_decomposition(da, deca, 0);
    for (const auto& decb : sb.decompositions) {
      const GenusRealization rb = realize_decomposition(db, decb, 0);
      bool ok = true;
      for (long r : degrees) {
        const std::size_t coker = lambda_ker_coker(r, da, db, ra, rb).coker.lo;
        const std::size_t ker = r > 0 ? lambda_ker_coker(r - 1, da, db, ra, rb).ker.lo : 0;
        if (target.at(r) != coker + ker) {
          reason = fmt::format("degree {}: coker {} + ker {} != h_{} = {}", r, coker, ker, r,
                               target.at(r).str());
          ok = false;
          break;
        }
      }
      if (ok) return {};
    }
  }
  return reason;
}

}  // namespace

InferResult infer(const InferQuery& q) {
  const int a = q.split.a;
  const int b = q.split.b;
  GenusData base_a = split_factor_data(a);
  GenusData base_b = split_factor_data(b);
  InferResult res;
  res.unknowns = q.unknowns;
  if (q.unknowns.empty()) throw ValidationError("infer needs at least one unknown map");
  for (const auto& u : q.unknowns) {
    if (u.kind != MapKind::nu) throw ValidationError("only nu maps can be unknown, got " + u.str());
    if (u.genus != a && u.genus != b) {
      throw ValidationError(fmt::format("{} is not a map of the {} split", u.str(), q.split.str()));
    }
    const GenusData& d = u.genus == a ? base_a : base_b;
    if (u.degree < 0 || u.degree > d.max_degree()) {
      throw ValidationError(u.str() + " is outside degrees 0.." + std::to_string(d.max_degree()));
    }
    res.shapes.push_back({0, d.h.count(u.degree), d.nplus.count(u.degree)});
    res.windows.push_back(nu_rank_window(d, u.degree));
    if (q.conjecture) {
      const auto want = conjectured_nu(d, u.degree, *q.conjecture);
      if (!want) {
        throw InfeasibleError(fmt::format("the maximal-rank prediction ({} reading) for {} is "
                                          "impossible: {} -> {}",
                                          to_string(*q.conjecture), u.str(), res.shapes.back().dom,
                                          res.shapes.back().cod));
      }
      res.windows.back() = {want->rank, want->rank};
    }
  }
  const BettiTable target = mod2_table(q.split.target_genus());
  if (q.degree && (*q.degree < 0 || *q.degree > target.top_degree())) {
    throw ValidationError(fmt::format("degree {} is outside 0..{}", *q.degree, target.top_degree()));
  }

  std::vector<std::vector<std::size_t>> tuples{{}};
  for (const auto& [lo, hi] : res.windows) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : tuples) {
      for (std::size_t v = lo; v <= hi; ++v) {
        next.push_back(t);
        next.back().push_back(v);
      }
    }
    tuples = std::move(next);
  }

  res.candidates.resize(tuples.size());
  std::exception_ptr err;
  const auto n = static_cast<std::ptrdiff_t>(tuples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto ui = static_cast<std::size_t>(i);
      GenusData da = base_a;
      GenusData db = base_b;
      for (std::size_t k = 0; k < q.unknowns.size(); ++k) {
        const MapRef& u = q.unknowns[k];
        const MapProfile p{tuples[ui][k], res.shapes[k].dom, res.shapes[k].cod};
        if (u.genus == a) da.nu[static_cast<std::size_t>(u.degree)] = p;
        if (u.genus == b) db.nu[static_cast<std::size_t>(u.degree)] = p;
      }
      Candidate c;
      c.ranks = tuples[ui];
      c.reason = check_candidate(da, db, q, target);
      c.feasible = c.reason.empty();
      res.candidates[ui] = std::move(c);
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  std::sort(res.candidates.begin(), res.candidates.end());
  if (res.feasible().empty()) {
    std::string msg = "no rank assignment for";
    for (const auto& u : q.unknowns) msg += " " + u.str();
    msg += " is consistent with the genus " + std::to_string(q.split.target_genus()) + " table";
    for (const auto& c : res.candidates) {
      std::string ranks;
      for (auto v : c.ranks) ranks += (ranks.empty() ? "" : ",") + std::to_string(v);
      msg += "; (" + ranks + "): " + c.reason;
    }
    throw InfeasibleError(msg);
  }
  return res;
}

}  // namespace mod2betti
