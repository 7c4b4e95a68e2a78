#pragma once

// Mayer-Vietoris bookkeeping for the a+b decompositions of the framed
// moduli space of genus a+b:
//
//   lambda_r^{a,b} : H_r(S^2 x N_a# x N_b#) -> H_r(N_a+ x N_b#) + H_r(N_a# x N_b+)
//
// expanded into Kunneth summands. Over GF(2) the difference map is a plain
// block sum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mod2betti/betti.hpp"
#include "mod2betti/f2la.hpp"
#include "mod2betti/moduli.hpp"
#include "mod2betti/zigzag.hpp"

namespace mod2betti {

struct Summand {
  std::string label;
  std::size_t dim = 0;
};

/// A map of one factor of the split (0 = genus a, 1 = genus b).
struct FactorMap {
  int factor = 0;
  MapKind kind = MapKind::nu;
  long degree = 0;
};

/// kron(map, I) when map_on_left, else kron(I, map).
struct TensorPayload {
  FactorMap map;
  bool map_on_left = true;
  std::size_t identity_dim = 0;
};

/// Explicit block, a free-standing profile (realized by rank synthesis),
/// a factor map, or a factor map tensored with an identity.
using Payload = std::variant<BitMatrix, MapProfile, FactorMap, TensorPayload>;

/// red edges land in H(N_a+ x N_b#), blue ones in H(N_a# x N_b+).
enum class Side { red, blue, other };
std::string to_string(Side s);

struct Edge {
  std::size_t from = 0;  // domain summand index
  std::size_t to = 0;    // codomain summand index
  Payload payload;
  Side side = Side::other;
};

struct Diagram {
  std::string name;
  std::vector<Summand> domain;
  std::vector<Summand> codomain;
  std::vector<Edge> edges;

  [[nodiscard]] std::size_t domain_dim() const;
  [[nodiscard]] std::size_t codomain_dim() const;
};

/// Throws StructuralError if an edge is out of range, touches a zero
/// summand, or (for sized payloads) has the wrong shape.
void check(const Diagram& d);

struct Split {
  int a = 1;
  int b = 1;
  [[nodiscard]] int target_genus() const noexcept { return a + b; }
  [[nodiscard]] std::string str() const;
};

/// Parses "1+1", "1+2", "2+2". Only factor genera 1 and 2 carry data.
Split parse_split(const std::string& s);

Diagram build_split(long r, const GenusData& da, const GenusData& db);
Diagram build_1g(long r, const GenusData& d1, const GenusData& dg);
Diagram build_2g(long r, const GenusData& d2, const GenusData& dg);

/// Explicit matrices for the two factors.
struct Factors {
  const GenusRealization* a = nullptr;
  const GenusRealization* b = nullptr;
};

/// Block matrix of the diagram. Factor payloads need `f`; free-standing
/// profiles are synthesized from `seed`.
BitMatrix realize(const Diagram& d, const Factors& f, std::uint64_t seed = 0);
/// Realizes both factor data sets first (same seed for both).
BitMatrix realize(const Diagram& d, const GenusData& da, const GenusData& db,
                  std::uint64_t seed = 0);

/// Same diagram with every factor payload replaced by its explicit block.
Diagram materialize(const Diagram& d, const Factors& f);

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
  [[nodiscard]] bool exact() const noexcept { return lo == hi; }
  [[nodiscard]] bool contains(std::size_t v) const noexcept { return lo <= v && v <= hi; }
  [[nodiscard]] std::string str() const;
  friend bool operator==(const Range&, const Range&) = default;
};

struct KerCoker {
  Range ker;
  Range coker;
};

KerCoker ker_coker(const BitMatrix& m);

enum class Pivots { all, red_only };

/// Gaussian elimination of diagram arrows. Explicit blocks are split along
/// their rank normal form so every nonzero block can be pivoted; profile
/// blocks are pivoted only when invertible and alone at their codomain or
/// domain. Kernel and cokernel of the total map are unchanged.
Diagram eliminate(const Diagram& d, Pivots pivots = Pivots::all);

/// Kernel and cokernel of a diagram without factor payloads.
KerCoker diagram_ker_coker(const Diagram& d, std::uint64_t seed = 0);

/// Closed forms for lambda_r^{1,g}; empty outside the covered cases.
struct ClosedForm {
  std::size_t ker = 0;
  std::size_t coker = 0;
  int ker_case = 0;  // 1-3, which kernel formula applied
  int coker_case = 0;  // 4-6
};
std::optional<ClosedForm> closed_form_1g(long r, int g, const BettiTable& h);

/// |ker rho_{r-3}| + |ker mu_{r-1}| + |ker rho_r meet ker nu_{r-2}|. The meet
/// is taken from `meet` or, with assume_zero, from the maximal-rank mode.
std::size_t kernel_formula_with_intersection(long r, const GenusData& d,
                                             std::optional<std::size_t> meet,
                                             bool assume_zero = false);

/// h_{r-1} - m_{r-1} - m_{r-3}.
std::size_t surjectivity_mode_kernel(long r, int g, const BettiTable& h);

/// h_r = coker_r + ker_{r-1} for r = 0..6g-3 of the target genus; both lists
/// indexed by degree, missing entries count as 0. Throws ValidationError
/// naming the first degree where duality or the Euler characteristic fails.
BettiTable glue(int target_genus, const std::vector<std::size_t>& cokers,
                const std::vector<std::size_t>& kers);

/// Data set for factor genus 1 or 2.
GenusData split_factor_data(int genus);

/// ker/coker of lambda_r for one realization pair.
KerCoker lambda_ker_coker(long r, const GenusData& da, const GenusData& db,
                          const GenusRealization& ra, const GenusRealization& rb);

/// Range of ker/coker of lambda_r over `samples` seeds (seed, seed+1, ...).
KerCoker sample_lambda(long r, const GenusData& da, const GenusData& db, std::uint64_t seed,
                       std::size_t samples);

/// ker/coker of lambda_r over every admissible pair of factor decompositions.
struct FeasibleRow {
  long r = 0;
  Range ker;
  Range coker;
};
struct FeasibleTable {
  std::vector<FeasibleRow> rows;
  std::size_t pairs = 0;  // realization pairs examined
  std::size_t kept = 0;   // pairs contributing to the rows
  bool exhaustive = true;
};
/// With `glue_target`, only pairs whose lambda table glues to it count.
FeasibleTable feasible_table(const GenusData& da, const GenusData& db,
                             const BettiTable* glue_target = nullptr);

// Inference ---------------------------------------------------------------

struct InferQuery {
  Split split;
  std::vector<MapRef> unknowns;  // nu slots of genus a or b
  std::optional<long> degree;    // glue checked here only; all degrees otherwise
  std::size_t samples = 0;       // extra random realizations per candidate
  std::uint64_t seed = 0;
  /// Pin each unknown to the maximal-rank prediction under this reading.
  std::optional<HalfReading> conjecture;
};

struct Candidate {
  std::vector<std::size_t> ranks;  // one per unknown
  bool feasible = false;
  std::string reason;  // first failing degree or infeasibility message
  friend bool operator<(const Candidate& x, const Candidate& y) { return x.ranks < y.ranks; }
};

struct InferResult {
  std::vector<MapRef> unknowns;
  std::vector<MapProfile> shapes;  // dom/cod per unknown, rank unused
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  std::vector<Candidate> candidates;  // sorted by rank tuple
  [[nodiscard]] std::vector<Candidate> feasible() const;
  [[nodiscard]] bool unique() const { return feasible().size() == 1; }
};

/// Rank window max(mu - rho, 0) .. min(mu, h, nplus) for an unknown nu slot.
std::pair<std::size_t, std::size_t> nu_rank_window(const GenusData& d, long r);

/// Enumerates every rank tuple for the unknowns and keeps those for which
/// some admissible realization satisfies the glue relation against
/// mod2_table(a+b). Throws InfeasibleError when nothing survives.
InferResult infer(const InferQuery& q);

/// Human-readable verdict for one unknown, e.g. "isomorphism", "injective".
std::string describe_rank(const MapProfile& p);

/// Structured-text dump: summand labels, dims, edge payload kinds.
std::string dump_diagram(const Diagram& d);

}  // namespace mod2betti
