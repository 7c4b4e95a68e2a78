#pragma once

// Explicit matrices for the boundary maps of one genus.
//
// For fixed parity e the maps nu_s : H_s(N#) -> H_s(N+) and
// rho_{s+2} : H_s(N#) -> H_{s+2}(N+) form a zigzag
//
//   H+_e <- H#_e -> H+_{e+2} <- H#_{e+2} -> H+_{e+4} <- ...
//
// so any realization is a sum of interval modules. The profiles fix how many
// intervals pass through, start at, or end at each node; which of the
// arriving intervals continue is left free, and that choice is what the
// enumeration below ranges over.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mod2betti/f2la.hpp"
#include "mod2betti/moduli.hpp"

namespace mod2betti {

struct ChainNode {
  bool sink = false;  // sinks are H_t(N+), sources H_s(N#)
  long degree = 0;
  std::size_t dim = 0;
};

/// One parity class. edge_rank[k] is the rank of the map between node k and
/// node k+1; joint[k] is the dimension of the span of images at a sink, or
/// dim minus the joint kernel at a source.
struct Chain {
  int parity = 0;
  std::vector<ChainNode> nodes;
  std::vector<std::size_t> edge_rank;
  std::vector<std::size_t> joint;
};

/// Chain for the given parity. Source joint ranks are generic,
/// min(dim, rank nu + rank rho), i.e. ker nu_s and ker rho_{s+2} meet in 0.
/// Throws ValidationError if some nu is unknown.
Chain build_chain(const GenusData& d, int parity);

struct Interval {
  std::size_t lo = 0;  // node indices, inclusive
  std::size_t hi = 0;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Intervals of one chain, sorted.
using ChainDecomposition = std::vector<Interval>;

/// Oldest arriving intervals continue first. Throws InfeasibleError if the
/// local counts are contradictory.
ChainDecomposition canonical_decomposition(const Chain& c);
ChainDecomposition random_decomposition(const Chain& c, std::mt19937_64& rng);
/// Every iso class, canonical first; stops after `limit` and sets `truncated`.
std::vector<ChainDecomposition> enumerate_decompositions(const Chain& c, std::size_t limit,
                                                         bool* truncated = nullptr);

/// Decomposition of both parity chains.
struct Decomposition {
  ChainDecomposition even, odd;
  friend auto operator<=>(const Decomposition&, const Decomposition&) = default;
};

/// nu[s] is nplus_s x h_s, rho[t] is nplus_t x h_{t-2}, degrees 0..6g.
struct GenusRealization {
  int genus = 0;
  std::vector<BitMatrix> nu;
  std::vector<BitMatrix> rho;

  [[nodiscard]] const BitMatrix& map(MapKind kind, long degree) const;
  /// hstack(nu_r, rho_r).
  [[nodiscard]] BitMatrix mu(long degree) const;
};

/// Interval modules assembled into matrices; seed != 0 applies a random
/// change of basis at every node.
GenusRealization realize_decomposition(const GenusData& d, const Decomposition& dec,
                                       std::uint64_t seed);

/// Value of one side constraint under one reading; empty when the reading
/// does not type-check on this genus.
struct ReadingValue {
  std::string reading;
  std::optional<std::size_t> value;
};
/// All readings, the one used for filtering first.
std::vector<ReadingValue> evaluate_constraint(const SideConstraint& c, const GenusRealization& r);
bool satisfies_constraints(const GenusData& d, const GenusRealization& r);

struct RealizationSet {
  std::vector<Decomposition> decompositions;  // those meeting every constraint
  std::size_t examined = 0;
  bool exhaustive = true;
};

/// Decompositions meeting the data's side constraints. Enumerates when the
/// product of chain counts is at most `limit`, otherwise canonical plus
/// `samples` random draws. Throws InfeasibleError when none survive.
RealizationSet admissible_decompositions(const GenusData& d, std::size_t limit = 4096,
                                         std::size_t samples = 64, std::uint64_t seed = 0);

/// Deterministic witness: seed 0 is the first admissible decomposition in
/// the identity basis, other seeds pick one at random and scramble bases.
GenusRealization realize_genus(const GenusData& d, std::uint64_t seed = 0);

}  // namespace mod2betti
