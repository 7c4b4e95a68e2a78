#pragma once

// Framed Betti numbers from the mod-2 cohomology of the base N_g and the
// rank of cup product with the degree-2 class alpha.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mod2betti/betti.hpp"
#include "mod2betti/f2la.hpp"

namespace mod2betti {

struct AlphaAction {
  int genus = 0;
  std::vector<std::size_t> dims;  // degrees 0..6g-6
  /// alpha_ranks[k] = rank of cup-alpha from degree k, k = 0..6g-8.
  std::vector<std::size_t> alpha_ranks;
  /// Optional explicit maps, matrices[k] is dims[k+2] x dims[k].
  std::optional<std::vector<BitMatrix>> alpha_matrices;

  [[nodiscard]] std::size_t dim(long r) const;
  /// Rank of alpha out of degree k, 0 where either side is a zero space.
  [[nodiscard]] std::size_t alpha_rank(long k) const;
};

/// All invariant violations, in a fixed order; empty when valid.
std::vector<std::string> violations(const AlphaAction& a);
/// Throws ValidationError listing every violation.
void validate(const AlphaAction& a);

/// h_r = coker a_{r-2} + ker a_{r-1} + coker a_{r-4} + ker a_{r-3}.
BettiTable serre_betti(const AlphaAction& a);

/// H^*(N_2; F2): generators alpha, psi_1..psi_4, delta_2 with alpha^2 = 0.
AlphaAction genus2_ring();

/// Strict reader for {"genus", "dims", "alpha_ranks", "alpha_matrices"?}.
AlphaAction parse_alpha_profile(const std::string& text);
AlphaAction load_alpha_profile(const std::filesystem::path& path);
std::string dump_alpha_profile(const AlphaAction& a);

}  // namespace mod2betti
