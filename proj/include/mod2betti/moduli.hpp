#pragma once

// Homological bookkeeping for N_g^+ and the boundary inclusion maps
// mu = nu + rho, plus the embedded genus-1 and genus-2 data sets.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mod2betti/betti.hpp"

namespace mod2betti {

/// A linear map F^dom -> F^cod of the given rank (written rank_dom^cod).
struct MapProfile {
  std::size_t rank = 0;
  std::size_t dom = 0;
  std::size_t cod = 0;

  [[nodiscard]] std::size_t kernel() const noexcept { return dom - rank; }
  [[nodiscard]] std::size_t cokernel() const noexcept { return cod - rank; }
  [[nodiscard]] bool injective() const noexcept { return rank == dom; }
  [[nodiscard]] bool surjective() const noexcept { return rank == cod; }
  [[nodiscard]] bool iso() const noexcept { return rank == dom && rank == cod; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const MapProfile&, const MapProfile&) = default;
};

/// Throws ValidationError unless rank <= min(dom, cod).
MapProfile make_profile(std::size_t rank, std::size_t dom, std::size_t cod);

/// nu_r: H_r(N#) -> H_r(N+), rho_r: H_{r-2}(N#) -> H_r(N+), mu_r = nu_r + rho_r.
enum class MapKind { nu, rho, mu };
std::string to_string(MapKind k);

struct MapRef {
  int genus = 0;
  MapKind kind = MapKind::nu;
  long degree = 0;
  bool inverted = false;  // only meaningful inside composite constraints

  [[nodiscard]] std::string str() const;
  friend bool operator==(const MapRef&, const MapRef&) = default;
  friend auto operator<=>(const MapRef&, const MapRef&) = default;
};

enum class ConstraintKind { kernel_intersection_dim, image_containment, composite_kernel_dim };
std::string to_string(ConstraintKind k);

/// A joint fact about several maps, kept exactly as stated. The mv module
/// decides how to evaluate it on explicit matrices.
struct SideConstraint {
  ConstraintKind kind = ConstraintKind::kernel_intersection_dim;
  std::vector<MapRef> operands;
  std::size_t value = 0;
  std::string source;

  [[nodiscard]] std::string str() const;
};

struct GenusData {
  int genus = 0;
  BettiTable h;      // framed, F2
  BettiTable nplus;  // H_*(N_g^+), degrees 0..6g
  std::vector<MapProfile> mu;                // degrees 0..6g
  std::vector<MapProfile> rho;               // degrees 0..6g
  std::vector<std::optional<MapProfile>> nu;  // degrees 0..6g; unknown beyond genus 2
  std::vector<SideConstraint> constraints;

  /// Profiles outside the stored range are zero maps between zero spaces.
  [[nodiscard]] MapProfile mu_at(long r) const;
  [[nodiscard]] MapProfile rho_at(long r) const;
  [[nodiscard]] std::optional<MapProfile> nu_at(long r) const;
  [[nodiscard]] bool nu_known() const;
  [[nodiscard]] long max_degree() const noexcept { return 6L * genus; }
};

/// Betti numbers of N_g^+ from those of N_g^#. Both branches of the formula
/// are evaluated at their common degree 3g+1 and must agree.
BettiTable nplus_betti(int g, const BettiTable& h);
/// Betti numbers of (N_g^+, boundary); equals nplus reversed.
BettiTable nhat_betti(int g, const BettiTable& h);

std::size_t mu_kernel_dim(int g, long r, const BettiTable& h);
MapProfile mu_profile(int g, long r, const BettiTable& h);
MapProfile rho_profile(int g, long r, const BettiTable& h);

/// Formula-determined data for genus g on the given framed table. nu is left
/// unknown except where its domain or codomain is zero, or where mu = nu
/// because rho has zero domain.
GenusData genus_data(int g, const BettiTable& h);

GenusData genus1_data();
GenusData genus2_data();

/// Throws ValidationError naming the first violated invariant.
void validate(const GenusData& d);

/// One row of the printed genus-1 / genus-2 data tables, kept verbatim.
struct PrintedRow {
  long r = 0;
  std::size_t h = 0;
  std::size_t nplus = 0;
  MapProfile mu, rho, nu;
};
std::vector<PrintedRow> printed_table(int g);

struct Diagnostic {
  enum class Severity { info, error };
  std::string id;
  Severity severity = Severity::error;
  std::string message;
};

/// Compares formula-derived data against the printed tables for g in {1,2}.
/// Mismatches on the known list are reported with info severity.
std::vector<Diagnostic> compare_with_printed(int g);

/// Where the maximal-rank conjecture switches nu from surjective to
/// injective. The statement says "first half of the 6g-6 degrees" while nu
/// lives on 0..6g-3: base reads it as r <= 3g-3, framed as r <= 3g-2.
enum class HalfReading { base, framed };
std::string to_string(HalfReading h);
HalfReading parse_half_reading(const std::string& s);
long surjective_until(int g, HalfReading h);

/// The profile the conjecture predicts for nu_r, or empty when the
/// predicted direction is impossible for the dimensions.
std::optional<MapProfile> conjectured_nu(const GenusData& d, long r, HalfReading h);

/// Degrees where the prediction is impossible or contradicts a known nu.
std::vector<Diagnostic> conjecture_conflicts(const GenusData& d, HalfReading h);

}  // namespace mod2betti
