#pragma once

// Betti tables of the framed moduli spaces and the recursions that generate
// them over Q and over GF(2).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mod2betti {

/// Exact non-negative integers; binomials outgrow 64 bits from genus ~33.
using BigCount = boost::multiprecision::cpp_int;

BigCount binomial(std::uint64_t n, std::uint64_t k);

enum class Field { Q, F2 };
/// framed = N_g^#, plus = N_g^+, relative = (N_g^+, boundary).
enum class Space { framed, plus, relative };

std::string to_string(Field f);
std::string to_string(Space s);

/// Graded dimensions indexed by degree from 0. Reads outside the stored
/// range return 0, which is how every recursion treats missing degrees.
class BettiTable {
 public:
  BettiTable() = default;
  BettiTable(int genus, Field field, Space space, std::vector<BigCount> values);

  [[nodiscard]] int genus() const noexcept { return genus_; }
  [[nodiscard]] Field field() const noexcept { return field_; }
  [[nodiscard]] Space space() const noexcept { return space_; }
  [[nodiscard]] const std::vector<BigCount>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  /// Value at degree r, 0 for r outside [0, size).
  [[nodiscard]] BigCount at(long r) const;
  /// As `at`, narrowed to a machine count; throws if it does not fit.
  [[nodiscard]] std::size_t count(long r) const;
  [[nodiscard]] BigCount total() const;

  /// Top degree of the underlying manifold: 6g-3 framed, 6g otherwise.
  [[nodiscard]] long top_degree() const noexcept;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  int genus_ = 0;
  Field field_ = Field::F2;
  Space space_ = Space::framed;
  std::vector<BigCount> values_;
};

/// Expected table length for a space of the given genus.
std::size_t table_length(int genus, Space space);

/// Coefficient of t^r in (1 + t^3)^(2g); zero off the support.
BigCount m_coeff(int g, long r);

BettiTable rational_table(int g);
BettiTable mod2_table(int g);

/// 2^(2g-1) - C(2g-1, g), the common value of the four middle mod-2 Betti numbers.
BigCount middle_closed_form(int g);

/// (sum of mod-2 table, 2 * sum of rational table).
std::pair<BigCount, BigCount> total_rank_identity(int g);

/// Poincare duality values[r] == values[top - r]; returns the first failing
/// degree or -1.
long first_duality_failure(const BettiTable& t);
/// Alternating sum over all degrees.
BigCount euler_characteristic(const BettiTable& t);

struct ConstraintVerdict {
  std::string name;  // e.g. "(I)_5 >=", "duality"
  bool passed = false;
  std::string detail;
};

struct TheoremReport {
  int genus = 0;  // genus of the prior table; the candidate has genus + 1
  std::vector<ConstraintVerdict> verdicts;
  [[nodiscard]] bool all_passed() const;
};

/// Checks a genus g+1 framed mod-2 candidate against the three recursive
/// lower bounds built on mod2_table(g), the proven equalities, duality and
/// vanishing Euler characteristic.
TheoremReport verify_theorem(int g, const BettiTable& candidate);

/// Right-hand sides of the three lower bounds at degree r for genus g -> g+1.
BigCount recursion_bound(const BettiTable& prior, long r);

}  // namespace mod2betti
