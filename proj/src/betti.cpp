#include "mod2betti/betti.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "mod2betti/errors.hpp"

namespace mod2betti {

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

std::string to_string(Field f) { return f == Field::Q ? "Q" : "F2"; }

std::string to_string(Space s) {
  switch (s) {
    case Space::framed:
      return "framed";
    case Space::plus:
      return "plus";
    case Space::relative:
      return "relative";
  }
  return "?";
}

std::size_t table_length(int genus, Space space) {
  return space == Space::framed ? static_cast<std::size_t>(6 * genus - 2)
                                : static_cast<std::size_t>(6 * genus + 1);
}

BettiTable::BettiTable(int genus, Field field, Space space, std::vector<BigCount> values)
    : genus_(genus), field_(field), space_(space), values_(std::move(values)) {
  if (genus < 1) throw ValidationError("genus must be >= 1, got " + std::to_string(genus));
  if (values_.size() != table_length(genus, space)) {
    throw ValidationError("table for genus " + std::to_string(genus) + " (" +
                          to_string(space) + ") needs " +
                          std::to_string(table_length(genus, space)) + " degrees, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t r = 0; r < values_.size(); ++r) {
    if (values_[r] < 0) {
      throw ValidationError("negative Betti number at degree " + std::to_string(r));
    }
  }
}

BigCount BettiTable::at(long r) const {
  if (r < 0 || static_cast<std::size_t>(r) >= values_.size()) return 0;
  return values_[static_cast<std::size_t>(r)];
}

std::size_t BettiTable::count(long r) const {
  const BigCount v = at(r);
  if (v > BigCount(std::numeric_limits<std::uint32_t>::max())) {
    throw ValidationError("Betti number at degree " + std::to_string(r) +
                          " is too large for explicit linear algebra");
  }
  return v.convert_to<std::size_t>();
}

BigCount BettiTable::total() const {
  BigCount s = 0;
  for (const auto& v : values_) s += v;
  return s;
}

long BettiTable::top_degree() const noexcept {
  return space_ == Space::framed ? 6L * genus_ - 3 : 6L * genus_;
}

BigCount m_coeff(int g, long r) {
  if (r < 0 || r % 3 != 0 || r > 6L * g) return 0;
  return binomial(static_cast<std::uint64_t>(2 * g), static_cast<std::uint64_t>(r / 3));
}

namespace {

// h_{r-2} + 2 h_{r-3} + h_{r-4}: the Kunneth contribution shared by all
// three recursions.
BigCount shifted_sum(const BettiTable& h, long r) {
  return h.at(r - 2) + 2 * h.at(r - 3) + h.at(r - 4);
}

BigCount bound_one(const BettiTable& h, long r) {
  const int g = h.genus();
  return shifted_sum(h, r) + m_coeff(g, r) - m_coeff(g, r - 4);
}

BigCount bound_two(const BettiTable& h) {
  const int g = h.genus();
  return 4 * h.at(3L * g) + m_coeff(g, 3L * g) - m_coeff(g, 3L * g - 3);
}

BigCount bound_three(const BettiTable& h, long r) {
  const int g = h.genus();
  return shifted_sum(h, r) + m_coeff(g, r - 3) - m_coeff(g, r + 1);
}

}  // namespace

BigCount recursion_bound(const BettiTable& prior, long r) {
  const long g = prior.genus();
  if (r <= 3 * g - 1) return bound_one(prior, r);
  if (r <= 3 * g + 3) return bound_two(prior);
  return bound_three(prior, r);
}

BettiTable rational_table(int g) {
  if (g < 1) throw ValidationError("genus must be >= 1, got " + std::to_string(g));
  BettiTable h(1, Field::Q, Space::framed, {1, 0, 0, 1});
  for (int k = 1; k < g; ++k) {
    const long top = 6L * (k + 1) - 3;
    std::vector<BigCount> next(static_cast<std::size_t>(top + 1), 0);
    for (long r = 0; r <= 3L * k + 1; ++r) next[static_cast<std::size_t>(r)] = bound_one(h, r);
    for (long r = 3L * k + 2; r <= top; ++r)
      next[static_cast<std::size_t>(r)] = next[static_cast<std::size_t>(top - r)];
    h = BettiTable(k + 1, Field::Q, Space::framed, std::move(next));
  }
  return h;
}

BettiTable mod2_table(int g) {
  if (g < 1) throw ValidationError("genus must be >= 1, got " + std::to_string(g));
  BettiTable h(1, Field::F2, Space::framed, {1, 1, 1, 1});
  for (int k = 1; k < g; ++k) {
    const long top = 6L * (k + 1) - 3;
    std::vector<BigCount> next(static_cast<std::size_t>(top + 1), 0);
    for (long r = 0; r <= top; ++r) next[static_cast<std::size_t>(r)] = recursion_bound(h, r);
    h = BettiTable(k + 1, Field::F2, Space::framed, std::move(next));
  }
  return h;
}

BigCount middle_closed_form(int g) {
  if (g < 2) throw ValidationError("middle closed form needs genus >= 2");
  BigCount pow2 = 1;
  pow2 <<= static_cast<unsigned>(2 * g - 1);
  return pow2 - binomial(static_cast<std::uint64_t>(2 * g - 1), static_cast<std::uint64_t>(g));
}

std::pair<BigCount, BigCount> total_rank_identity(int g) {
  return {mod2_table(g).total(), 2 * rational_table(g).total()};
}

long first_duality_failure(const BettiTable& t) {
  const long top = t.top_degree();
  for (long r = 0; r <= top; ++r)
    if (t.at(r) != t.at(top - r)) return r;
  return -1;
}

BigCount euler_characteristic(const BettiTable& t) {
  BigCount chi = 0;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (r % 2 == 0) {
      chi += t.values()[r];
    } else {
      chi -= t.values()[r];
    }
  }
  return chi;
}

bool TheoremReport::all_passed() const {
  for (const auto& v : verdicts)
    if (!v.passed) return false;
  return true;
}

TheoremReport verify_theorem(int g, const BettiTable& candidate) {
  if (g < 1) throw ValidationError("genus must be >= 1");
  if (candidate.genus() != g + 1 || candidate.space() != Space::framed ||
      candidate.size() != table_length(g + 1, Space::framed)) {
    throw ValidationError("candidate must be a framed table of genus " + std::to_string(g + 1) +
                          " with " + std::to_string(table_length(g + 1, Space::framed)) +
                          " degrees");
  }
  const BettiTable prior = mod2_table(g);
  TheoremReport report;
  report.genus = g;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.verdicts.push_back({std::move(name), ok, std::move(detail)});
  };
  const long top = candidate.top_degree();
  const long lg = g;

  for (long r = 0; r <= top; ++r) {
    const char* family = r <= 3 * lg - 1 ? "I" : (r <= 3 * lg + 3 ? "II" : "III");
    const BigCount bound = recursion_bound(prior, r);
    const BigCount h = candidate.at(r);
    add("(" + std::string(family) + ")_" + std::to_string(r) + " >=", h >= bound,
        "h=" + h.str() + " bound=" + bound.str());
  }
  for (long r = 2; r <= 3 * lg - 1; r += 3) {
    const BigCount bound = bound_one(prior, r);
    add("(I)_" + std::to_string(r) + " equality", candidate.at(r) == bound,
        "h=" + candidate.at(r).str() + " expected=" + bound.str());
  }
  for (long k = 1; k <= 3 * lg - 1; k += 3) {
    const BigCount lhs = candidate.at(k) - candidate.at(k - 1);
    const BigCount rhs = bound_one(prior, k) - bound_one(prior, k - 1);
    add("difference h_" + std::to_string(k) + " - h_" + std::to_string(k - 1), lhs == rhs,
        "got " + lhs.str() + " expected " + rhs.str());
  }
  add("h_" + std::to_string(3 * lg + 1) + " = h_" + std::to_string(3 * lg),
      candidate.at(3 * lg + 1) == candidate.at(3 * lg),
      candidate.at(3 * lg + 1).str() + " vs " + candidate.at(3 * lg).str());
  const long dual = first_duality_failure(candidate);
  add("duality", dual < 0, dual < 0 ? "" : "first mismatch at degree " + std::to_string(dual));
  const BigCount chi = euler_characteristic(candidate);
  add("euler characteristic", chi == 0, "chi=" + chi.str());
  return report;
}

}  // namespace mod2betti
