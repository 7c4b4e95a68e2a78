#include <limits>
#include <vector>

#include "doctest.h"
#include "mod2betti/betti.hpp"

using namespace mod2betti;

namespace {

std::vector<BigCount> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

std::vector<BigCount> head(const BettiTable& t, std::size_t n) {
  return {t.values().begin(), t.values().begin() + static_cast<long>(n)};
}

// (1 + t^3)^(2g) by repeated multiplication.
std::vector<BigCount> poly_power(int g) {
  std::vector<BigCount> p{1};
  for (int k = 0; k < 2 * g; ++k) {
    std::vector<BigCount> q(p.size() + 3, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] += p[i];
      q[i + 3] += p[i];
    }
    p = q;
  }
  return p;
}

}  // namespace

TEST_CASE("m_coeff") {
  CHECK(m_coeff(1, 3) == 2);
  CHECK(m_coeff(2, 4) == 0);
  CHECK(m_coeff(3, 9) == 20);
  CHECK(m_coeff(2, -3) == 0);
  CHECK(m_coeff(2, 15) == 0);
  for (int g = 1; g <= 8; ++g) {
    const auto p = poly_power(g);
    for (long r = 0; r <= 6L * g; ++r) {
      CHECK(m_coeff(g, r) == p[static_cast<std::size_t>(r)]);
      CHECK(m_coeff(g, r) == m_coeff(g, 6L * g - r));
    }
  }
}

TEST_CASE("rational tables") {
  CHECK(rational_table(1).values() == big({1, 0, 0, 1}));
  CHECK(rational_table(2).values() == big({1, 0, 1, 4, 0, 0, 4, 1, 0, 1}));
  CHECK(head(rational_table(3), 8) == big({1, 0, 1, 6, 1, 6, 15, 0}));
}

TEST_CASE("mod 2 tables") {
  CHECK(mod2_table(1).values() == big({1, 1, 1, 1}));
  CHECK(mod2_table(2).values() == big({1, 0, 1, 5, 5, 5, 5, 1, 0, 1}));
  CHECK(head(mod2_table(3), 8) == big({1, 0, 1, 6, 1, 7, 22, 22}));
  const auto t6 = mod2_table(6);
  CHECK(t6.at(14) == 794);
  CHECK(t6.at(15) == 1586);
  CHECK(t6.at(16) == 1586);
  CHECK(t6.size() == table_length(6, Space::framed));
}

TEST_CASE("middle closed form") {
  CHECK(middle_closed_form(2) == 5);
  CHECK(middle_closed_form(4) == 93);
  CHECK(middle_closed_form(5) == 386);
  for (int g = 2; g <= 10; ++g) {
    const auto t = mod2_table(g);
    for (long r = 3L * g - 3; r <= 3L * g; ++r) CHECK(t.at(r) == middle_closed_form(g));
  }
}

TEST_CASE("total rank identity") {
  CHECK(total_rank_identity(1) == std::pair<BigCount, BigCount>{4, 4});
  CHECK(total_rank_identity(2) == std::pair<BigCount, BigCount>{24, 24});
  CHECK(total_rank_identity(3) == std::pair<BigCount, BigCount>{120, 120});
  for (int g = 1; g <= 10; ++g) {
    const auto [a, b] = total_rank_identity(g);
    CHECK(a == b);
    CHECK(a == 2 * g * binomial(2 * static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(g)));
  }
}

TEST_CASE("duality, Euler characteristic and the agreement law") {
  for (int g = 1; g <= 12; ++g) {
    for (const auto& t : {mod2_table(g), rational_table(g)}) {
      CHECK(first_duality_failure(t) == -1);
      CHECK(euler_characteristic(t) == 0);
      CHECK(t.at(0) == 1);
      if (g >= 2) CHECK(t.at(1) == 0);
    }
  }
  for (int g = 2; g <= 10; ++g) {
    const auto m = mod2_table(g);
    const auto q = rational_table(g);
    for (long r = 0; r <= 2L * g - 2; ++r) CHECK(m.at(r) == q.at(r));
    CHECK(m.at(2L * g - 1) == q.at(2L * g - 1) + 1);
  }
}

TEST_CASE("large genus stays exact") {
  const auto t = mod2_table(40);
  CHECK(t.at(3 * 40) == middle_closed_form(40));
  CHECK(middle_closed_form(40) > BigCount(std::numeric_limits<std::uint64_t>::max()));
  CHECK(euler_characteristic(t) == 0);
}

TEST_CASE("verify_theorem") {
  CHECK(verify_theorem(2, mod2_table(3)).all_passed());
  CHECK(verify_theorem(1, mod2_table(2)).all_passed());
  CHECK(recursion_bound(mod2_table(1), 3) == 5);  // 4*1 + 2 - 1

  auto v = mod2_table(3).values();
  v[7] -= 1;  // h_7 = 21 breaks h_7 = h_6
  const BettiTable bad(3, Field::F2, Space::framed, v);
  const auto rep = verify_theorem(2, bad);
  CHECK_FALSE(rep.all_passed());
}
