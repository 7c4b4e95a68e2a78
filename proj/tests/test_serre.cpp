#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mod2betti/errors.hpp"
#include "mod2betti/serre.hpp"

using namespace mod2betti;

namespace {

const std::string kData = MOD2BETTI_TEST_DATA;

std::vector<BigCount> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

// Random Poincare-dual base of genus g with dims[0] = 1, dims[1] = 0.
AlphaAction random_base(int g, std::mt19937_64& rng, bool with_ranks) {
  AlphaAction a;
  a.genus = g;
  const std::size_t n = 6 * static_cast<std::size_t>(g) - 5;
  a.dims.assign(n, 0);
  std::uniform_int_distribution<std::size_t> dist(0, 6);
  for (std::size_t r = 0; r <= (n - 1) / 2; ++r) a.dims[r] = a.dims[n - 1 - r] = dist(rng);
  a.dims[0] = a.dims[n - 1] = 1;
  a.dims[1] = a.dims[n - 2] = 0;
  // ranks are symmetric: alpha out of k is adjoint to alpha out of n-3-k
  a.alpha_ranks.assign(n - 2, 0);
  for (std::size_t k = 0; with_ranks && k <= (n - 3) / 2; ++k) {
    const std::size_t cap = std::min(a.dims[k], a.dims[k + 2]);
    a.alpha_ranks[k] = a.alpha_ranks[n - 3 - k] = std::uniform_int_distribution<std::size_t>(0, cap)(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("built-in genus 2 ring") {
  const auto a = genus2_ring();
  CHECK(a.dims == std::vector<std::size_t>{1, 0, 1, 4, 1, 0, 1});
  CHECK(a.alpha_rank(4) == 1);
  CHECK(a.alpha_rank(2) == 0);
  CHECK(a.alpha_rank(0) == 1);
  CHECK(a.dims[2] - a.alpha_rank(2) >= 1);  // alpha^{g-1} y survives
  CHECK(serre_betti(a).values() == big({1, 0, 1, 5, 5, 5, 5, 1, 0, 1}));
  CHECK(violations(a).empty());
}

TEST_CASE("trivial action is the product with SO(3)") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const int g = 2 + t % 4;
    const auto a = random_base(g, rng, false);
    const auto h = serre_betti(a);
    for (long r = 0; r <= h.top_degree(); ++r) {
      const std::size_t want = a.dim(r) + a.dim(r - 1) + a.dim(r - 2) + a.dim(r - 3);
      CHECK(h.at(r) == want);
    }
  }
}

TEST_CASE("output invariants on random rank profiles") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const int g = 2 + t % 3;
    const auto a = random_base(g, rng, true);
    const auto h = serre_betti(a);
    CHECK(h.size() == 6 * static_cast<std::size_t>(g) - 2);
    CHECK(first_duality_failure(h) == -1);
    CHECK(euler_characteristic(h) == 0);
    std::size_t dims = 0, ranks = 0;
    for (auto d : a.dims) dims += d;
    for (auto r : a.alpha_ranks) ranks += r;
    CHECK(h.total() == BigCount(4 * dims) - BigCount(4 * ranks));
  }
}

TEST_CASE("asymmetric ranks are rejected") {
  AlphaAction a = genus2_ring();
  a.alpha_matrices.reset();
  a.alpha_ranks = {1, 0, 0, 0, 0};
  const auto v = violations(a);
  REQUIRE(v.size() == 1);
  CHECK(v.front().find("duality") != std::string::npos);
  CHECK(serre_betti(genus2_ring()) == mod2_table(2));
}

TEST_CASE("nilpotency is checked on explicit matrices") {
  AlphaAction a = genus2_ring();
  (*a.alpha_matrices)[2] = BitMatrix::identity(1);  // alpha^2 != 0
  a.alpha_ranks[2] = 1;
  const auto v = violations(a);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().find("nilpotency") != std::string::npos);
}

TEST_CASE("profile files") {
  const auto g2 = load_alpha_profile(kData + "/genus2_ring.json");
  CHECK(serre_betti(g2) == serre_betti(genus2_ring()));

  const auto h3 = serre_betti(load_alpha_profile(kData + "/genus3_ranks.json"));
  CHECK(h3 == mod2_table(3));
  CHECK(std::vector<BigCount>(h3.values().begin(), h3.values().begin() + 8) ==
        big({1, 0, 1, 6, 1, 7, 22, 22}));

  const auto h4 = serre_betti(load_alpha_profile(kData + "/genus4_ranks.json"));
  CHECK(std::vector<BigCount>(h4.values().begin(), h4.values().begin() + 10) ==
        big({1, 0, 1, 8, 1, 8, 29, 9, 37, 93}));
  CHECK(h4 == mod2_table(4));

  try {
    load_alpha_profile(kData + "/not_simply_connected.json");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("simple connectivity") != std::string::npos);
  }
  CHECK_THROWS_AS(load_alpha_profile(kData + "/unknown_key.json"), ParseError);
  CHECK_THROWS_AS(load_alpha_profile(kData + "/missing.json"), ParseError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_alpha_profile("{"), ParseError);
  CHECK_THROWS_AS(parse_alpha_profile(R"({"genus": 2, "dims": [1,0,1], "alpha_ranks": []})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_alpha_profile(R"({"genus": 2, "dims": [1,0,1,4,1,0,1], "alpha_ranks": [2,0,0,0,1]})"),
      ValidationError);
  // flat matrices are accepted too
  const auto a = parse_alpha_profile(
      R"({"genus": 2, "dims": [1,0,1,4,1,0,1], "alpha_ranks": [1,0,0,0,1],
          "alpha_matrices": [[1], [], [0], [], [1]]})");
  CHECK(serre_betti(a) == mod2_table(2));
}

TEST_CASE("dump round trip") {
  const auto a = genus2_ring();
  const auto b = parse_alpha_profile(dump_alpha_profile(a));
  CHECK(b.dims == a.dims);
  CHECK(b.alpha_ranks == a.alpha_ranks);
  REQUIRE(b.alpha_matrices.has_value());
  CHECK(*b.alpha_matrices == *a.alpha_matrices);
}
