#include <doctest.h>

#include <bit>
#include <random>

#include "dispersion/error.hpp"
#include "dispersion/pst.hpp"

using namespace dispersion;

TEST_CASE("versioned tree examples") {
  VersionedTree t(3);
  CHECK(t.query(2, 0) == 0);
  CHECK(t.add(1, 2) == 1);
  CHECK(t.query(2, 1) == 1);
  CHECK(t.add(2, 3) == 2);
  CHECK(t.query(2, 2) == 2);
  CHECK(t.query(1, 2) == 1);
  CHECK(t.query(1, 0) == 0);

  VersionedTree one(1);
  CHECK(one.query(1, 0) == 0);

  VersionedTree four(4);
  four.add(1, 4);
  four.add(1, 4);
  CHECK(four.query(3, 2) == 2);
}

TEST_CASE("versioned tree errors") {
  CHECK_THROWS_AS(VersionedTree(0), Error);
  VersionedTree t(5);
  CHECK_THROWS_AS(t.add(0, 2), Error);
  CHECK_THROWS_AS(t.add(3, 6), Error);
  CHECK_THROWS_AS(t.add(4, 3), Error);
  try {
    t.query(1, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VersionError);
  }
  try {
    t.query(6, 0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexError);
  }
}

TEST_CASE("versioned tree against full copies") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 7u, 64u, 100u}) {
    VersionedTree t(n);
    std::vector<std::vector<long long>> naive{std::vector<long long>(n + 1, 0)};
    for (int op = 0; op < 2000; ++op) {
      if (rng() % 2) {
        std::size_t i = 1 + rng() % n, j = 1 + rng() % n;
        if (i > j) std::swap(i, j);
        std::size_t before = t.node_count();
        t.add(i, j);
        CHECK(t.node_count() - before <= t.max_nodes_per_add());
        auto next = naive.back();
        for (std::size_t x = i; x <= j; ++x) ++next[x];
        naive.push_back(next);
      } else {
        std::size_t v = rng() % naive.size(), i = 1 + rng() % n;
        REQUIRE(t.query(i, v) == naive[v][i]);
      }
    }
  }
}

TEST_CASE("versioned tree values grow with version") {
  VersionedTree t(16);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::size_t a = 1 + rng() % 16, b = 1 + rng() % 16;
    if (a > b) std::swap(a, b);
    t.add(a, b);
  }
  for (std::size_t i = 1; i <= 16; ++i)
    for (std::size_t v = 1; v < t.versions(); ++v) CHECK(t.query(i, v) >= t.query(i, v - 1));
}
