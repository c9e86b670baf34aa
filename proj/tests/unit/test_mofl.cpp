#include <doctest.h>

#include <cmath>
#include <random>

#include "dispersion/error.hpp"
#include "dispersion/mofl_solver.hpp"
#include "oracles.hpp"

using namespace dispersion;

namespace {

const Segment kSeg{{0, 0}, {10, 0}};

MoflInstance make(std::vector<Point> pts, int k, double lambda, double alpha) {
  return {std::move(pts), kSeg, k, lambda, alpha};
}

}  // namespace

TEST_CASE("influence intervals") {
  std::vector<Point> a{{2, 0, 1}};
  auto ia = influence_intervals(a, 1);
  REQUIRE(ia.size() == 1);
  CHECK(ia[0].lo == doctest::Approx(1));
  CHECK(ia[0].hi == doctest::Approx(3));
  CHECK(ia[0].weight == 1);
  std::vector<Point> b{{5, 1, 2}};
  CHECK(influence_intervals(b, 1).empty());
  std::vector<Point> c{{5, 0.6, 2}};
  auto ic = influence_intervals(c, 1);
  REQUIRE(ic.size() == 1);
  CHECK(ic[0].lo == doctest::Approx(4.2));
  CHECK(ic[0].hi == doctest::Approx(5.8));
  CHECK(ic[0].weight == 2);
}

TEST_CASE("candidate positions") {
  std::vector<InfluenceInterval> one{{1, 3, 1, 0}};
  CHECK(candidate_positions(one, 0, 10, 2, 2) == std::vector<double>{0, 1, 2, 3, 5, 10});
  CHECK(candidate_positions(one, 0, 10, 1, 2) == std::vector<double>{0, 1, 3, 10});
  CHECK(candidate_positions({}, 0, 4, 3, 10) == std::vector<double>{0, 4});
}

TEST_CASE("edge weights") {
  std::vector<InfluenceInterval> iv{{1, 3, 2, 0}, {2, 5, 1, 1}};
  MoflGraph g({0.5, 1, 1.2, 4, 6}, iv, 0.5);
  CHECK(edge_weight(g, 1, 4) == -2);
  CHECK(edge_weight(g, 1, 5) == -3);
  CHECK(std::isinf(edge_weight(g, 2, 3)));
  CHECK(edge_weight(g, 0, 6) == -3);
  CHECK(edge_weight(g, 0, 1) == 0);
  try {
    edge_weight(g, 3, 3);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidEdge);
  }
}

TEST_CASE("edge weights against direct sums") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 11), h(0.1, 3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<InfluenceInterval> iv;
    for (int i = 0; i < 8; ++i) {
      double c = u(rng), w = h(rng);
      iv.push_back({c - w, c + w, static_cast<double>(1 + rng() % 5), static_cast<std::size_t>(i)});
    }
    auto pos = candidate_positions(iv, 0, 10, 2, 0.7);
    MoflGraph g(pos, iv, 0.7);
    for (std::size_t x = 0; x < g.nodes(); ++x) {
      for (std::size_t y = x + 1; y < g.nodes(); ++y) {
        if (!g.allowed(x, y)) continue;
        double s = 0;
        for (auto& i : iv)
          if (g.position(x) <= i.lo && i.hi <= g.position(y)) s -= i.weight;
        REQUIRE(g.weight(x, y) == s);
      }
    }
  }
}

TEST_CASE("monge check") {
  std::vector<Point> pts{{2, 0.5, 3}, {4, 0.1, 1}, {7, 0.7, 2}};
  auto g0 = build_mofl_graph(make(pts, 3, 1.0, 0.0001));
  CHECK_FALSE(monge_check(g0));
  MoflGraph empty({0, 5, 10}, {}, 1.0);
  CHECK_FALSE(monge_check(empty));
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 11), v(-1.5, 1.5);
  for (int seed = 0; seed < 100; ++seed) {
    std::vector<Point> p;
    for (int i = 0; i < 6; ++i) p.push_back({u(rng), v(rng), static_cast<double>(1 + rng() % 9)});
    auto g = build_mofl_graph(make(p, 3, 1.0, 0.8));
    CHECK_FALSE(monge_check(g));
  }
}

TEST_CASE("k-link examples") {
  auto a = solve_mofl(make({{2, 0, 1}, {5, 0, 1}}, 2, 1.0, 2.0));
  CHECK(a.covered_weight == 0);
  auto b = solve_mofl(make({{5, 0, 3}}, 11, 1.0, 1.0));
  CHECK(b.covered_weight == 3);
  REQUIRE(b.centers.size() == 11);
  auto c = solve_mofl(make({{5, 0, 3}}, 2, 10.0, 0.05));
  CHECK(c.covered_weight == 3);
  for (auto* inst : {&a, &b, &c}) CHECK(inst->path.path.size() == inst->centers.size() + 2);

  auto g = build_mofl_graph(make({{5, 0, 3}}, 11, 1.0, 1.0));
  CHECK(dp_baseline(g, 11).covered_weight == 3);
}

TEST_CASE("infeasible separation") {
  try {
    solve_mofl(make({}, 3, 6.0, 1.0));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  MoflGraph g({0, 1, 2}, {}, 5.0);
  try {
    dp_baseline(g, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoFeasiblePath);
  }
  CHECK_THROWS_AS(klink_shortest_path(g, 2), Error);
  CHECK_THROWS_AS(oracle::brute_mofl(make({}, 3, 6.0, 1.0), 3), Error);
}

TEST_CASE("engine equals the baseline when the link cost is not convex") {
  std::vector<InfluenceInterval> iv{{6, 9, 5, 0}, {8, 11, 3, 1}, {3, 7, 4, 2}, {8, 9, 1, 3}};
  std::vector<double> h;
  for (int k = 1; k <= 6; ++k) {
    auto pos = candidate_positions(iv, 0, 10, k, 1.0);
    MoflGraph g(pos, iv, 1.0);
    auto a = klink_shortest_path(g, k);
    auto b = dp_baseline(g, k);
    CHECK(a.cost == b.cost);
    h.push_back(b.covered_weight);
  }
  CHECK(h[3] + h[5] < 2 * h[4]);
}

TEST_CASE("engine matches baseline and brute force on random instances") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1, 11), v(-1.5, 1.5), lam(0.5, 2.5);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<Point> p;
    int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) p.push_back({u(rng), v(rng), static_cast<double>(1 + rng() % 9)});
    int k = 1 + static_cast<int>(rng() % 3);
    auto inst = make(p, k, lam(rng), std::vector<double>{0.5, 1, 2}[rng() % 3]);
    auto g = build_mofl_graph(inst);
    auto a = klink_shortest_path(g, k);
    auto b = dp_baseline(g, k);
    REQUIRE(a.cost == b.cost);
    auto brute = oracle::brute_mofl(inst, k);
    CHECK(a.covered_weight == brute.covered_weight);
    std::vector<double> centers;
    for (std::size_t i = 1; i + 1 < a.path.size(); ++i) centers.push_back(g.position(a.path[i]));
    CHECK(oracle::covered_weight(inst, centers) == a.covered_weight);
  }
}

TEST_CASE("brute force with no centers covers nothing") {
  auto r = oracle::brute_mofl(make({{5, 0, 3}}, 1, 1.0, 1.0), 0);
  CHECK(r.covered_weight == 0);
  CHECK(r.centers.empty());
}
