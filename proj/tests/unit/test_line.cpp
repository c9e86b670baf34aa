#include <doctest.h>

#include <cmath>
#include <random>

#include "dispersion/error.hpp"
#include "dispersion/line_solver.hpp"
#include "oracles.hpp"

using namespace dispersion;

namespace {

const Segment kSeg{{0, 0}, {10, 0}};

void check_placement(const std::vector<Point>& pts, const LineSolution& sol, double spacing, bool square) {
  const double eps = 1e-9;
  for (std::size_t i = 0; i < sol.placement.centers.size(); ++i) {
    double c = sol.placement.centers[i];
    CHECK(c >= -eps);
    CHECK(c <= 10 + eps);
    if (i > 0) CHECK(c - sol.placement.centers[i - 1] >= spacing - eps);
    for (const auto& p : pts) {
      if (square) {
        CHECK(std::max(std::abs(c - p.x), std::abs(p.y)) >= sol.lambda / 2 - eps);
      } else {
        CHECK(std::hypot(c - p.x, p.y) >= sol.lambda - eps);
      }
    }
  }
}

}  // namespace

TEST_CASE("count squares examples") {
  std::vector<Point> one{{5, 1}};
  CHECK(count_squares(one, kSeg, 4) == 2);
  CHECK(count_squares({}, kSeg, 2) == 6);
  std::vector<Point> mid{{5, 0}};
  CHECK(count_squares(mid, kSeg, 20) == 0);
}

TEST_CASE("solve squares examples") {
  std::vector<Point> one{{5, 1}};
  auto a = solve_squares(one, kSeg, 6);
  CHECK(a.lambda == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(a.placement.centers.size() == 6);
  check_placement(one, a, a.lambda, true);

  auto b = solve_squares({}, kSeg, 2);
  CHECK(b.lambda == doctest::Approx(10.0).epsilon(1e-9));

  std::vector<Point> mid{{5, 0}};
  auto c = solve_squares(mid, kSeg, 2);
  CHECK(c.lambda == doctest::Approx(10.0).epsilon(1e-9));
  REQUIRE(c.placement.centers.size() == 2);
  CHECK(c.placement.centers[0] == doctest::Approx(0.0));
  CHECK(c.placement.centers[1] == doctest::Approx(10.0));
}

TEST_CASE("count disks examples") {
  FeasibleSet f{{0, 1}, {1.5, 3}};
  CHECK(count_on_feasible(f, 1.0) == 4);
  auto centers = greedy_on_feasible(f, 1.0, 10);
  CHECK(centers == std::vector<double>{0, 1, 2, 3});
  CHECK(count_disks({}, kSeg, 2, 0.5) == 3);
  std::vector<Point> mid{{5, 0}};
  CHECK(count_disks(mid, kSeg, 6, 1) == 0);
}

TEST_CASE("greedy clamps intervals inside the spacing") {
  FeasibleSet f{{0, 0}, {0.5, 0.8}, {2, 2}};
  CHECK(count_on_feasible(f, 1.0) == 2);
}

TEST_CASE("candidate roots") {
  auto left = EndpointFunc::right_of({0, 3});
  auto right = EndpointFunc::left_of({10, 3});
  double lmax = 100;
  auto r1 = candidate_root(left, right, 1, 1.0, lmax);
  REQUIRE(r1);
  double closed = (-20.0 + std::sqrt(400.0 + 4 * 3 * 136.0)) / 6.0;
  CHECK(*r1 == doctest::Approx(closed).epsilon(1e-12));
  CHECK(std::abs(*r1 - 4.17965) < 1e-4);
  auto r0 = candidate_root(left, right, 0, 1.0, lmax);
  REQUIRE(r0);
  CHECK(*r0 == doctest::Approx(std::sqrt(34.0)).epsilon(1e-12));
  auto r2 = candidate_root(EndpointFunc::constant(0), EndpointFunc::constant(10), 2, 1.0, lmax);
  REQUIRE(r2);
  CHECK(*r2 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK_FALSE(candidate_root(EndpointFunc::constant(5), EndpointFunc::constant(4), 0, 1.0, lmax));
}

TEST_CASE("solve disks examples") {
  std::vector<Point> mid{{5, 0}};
  auto a = solve_disks(mid, kSeg, 2, 0.5);
  CHECK(a.lambda == doctest::Approx(5.0).epsilon(1e-9));
  REQUIRE(a.placement.centers.size() == 2);
  CHECK(a.placement.centers[0] == doctest::Approx(0.0));
  CHECK(a.placement.centers[1] == doctest::Approx(10.0));

  std::vector<Point> two{{0, 3}, {10, 3}};
  auto b = solve_disks(two, kSeg, 2, 1.0);
  CHECK(b.lambda == doctest::Approx((-20.0 + std::sqrt(2032.0)) / 6.0).epsilon(1e-9));
  check_placement(two, b, b.lambda, false);

  auto c = solve_disks({}, kSeg, 3, 1.0);
  CHECK(c.lambda == doctest::Approx(5.0).epsilon(1e-9));
  REQUIRE(c.placement.centers.size() == 3);
  CHECK(c.placement.centers[1] == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("solve disks errors") {
  Segment point_seg{{1, 1}, {1, 1}};
  try {
    solve_disks({}, point_seg, 2, 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  try {
    solve_disks({}, kSeg, 1, 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unbounded);
  }
  std::vector<Point> one{{5, 2}};
  auto s = solve_disks(one, point_seg, 1, 1.0);
  CHECK(s.lambda == doctest::Approx(std::hypot(4.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("tilted segment matches the axis-aligned case") {
  Segment tilted{{1, 1}, {7, 9}};
  SegmentFrame frame(tilted);
  std::vector<Point> local{{3, 2}, {6, -1}}, world;
  for (auto& p : local) {
    double ux = 6.0 / 10.0, uy = 8.0 / 10.0;
    world.push_back({1 + p.x * ux - p.y * uy, 1 + p.x * uy + p.y * ux});
  }
  auto a = solve_disks(local, kSeg, 3, 1.0);
  auto b = solve_disks(world, tilted, 3, 1.0);
  CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-9));
}

TEST_CASE("count disks against the exhaustive oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-2, 12), uy(-4, 4), ul(0.2, 6);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Point> pts;
    int n = static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) pts.push_back({ux(rng), uy(rng)});
    double alpha = std::vector<double>{0.5, 1, 2}[rng() % 3];
    double lambda = ul(rng);
    CHECK(count_disks(pts, kSeg, lambda, alpha) == oracle::brute_count_line(pts, kSeg, lambda, alpha));
  }
}

TEST_CASE("exhaustive line oracle examples") {
  CHECK(oracle::brute_count_line({}, kSeg, 2, 0.5) == 3);
  Segment p{{2, 2}, {2, 2}};
  std::vector<Point> far{{5, 5}}, near{{2, 2.5}};
  CHECK(oracle::brute_count_line(far, p, 1, 1) == 1);
  CHECK(oracle::brute_count_line(near, p, 1, 1) == 0);
}
