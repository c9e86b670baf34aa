#include <doctest.h>

#include <regex>

#include "dispersion/error.hpp"
#include "dispersion/io.hpp"

using namespace dispersion;

namespace {

std::string schema_message(const std::string& doc) {
  try {
    parse_instance(doc);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) return e.what();
    return "wrong kind";
  }
  return "";
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse a minimal line document") {
  auto inst = parse_instance(R"({"problem":"cofl-line","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":5,"y":0}],"k":2,"alpha":0.5})");
  CHECK(inst.problem == Problem::LineDisks);
  CHECK(inst.segment.q.x == 10);
  REQUIRE(inst.points.size() == 1);
  CHECK(inst.points[0].x == 5);
  CHECK(inst.k == 2);
  CHECK(inst.alpha == 0.5);
}

TEST_CASE("schema errors carry field paths") {
  auto m = schema_message(R"({"problem":"mofl","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":1,"y":0,"w":2},{"x":1,"y":0,"w":-1}],"k":2,"lambda":1})");
  CHECK(m.find("points[1].w") != std::string::npos);
  CHECK(m.find("points[0]") == std::string::npos);
  auto u = schema_message(R"({"problem":"cofl-hex","segment":{"p":[0,0],"q":[10,0]},"points":[],"k":2})");
  CHECK(u.find("problem") != std::string::npos);
  auto several = schema_message(R"({"problem":"cofl-circ","points":[{"x":"a"}],"k":0})");
  CHECK(several.find("circle") != std::string::npos);
  CHECK(several.find("points[0].x") != std::string::npos);
  CHECK(several.find("points[0].y") != std::string::npos);
  CHECK(several.find("k:") != std::string::npos);
  CHECK(schema_message("not json").find("invalid JSON") != std::string::npos);
  auto fractional = schema_message(R"({"problem":"mofl","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":1,"y":0,"w":1.5}],"k":2,"lambda":1})");
  CHECK(fractional.find("points[0].w") != std::string::npos);
}

TEST_CASE("generated instances round trip and are deterministic") {
  for (Problem p : {Problem::LineSquares, Problem::LineDisks, Problem::Circle, Problem::Mofl}) {
    for (std::uint64_t seed : {1u, 7u, 99u}) {
      GeneratorParams params{p, seed, 12, 3, 1.0, std::nullopt};
      auto a = generate_instance(params);
      auto b = generate_instance(params);
      CHECK(serialize_instance(a) == serialize_instance(b));
      auto back = parse_instance(serialize_instance(a));
      CHECK(back == a);
      CHECK(serialize_instance(back) == serialize_instance(a));
      CHECK(instance_digest(back) == instance_digest(a));
      for (const auto& pt : a.points) {
        if (p == Problem::Mofl) {
          REQUIRE(pt.weight);
          CHECK(*pt.weight >= 1);
          CHECK(*pt.weight <= 10);
        }
      }
    }
  }
  auto a = generate_instance({Problem::LineDisks, 7, 5, 3, 1.0, std::nullopt});
  auto b = generate_instance({Problem::LineDisks, 8, 5, 3, 1.0, std::nullopt});
  CHECK(serialize_instance(a) != serialize_instance(b));
}

TEST_CASE("canonical form sorts keys") {
  auto inst = parse_instance(R"({"k":3,"segment":{"q":[10,0],"p":[0,0]},"problem":"cofl-line","points":[]})");
  auto text = serialize_instance(inst);
  CHECK(text.find("\"alpha\"") < text.find("\"k\""));
  CHECK(text.find("\"k\"") < text.find("\"points\""));
  CHECK(text.find("\"points\"") < text.find("\"problem\""));
}

TEST_CASE("run decide and solve") {
  auto five = parse_instance(R"({"problem":"cofl-line","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":5,"y":0}],"k":2,"alpha":1})");
  auto d = run_decide(five, 6);
  CHECK(d["count"] == 0);
  CHECK(d.contains("instanceDigest"));
  CHECK(d.contains("wallTimeMs"));
  CHECK(d["solver"] == "count_disks");

  auto empty = parse_instance(R"({"problem":"cofl-line","segment":{"p":[0,0],"q":[10,0]},"points":[],"k":3,"alpha":1})");
  auto s = run_solve(empty);
  CHECK(s["lambda_star"].get<double>() == doctest::Approx(5.0));
  REQUIRE(s["centers"].size() == 3);
  CHECK(s["centers"][0][0].get<double>() == doctest::Approx(0.0));
  CHECK(s["centers"][1][0].get<double>() == doctest::Approx(5.0));
  CHECK(s["centers"][2][0].get<double>() == doctest::Approx(10.0));

  auto circ = parse_instance(R"({"problem":"cofl-circ","circle":{"center":[1,2],"radius":1},"points":[],"k":4,"alpha":1})");
  auto c = run_solve(circ);
  CHECK(c["lambda_star"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  for (const auto& p : c["centers"])
    CHECK(std::hypot(p[0].get<double>() - 1, p[1].get<double>() - 2) == doctest::Approx(1.0).epsilon(1e-9));

  auto mofl = parse_instance(R"({"problem":"mofl","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":5,"y":0,"w":3}],"k":11,"alpha":1,"lambda":1})");
  CHECK(run_solve(mofl)["covered_weight"].get<double>() == 3.0);
}

TEST_CASE("render svg") {
  auto empty = parse_instance(R"({"problem":"cofl-line","segment":{"p":[0,0],"q":[10,0]},"points":[],"k":3,"alpha":1})");
  auto svg = render_svg(empty, run_solve(empty));
  CHECK(count_of(svg, "class=\"disk\"") == 3);
  CHECK(count_of(svg, "class=\"point") == 0);
  CHECK(svg == render_svg(empty, run_solve(empty)));

  auto mofl = parse_instance(R"({"problem":"mofl","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":5,"y":0,"w":3},{"x":5,"y":3,"w":1}],"k":11,"alpha":1,"lambda":1})");
  auto m = render_svg(mofl, run_solve(mofl));
  CHECK(count_of(m, "class=\"point covered\"") == 1);
  CHECK(count_of(m, "class=\"point\"") == 1);

  auto sq = parse_instance(R"({"problem":"cofl-line-sq","segment":{"p":[0,0],"q":[10,0]},"points":[{"x":5,"y":1}],"k":6})");
  CHECK(count_of(render_svg(sq, run_solve(sq)), "<rect class=\"disk\"") == 6);

  nlohmann::json bad{{"centers", {{3.0, 4.0}}}, {"lambda_star", 1.0}};
  try {
    render_svg(empty, bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentSolution);
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorKind::SchemaError) == 2);
  CHECK(exit_code(ErrorKind::Infeasible) == 3);
  CHECK(exit_code(ErrorKind::NoFeasiblePath) == 3);
  CHECK(exit_code(ErrorKind::ModelInvariantViolation) == 4);
}
