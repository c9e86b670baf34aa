#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dispersion/error.hpp"
#include "dispersion/geom.hpp"

namespace dispersion {

enum class Problem { LineSquares, LineDisks, Circle, Mofl };

const char* problem_tag(Problem problem);
std::optional<Problem> parse_problem(std::string_view tag);

struct InstanceFile {
  Problem problem = Problem::LineDisks;
  Segment segment;     // line problems and mofl
  CircleSpec circle;   // cofl-circ
  std::vector<Point> points;
  int k = 1;
  double alpha = 1.0;
  std::optional<double> lambda;

  friend bool operator==(const InstanceFile&, const InstanceFile&);
};

/// Parses and validates an instance document. Every violation is reported
/// in one SchemaError, each prefixed by its field path.
InstanceFile parse_instance(std::string_view text);

nlohmann::json instance_to_json(const InstanceFile& inst);

/// Canonical form: sorted keys, shortest round-trip numbers.
std::string serialize_instance(const InstanceFile& inst);

/// FNV-1a 64 of the canonical form, as 16 hex digits.
std::string instance_digest(const InstanceFile& inst);

struct GeneratorParams {
  Problem problem = Problem::LineDisks;
  std::uint64_t seed = 0;
  int n = 10;
  int k = 3;
  double alpha = 1.0;
  std::optional<double> lambda;
};

/// Points uniform in a fixed box around the host; weights uniform in 1..10.
/// Segment problems: segment (0,0)-(100,0), box [0,100] x [-20,20].
/// Circle: center (0,0), radius 50, box [-70,70]^2.
InstanceFile generate_instance(const GeneratorParams& params);

/// Decision value at lambda: the number of centers for the COFL problems,
/// the minimum covered weight for mofl (lambda replaces the instance's).
nlohmann::json run_decide(const InstanceFile& inst, double lambda);

/// Optimum with witness centers in world coordinates.
nlohmann::json run_solve(const InstanceFile& inst);

/// SVG of an instance with a solution document produced by run_solve.
std::string render_svg(const InstanceFile& inst, const nlohmann::json& solution);

/// Process exit code for an error kind: 2 input, 3 no solution, 4 internal.
int exit_code(ErrorKind kind);

}  // namespace dispersion
