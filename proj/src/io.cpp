#include "dispersion/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "dispersion/circle_solver.hpp"
#include "dispersion/line_solver.hpp"
#include "dispersion/mofl_solver.hpp"

namespace dispersion {

using nlohmann::json;

namespace {

struct Issues {
  std::vector<std::string> list;
  void add(const std::string& path, const std::string& what) { list.push_back(path + ": " + what); }
};

std::optional<double> number_at(const json& obj, const std::string& key, const std::string& path, Issues& issues,
                                bool required) {
  if (!obj.contains(key)) {
    if (required) issues.add(path + key, "missing");
    return std::nullopt;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    issues.add(path + key, "must be a number");
    return std::nullopt;
  }
  double d = v.get<double>();
  if (!std::isfinite(d)) {
    issues.add(path + key, "must be finite");
    return std::nullopt;
  }
  return d;
}

std::optional<Point> pair_at(const json& obj, const std::string& key, const std::string& path, Issues& issues) {
  if (!obj.contains(key)) {
    issues.add(path + key, "missing");
    return std::nullopt;
  }
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    issues.add(path + key, "must be [x, y]");
    return std::nullopt;
  }
  return Point{v[0].get<double>(), v[1].get<double>()};
}

json xy(const Point& p) { return json::array({p.x, p.y}); }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

json envelope(const InstanceFile& inst, const char* solver, std::chrono::steady_clock::time_point start) {
  return json{{"instanceDigest", instance_digest(inst)}, {"solver", solver}, {"wallTimeMs", elapsed_ms(start)}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

const char* problem_tag(Problem problem) {
  switch (problem) {
    case Problem::LineSquares: return "cofl-line-sq";
    case Problem::LineDisks: return "cofl-line";
    case Problem::Circle: return "cofl-circ";
    case Problem::Mofl: return "mofl";
  }
  return "unknown";
}

std::optional<Problem> parse_problem(std::string_view tag) {
  for (Problem p : {Problem::LineSquares, Problem::LineDisks, Problem::Circle, Problem::Mofl})
    if (tag == problem_tag(p)) return p;
  return std::nullopt;
}

bool operator==(const InstanceFile& a, const InstanceFile& b) {
  return instance_to_json(a) == instance_to_json(b);
}

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("$: invalid JSON: ") + e.what());
  }
  Issues issues;
  InstanceFile inst;
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "$: must be an object");

  if (!doc.contains("problem") || !doc["problem"].is_string()) {
    issues.add("problem", "missing or not a string");
  } else if (auto p = parse_problem(doc["problem"].get<std::string>())) {
    inst.problem = *p;
  } else {
    issues.add("problem", "unknown tag '" + doc["problem"].get<std::string>() + "'");
  }

  if (inst.problem == Problem::Circle) {
    if (!doc.contains("circle") || !doc["circle"].is_object()) {
      issues.add("circle", "missing or not an object");
    } else {
      const json& c = doc["circle"];
      if (auto center = pair_at(c, "center", "circle.", issues)) inst.circle.center = *center;
      if (auto r = number_at(c, "radius", "circle.", issues, true)) {
        if (*r <= 0) issues.add("circle.radius", "must be positive");
        inst.circle.radius = *r;
      }
    }
  } else {
    if (!doc.contains("segment") || !doc["segment"].is_object()) {
      issues.add("segment", "missing or not an object");
    } else {
      const json& s = doc["segment"];
      if (auto p = pair_at(s, "p", "segment.", issues)) inst.segment.p = *p;
      if (auto q = pair_at(s, "q", "segment.", issues)) inst.segment.q = *q;
    }
  }

  if (!doc.contains("points") || !doc["points"].is_array()) {
    issues.add("points", "missing or not an array");
  } else {
    const json& pts = doc["points"];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = "points[" + std::to_string(i) + "].";
      if (!pts[i].is_object()) {
        issues.add("points[" + std::to_string(i) + "]", "must be an object");
        continue;
      }
      Point p;
      if (auto x = number_at(pts[i], "x", path, issues, true)) p.x = *x;
      if (auto y = number_at(pts[i], "y", path, issues, true)) p.y = *y;
      const bool mofl = inst.problem == Problem::Mofl;
      if (auto w = number_at(pts[i], "w", path, issues, mofl)) {
        if (*w <= 0) {
          issues.add(path + "w", "must be positive");
        } else if (mofl && (!pts[i]["w"].is_number_integer() && std::floor(*w) != *w)) {
          issues.add(path + "w", "must be an integer");
        } else {
          p.weight = *w;
        }
      }
      inst.points.push_back(p);
    }
  }

  if (!doc.contains("k")) {
    issues.add("k", "missing");
  } else if (!doc["k"].is_number_integer() || doc["k"].get<long long>() < 1 ||
             doc["k"].get<long long>() > 1'000'000) {
    issues.add("k", "must be an integer in [1, 1000000]");
  } else {
    inst.k = doc["k"].get<int>();
  }
  if (auto a = number_at(doc, "alpha", "", issues, false)) {
    if (*a <= 0) issues.add("alpha", "must be positive");
    inst.alpha = *a;
  }
  if (auto l = number_at(doc, "lambda", "", issues, inst.problem == Problem::Mofl)) {
    if (*l <= 0) issues.add("lambda", "must be positive");
    inst.lambda = *l;
  }

  if (!issues.list.empty()) {
    std::string msg;
    for (const auto& s : issues.list) msg += (msg.empty() ? "" : "; ") + s;
    throw Error(ErrorKind::SchemaError, msg);
  }
  return inst;
}

json instance_to_json(const InstanceFile& inst) {
  json doc;
  doc["problem"] = problem_tag(inst.problem);
  if (inst.problem == Problem::Circle) {
    doc["circle"] = {{"center", xy(inst.circle.center)}, {"radius", inst.circle.radius}};
  } else {
    doc["segment"] = {{"p", xy(inst.segment.p)}, {"q", xy(inst.segment.q)}};
  }
  json pts = json::array();
  for (const auto& p : inst.points) {
    json jp{{"x", p.x}, {"y", p.y}};
    if (p.weight) {
      double w = *p.weight;
      if (std::floor(w) == w && std::abs(w) < 9e15) jp["w"] = static_cast<long long>(w);
      else jp["w"] = w;
    }
    pts.push_back(jp);
  }
  doc["points"] = pts;
  doc["k"] = inst.k;
  doc["alpha"] = inst.alpha;
  if (inst.lambda) doc["lambda"] = *inst.lambda;
  return doc;
}

std::string serialize_instance(const InstanceFile& inst) { return instance_to_json(inst).dump(); }

std::string instance_digest(const InstanceFile& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InstanceFile generate_instance(const GeneratorParams& params) {
  if (params.n < 0) throw Error(ErrorKind::InvalidSize, "n must be nonnegative");
  if (params.k < 1) throw Error(ErrorKind::InvalidSize, "k must be at least 1");
  std::mt19937_64 rng(params.seed);
  auto uniform = [&](double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  InstanceFile inst;
  inst.problem = params.problem;
  inst.k = params.k;
  inst.alpha = params.alpha;
  inst.lambda = params.lambda;
  if (params.problem == Problem::Mofl && !inst.lambda) inst.lambda = 5.0;
  const bool circle = params.problem == Problem::Circle;
  if (circle) {
    inst.circle = {{0, 0}, 50};
  } else {
    inst.segment = {{0, 0}, {100, 0}};
  }
  for (int i = 0; i < params.n; ++i) {
    Point p;
    if (circle) {
      p.x = uniform(-70, 70);
      p.y = uniform(-70, 70);
    } else {
      p.x = uniform(0, 100);
      p.y = uniform(-20, 20);
    }
    std::uint64_t w = 1 + rng() % 10;
    if (params.problem == Problem::Mofl) p.weight = static_cast<double>(w);
    inst.points.push_back(p);
  }
  return inst;
}

json run_decide(const InstanceFile& inst, double lambda) {
  auto start = std::chrono::steady_clock::now();
  json out;
  const char* solver = "";
  switch (inst.problem) {
    case Problem::LineSquares:
      solver = "count_squares";
      out["count"] = count_squares(inst.points, inst.segment, lambda);
      break;
    case Problem::LineDisks:
      solver = "count_disks";
      out["count"] = count_disks(inst.points, inst.segment, lambda, inst.alpha);
      break;
    case Problem::Circle:
      solver = "count_circle";
      out["count"] = count_circle(inst.points, inst.circle, lambda, inst.alpha);
      break;
    case Problem::Mofl: {
      solver = "solve_mofl";
      MoflInstance m{inst.points, inst.segment, inst.k, lambda, inst.alpha};
      out["covered_weight"] = solve_mofl(m).covered_weight;
      break;
    }
  }
  out["lambda"] = lambda;
  out.update(envelope(inst, solver, start));
  return out;
}

json run_solve(const InstanceFile& inst) {
  auto start = std::chrono::steady_clock::now();
  json out;
  json centers = json::array();
  const char* solver = "";
  switch (inst.problem) {
    case Problem::LineSquares:
    case Problem::LineDisks: {
      const bool sq = inst.problem == Problem::LineSquares;
      solver = sq ? "solve_squares" : "solve_disks";
      LineSolution s = sq ? solve_squares(inst.points, inst.segment, inst.k)
                          : solve_disks(inst.points, inst.segment, inst.k, inst.alpha);
      SegmentFrame frame(inst.segment);
      for (double c : s.placement.centers) centers.push_back(xy(frame.to_world(c)));
      out["lambda_star"] = s.lambda;
      break;
    }
    case Problem::Circle: {
      solver = "solve_circle";
      CircleSolution s = solve_circle(inst.points, inst.circle, inst.k, inst.alpha);
      for (const auto& c : s.placement.centers) centers.push_back(xy(c));
      out["lambda_star"] = s.lambda;
      break;
    }
    case Problem::Mofl: {
      solver = "solve_mofl";
      MoflInstance m{inst.points, inst.segment, inst.k, inst.lambda.value_or(1.0), inst.alpha};
      MoflSolution s = solve_mofl(m);
      SegmentFrame frame(inst.segment);
      for (double c : s.centers) centers.push_back(xy(frame.to_world(c)));
      out["covered_weight"] = s.covered_weight;
      break;
    }
  }
  out["centers"] = centers;
  out.update(envelope(inst, solver, start));
  return out;
}

std::string render_svg(const InstanceFile& inst, const json& solution) {
  if (!solution.contains("centers") || !solution["centers"].is_array())
    throw Error(ErrorKind::InconsistentSolution, "solution has no centers");
  std::vector<Point> centers;
  for (const auto& c : solution["centers"]) {
    if (!c.is_array() || c.size() != 2) throw Error(ErrorKind::InconsistentSolution, "center must be [x, y]");
    centers.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  if (static_cast<int>(centers.size()) > inst.k)
    throw Error(ErrorKind::InconsistentSolution, "more centers than k");

  const bool mofl = inst.problem == Problem::Mofl;
  const bool squares = inst.problem == Problem::LineSquares;
  double lambda = mofl ? inst.lambda.value_or(1.0) : solution.value("lambda_star", 0.0);

  // Centers must lie on the host.
  for (const auto& c : centers) {
    double off;
    if (inst.problem == Problem::Circle) {
      off = std::abs(distance(c, inst.circle.center) - inst.circle.radius);
    } else {
      SegmentFrame frame(inst.segment);
      Point l = frame.to_local(c);
      off = std::max({std::abs(l.y), -l.x, l.x - frame.length(), 0.0});
    }
    if (off > 1e-6 * std::max(1.0, lambda + 1.0)) throw Error(ErrorKind::InconsistentSolution, "center off the host");
  }

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool first = true;
  auto grow = [&](double x, double y, double pad) {
    if (first) {
      minx = x - pad, maxx = x + pad, miny = y - pad, maxy = y + pad;
      first = false;
    }
    minx = std::min(minx, x - pad);
    maxx = std::max(maxx, x + pad);
    miny = std::min(miny, y - pad);
    maxy = std::max(maxy, y + pad);
  };
  if (inst.problem == Problem::Circle) {
    grow(inst.circle.center.x, inst.circle.center.y, inst.circle.radius);
  } else {
    grow(inst.segment.p.x, inst.segment.p.y, 0);
    grow(inst.segment.q.x, inst.segment.q.y, 0);
  }
  for (const auto& p : inst.points) grow(p.x, p.y, 0);
  double reach = squares ? lambda * std::sqrt(0.5) : lambda;
  for (const auto& c : centers) grow(c.x, c.y, reach);
  double w = maxx - minx, h = maxy - miny;
  double margin = 0.05 * std::max({w, h, 1.0});
  double unit = std::max({w, h, 1.0}) / 200.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(minx - margin) << ' '
      << fmt(-(maxy + margin)) << ' ' << fmt(w + 2 * margin) << ' ' << fmt(h + 2 * margin)
      << "\" width=\"800\" height=\"" << fmt(800 * (h + 2 * margin) / (w + 2 * margin)) << "\">\n";
  svg << "<g transform=\"scale(1,-1)\">\n";
  if (inst.problem == Problem::Circle) {
    svg << "<circle class=\"host\" cx=\"" << fmt(inst.circle.center.x) << "\" cy=\"" << fmt(inst.circle.center.y)
        << "\" r=\"" << fmt(inst.circle.radius) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(unit)
        << "\"/>\n";
  } else {
    svg << "<line class=\"host\" x1=\"" << fmt(inst.segment.p.x) << "\" y1=\"" << fmt(inst.segment.p.y) << "\" x2=\""
        << fmt(inst.segment.q.x) << "\" y2=\"" << fmt(inst.segment.q.y) << "\" stroke=\"black\" stroke-width=\""
        << fmt(unit) << "\"/>\n";
  }
  SegmentFrame frame(inst.segment);
  for (const auto& c : centers) {
    if (squares) {
      // Axis-aligned in the segment frame.
      double angle = std::atan2(inst.segment.q.y - inst.segment.p.y, inst.segment.q.x - inst.segment.p.x);
      svg << "<rect class=\"disk\" x=\"" << fmt(c.x - lambda / 2) << "\" y=\"" << fmt(c.y - lambda / 2)
          << "\" width=\"" << fmt(lambda) << "\" height=\"" << fmt(lambda) << "\" transform=\"rotate("
          << fmt(angle * 180.0 / kPi) << ' ' << fmt(c.x) << ' ' << fmt(c.y)
          << ")\" fill=\"steelblue\" fill-opacity=\"0.3\"/>\n";
    } else {
      svg << "<circle class=\"disk\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(lambda)
          << "\" fill=\"steelblue\" fill-opacity=\"0.3\"/>\n";
    }
    svg << "<circle class=\"center\" cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(unit)
        << "\" fill=\"navy\"/>\n";
  }
  for (const auto& p : inst.points) {
    bool covered = false;
    for (const auto& c : centers) {
      if (squares) {
        Point lp = frame.to_local(p), lc = frame.to_local(c);
        covered = covered || std::max(std::abs(lp.x - lc.x), std::abs(lp.y - lc.y)) < lambda / 2;
      } else {
        covered = covered || distance(p, c) < lambda;
      }
    }
    double r = 1.5 * unit * (mofl ? std::sqrt(p.weight.value_or(1.0)) : 1.0);
    svg << "<circle class=\"" << (covered ? "point covered" : "point") << "\" cx=\"" << fmt(p.x) << "\" cy=\""
        << fmt(p.y) << "\" r=\"" << fmt(r) << "\" fill=\"" << (covered ? "crimson" : "black") << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidGeometry:
    case ErrorKind::InvalidSize:
      return 2;
    case ErrorKind::Infeasible:
    case ErrorKind::Unbounded:
    case ErrorKind::NoFeasiblePath:
    case ErrorKind::NoFeasibleCandidate:
      return 3;
    default:
      return 4;
  }
}

}  // namespace dispersion
