#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dispersion/error.hpp"
#include "dispersion/io.hpp"

using namespace dispersion;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::SchemaError, "cannot write " + path);
  out << text;
}

Problem problem_or_throw(const std::string& tag) {
  auto p = parse_problem(tag);
  if (!p) throw Error(ErrorKind::SchemaError, "problem: unknown tag '" + tag + "'");
  return *p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obnoxious facility dispersion solvers"};
  app.require_subcommand(1);

  std::string instance_path, out_path, problem = "cofl-line";
  double lambda = 0.0, alpha = 1.0, eps = 0.0;
  std::uint64_t seed = 0;
  int n = 10, k = 3;

  app.add_option("--eps", eps, "Comparison tolerance (default 1e-9 or DISPERSION_EPS)");

  auto* decide = app.add_subcommand("decide", "Count centers placeable at a given radius");
  decide->add_option("--instance", instance_path, "Instance JSON file")->required();
  decide->add_option("--lambda", lambda, "Radius")->required();
  decide->add_option("--out", out_path, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Optimal radius (or minimum covered weight) with a witness");
  solve->add_option("--instance", instance_path, "Instance JSON file")->required();
  solve->add_option("--out", out_path, "Output file (default stdout)");

  auto* generate = app.add_subcommand("generate", "Seeded random instance");
  generate->add_option("--seed", seed, "PRNG seed");
  generate->add_option("--n", n, "Number of points");
  generate->add_option("--k", k, "Number of centers");
  generate->add_option("--alpha", alpha, "Separation coefficient");
  auto* lambda_opt = generate->add_option("--lambda", lambda, "Radius (mofl)");
  generate->add_option("--problem", problem, "cofl-line-sq | cofl-line | cofl-circ | mofl");
  generate->add_option("--out", out_path, "Output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "CSV timings over doubling n");
  bench->add_option("--seed", seed, "PRNG seed");
  bench->add_option("--n", n, "Largest n")->default_val(256);
  bench->add_option("--k", k, "Number of centers");
  bench->add_option("--alpha", alpha, "Separation coefficient");
  bench->add_option("--problem", problem, "cofl-line-sq | cofl-line | cofl-circ | mofl");

  auto* plot = app.add_subcommand("plot", "Solve and render an SVG");
  plot->add_option("--instance", instance_path, "Instance JSON file")->required();
  plot->add_option("--out", out_path, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eps > 0.0) set_tolerance(eps);
    if (*decide) {
      InstanceFile inst = parse_instance(read_file(instance_path));
      write_out(out_path, run_decide(inst, lambda).dump(2) + "\n");
    } else if (*solve) {
      InstanceFile inst = parse_instance(read_file(instance_path));
      write_out(out_path, run_solve(inst).dump(2) + "\n");
    } else if (*generate) {
      GeneratorParams params{problem_or_throw(problem), seed, n, k, alpha, std::nullopt};
      if (lambda_opt->count() > 0) params.lambda = lambda;
      json doc = instance_to_json(generate_instance(params));
      doc["generator"] = {{"name", "mt19937_64"}, {"seed", seed}};
      write_out(out_path, doc.dump(2) + "\n");
    } else if (*bench) {
      Problem p = problem_or_throw(problem);
      std::cout << "n,k,solver,wallTimeMs,result\n";
      for (int size = 8; size <= n; size *= 2) {
        InstanceFile inst = generate_instance({p, seed, size, k, alpha, std::nullopt});
        json r = run_solve(inst);
        double result = r.contains("lambda_star") ? r["lambda_star"].get<double>() : r["covered_weight"].get<double>();
        std::cout << size << ',' << k << ',' << r["solver"].get<std::string>() << ','
                  << r["wallTimeMs"].get<double>() << ',' << result << '\n';
      }
    } else if (*plot) {
      InstanceFile inst = parse_instance(read_file(instance_path));
      write_out(out_path, render_svg(inst, run_solve(inst)));
    }
  } catch (const Error& e) {
    json body{{"error", to_string(e.kind())}, {"message", e.what()}};
    std::cout << body.dump(2) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json body{{"error", "Internal"}, {"message", e.what()}};
    std::cout << body.dump(2) << "\n";
    return 4;
  }
  return 0;
}
