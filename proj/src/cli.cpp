#include "qine/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qine/problem_file.hpp"
#include "qine/report.hpp"
#include "qine/solver.hpp"

namespace qine::cli {

namespace {

struct SolveArgs {
  std::string file;
  std::string mode = "2b+";
  double eps = 1e-3;
  std::optional<double> ratio;
  std::string param_bisect = "on";
  std::optional<std::size_t> max_nodes;
  std::optional<double> time_limit;
  std::string out;
  std::string svg;
  std::string axes = "0,1";
  bool stats = false;
};

std::pair<std::size_t, std::size_t> parse_axes(const std::string& s) {
  std::size_t i = 0, j = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> i >> comma >> j) || comma != ',' || !in.eof()) {
    throw std::invalid_argument("--axes expects two indices 'i,j'");
  }
  return {i, j};
}

void print_stats(std::ostream& err, const Paving& paving) {
  const PavingStats& st = paving.stats;
  char line[256];
  std::snprintf(line, sizeof line,
                "nodes %zu  inner %zu (vol %.6g)  boundary %zu (vol %.6g)  ratio %.6f  status %s  time %.3fs\n",
                st.nodes_processed, paving.inner.size(), st.volume_inner, paving.boundary.size(), st.volume_boundary,
                classified_ratio(paving), to_string(st.stop), st.elapsed);
  err << line;
}

int solve_command(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  Problem problem = load_problem(a.file);

  SolverConfig cfg;
  cfg.mode = a.mode == "2b" ? Mode::hc4 : Mode::hc4_plus;
  cfg.epsilon = a.eps;
  cfg.stop_ratio = a.ratio;
  cfg.param_bisection = a.param_bisect == "on";
  cfg.max_nodes = a.max_nodes;
  cfg.time_limit = a.time_limit;

  std::optional<std::pair<std::size_t, std::size_t>> axes;
  if (!a.svg.empty()) {
    axes = parse_axes(a.axes);
    if (problem.variables.size() < 2) throw std::invalid_argument("--svg needs at least two variables");
  }

  const Paving paving = solve(problem, cfg);

  if (a.out.empty()) {
    write_report(out, problem, cfg, paving);
  } else {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write '" + a.out + "'");
    write_report(f, problem, cfg, paving);
  }
  if (axes) emit_svg(paving, problem.variables, axes->first, axes->second, a.svg);
  if (a.stats) print_stats(err, paving);

  const StopReason stop = paving.stats.stop;
  if (stop == StopReason::node_limit || stop == StopReason::time_limit) {
    err << "qine: stopped early (" << to_string(stop) << "); unexplored boxes reported as boundary\n";
    return kLimitStop;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inner and boundary approximation of universally quantified inequalities", "qine"};
  app.require_subcommand(1);

  SolveArgs a;
  auto* solve_cmd = app.add_subcommand("solve", "Pave the solution set of a problem file");
  solve_cmd->add_option("file", a.file, "Problem file")->required();
  solve_cmd->add_option("--mode", a.mode, "Contractor mode")->check(CLI::IsMember({"2b", "2b+"}));
  solve_cmd->add_option("--eps", a.eps, "Box width below which boxes go to the boundary")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--ratio", a.ratio, "Stop once this fraction of the domain is classified")
      ->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--param-bisect", a.param_bisect, "Parameter domain bisection")
      ->check(CLI::IsMember({"on", "off"}));
  solve_cmd->add_option("--max-nodes", a.max_nodes, "Node limit")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--time-limit", a.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", a.out, "Write the paving report here instead of stdout");
  auto* svg = solve_cmd->add_option("--svg", a.svg, "Write an SVG picture of the paving");
  solve_cmd->add_option("--axes", a.axes, "Variable indices drawn in the SVG, as i,j")->needs(svg);
  solve_cmd->add_flag("--stats", a.stats, "Print run statistics to stderr");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << (solve_cmd->parsed() ? solve_cmd->help() : app.help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qine: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*solve_cmd) return solve_command(a, out, err);
  } catch (const ProblemFileError& e) {
    err << a.file << ':' << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "qine: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qine::cli
