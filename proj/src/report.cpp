#include "qine/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qine {

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i];
  }
  return out;
}

double sum_volumes(const std::vector<Box>& boxes) {
  double v = 0.0;
  for (const auto& b : boxes) v += b.volume();
  return v;
}

void write_record(std::ostream& os, const char* label, const Box& b) {
  os << label;
  for (const auto& x : b) os << ' ' << fmt(x.lo()) << ' ' << fmt(x.hi());
  os << '\n';
}

double parse_double(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed number '" + s + "' in report");
  }
  return v;
}

}  // namespace

void write_report(std::ostream& os, const Problem& p, const SolverConfig& cfg, const Paving& paving) {
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.3f", paving.stats.elapsed);
  os << "# qine paving\n"
     << "# problem: " << p.name << '\n'
     << "# variables: " << join(p.variable_names) << '\n'
     << "# parameters: " << join(p.parameter_names) << '\n'
     << "# mode: " << to_string(cfg.mode) << '\n'
     << "# eps: " << fmt(cfg.epsilon) << '\n'
     << "# param-bisect: " << (cfg.param_bisection ? "on" : "off") << '\n'
     << "# stop-ratio: " << (cfg.stop_ratio ? fmt(*cfg.stop_ratio) : "none") << '\n'
     << "# max-nodes: " << (cfg.max_nodes ? std::to_string(*cfg.max_nodes) : "none") << '\n'
     << "# time-limit: " << (cfg.time_limit ? fmt(*cfg.time_limit) : "none") << '\n'
     << "# status: " << to_string(paving.stats.stop) << '\n'
     << "# ratio: " << fmt(classified_ratio(paving)) << '\n'
     << "# nodes: " << paving.stats.nodes_processed << '\n'
     << "# volume-initial: " << fmt(paving.stats.volume_initial) << '\n'
     << "# volume-inner: " << fmt(sum_volumes(paving.inner)) << '\n'
     << "# volume-boundary: " << fmt(sum_volumes(paving.boundary)) << '\n'
     << "# inner-boxes: " << paving.inner.size() << '\n'
     << "# boundary-boxes: " << paving.boundary.size() << '\n'
     << "# elapsed: " << elapsed << '\n';
  for (const auto& b : paving.inner) write_record(os, "inner", b);
  for (const auto& b : paving.boundary) write_record(os, "boundary", b);
}

double PavingReport::inner_volume() const {
  double v = 0.0;
  for (const auto& r : records) {
    if (r.inner) v += r.box.volume();
  }
  return v;
}

double PavingReport::boundary_volume() const {
  double v = 0.0;
  for (const auto& r : records) {
    if (!r.inner) v += r.box.volume();
  }
  return v;
}

PavingReport read_report(std::istream& is) {
  PavingReport rep;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      value.erase(0, value.find_first_not_of(' '));
      rep.header[key] = value;
      continue;
    }
    std::istringstream ls(line);
    std::string label;
    ls >> label;
    if (label != "inner" && label != "boundary") throw std::runtime_error("unknown record label '" + label + "'");
    std::vector<Interval> dims;
    std::string lo, hi;
    while (ls >> lo) {
      if (!(ls >> hi)) throw std::runtime_error("odd number of bounds in record");
      dims.emplace_back(parse_double(lo), parse_double(hi));
    }
    rep.records.push_back({label == "inner", Box(std::move(dims))});
  }
  return rep;
}

void write_svg(std::ostream& os, const Paving& paving, const Box& initial, std::size_t i, std::size_t j) {
  if (initial.size() < 2) throw std::invalid_argument("SVG output needs at least two variables");
  if (i == j || i >= initial.size() || j >= initial.size()) throw std::invalid_argument("invalid SVG axes");
  const Interval& u = initial[i];
  const Interval& v = initial[j];
  const double w = u.hi() - u.lo(), h = v.hi() - v.lo();
  // Projected boxes are drawn with the second axis pointing up.
  const auto rect = [&](const Box& b, const char* fill) {
    const double y = v.lo() + (v.hi() - b[j].hi());
    os << "  <rect x=\"" << fmt(b[i].lo()) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(b[i].hi() - b[i].lo())
       << "\" height=\"" << fmt(b[j].hi() - b[j].lo()) << "\" fill=\"" << fill << "\" vector-effect=\"non-scaling-stroke\"/>\n";
  };
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(u.lo()) << ' ' << fmt(v.lo()) << ' ' << fmt(w)
     << ' ' << fmt(h) << "\" width=\"600\" height=\"" << fmt(h > 0 && w > 0 ? 600 * h / w : 600)
     << "\" preserveAspectRatio=\"none\">\n"
     << "  <g stroke=\"#000000\" stroke-width=\"0.5\">\n";
  for (const auto& b : paving.inner) rect(b, "#d9d9d9");
  for (const auto& b : paving.boundary) rect(b, "#595959");
  os << "  </g>\n</svg>\n";
}

void emit_svg(const Paving& paving, const Box& initial, std::size_t i, std::size_t j, const std::string& path) {
  std::ostringstream buf;
  write_svg(buf, paving, initial, i, j);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << buf.str();
}

}  // namespace qine
