// Paving report (text) and SVG rendering.
//
// Text format: header lines start with '#' and hold "key: value" pairs; every
// other line is one record
//
//   inner|boundary lo_1 hi_1 lo_2 hi_2 ...
//
// Bounds are printed in shortest round-trip form.  The only line that varies
// between identical runs is "# elapsed:".
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qine/solver.hpp"

namespace qine {

void write_report(std::ostream& os, const Problem& p, const SolverConfig& cfg, const Paving& paving);

struct ReportRecord {
  bool inner = false;
  Box box;
};

struct PavingReport {
  std::map<std::string, std::string> header;
  std::vector<ReportRecord> records;

  double inner_volume() const;
  double boundary_volume() const;
};

/// Throws std::runtime_error on a malformed report.
PavingReport read_report(std::istream& is);

/// One <rect> per box projected on axes (i, j), inner boxes light and
/// boundary boxes dark, viewBox equal to the initial domain rectangle.
/// Throws std::invalid_argument for problems with fewer than two variables
/// or invalid axes.
void write_svg(std::ostream& os, const Paving& paving, const Box& initial, std::size_t i, std::size_t j);
void emit_svg(const Paving& paving, const Box& initial, std::size_t i, std::size_t j, const std::string& path);

}  // namespace qine
