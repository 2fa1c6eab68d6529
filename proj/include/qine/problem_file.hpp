// Problem file syntax:
//
//   file     := stmt+
//   stmt     := ("var" | "param") ident "in" interval ";"
//             | "constraint" expr ("<=" | ">=") number ";"
//   interval := "[" number "," number "]"
//
// "f <= c" becomes f - c <= 0 (or f itself when c is 0) and "f >= c"
// becomes c - f <= 0.  Comments run from '#' or "//" to the end of the line.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qine/solver.hpp"

namespace qine {

class ProblemFileError : public std::runtime_error {
 public:
  ProblemFileError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Problem parse_problem(std::string_view text, std::string name = "problem");

/// Reads and parses a file; the problem is named after the file stem.
/// Throws std::runtime_error when the file cannot be read.
Problem load_problem(const std::string& path);

}  // namespace qine
