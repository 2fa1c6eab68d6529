#include "qine/problem_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace qine {

ProblemFileError::ProblemFileError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct PendingConstraint {
  std::size_t start;  // offset of the expression text
};

class FileParser {
 public:
  explicit FileParser(std::string_view text) : text_(text) {}

  Problem parse(std::string name) {
    Problem p;
    p.name = std::move(name);
    std::vector<Interval> xs, ys;
    std::vector<PendingConstraint> pending;
    std::set<std::string, std::less<>> names;

    skip();
    while (pos_ < text_.size()) {
      const std::size_t stmt = pos_;
      const std::string kw = word();
      if (kw == "var" || kw == "param") {
        skip();
        const std::size_t at = pos_;
        const std::string id = word();
        if (id.empty()) fail("expected an identifier", at);
        if (id == "var" || id == "param" || id == "constraint" || id == "in" || is_function_name(id)) {
          fail("'" + id + "' is a reserved word", at);
        }
        if (!names.insert(id).second) fail("duplicate name '" + id + "'", at);
        skip();
        if (word() != "in") fail("expected 'in'", pos_);
        const Interval dom = interval();
        expect(';');
        (kw == "var" ? p.variable_names : p.parameter_names).push_back(id);
        (kw == "var" ? xs : ys).push_back(dom);
      } else if (kw == "constraint") {
        pending.push_back({pos_});
        const auto end = text_.find(';', pos_);
        if (end == std::string_view::npos) fail("unterminated constraint", stmt);
        pos_ = end + 1;
      } else if (kw.empty()) {
        fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
      } else {
        fail("unknown statement '" + kw + "'", stmt);
      }
      skip();
    }

    if (xs.empty()) fail("no variable declared", 0);
    if (pending.empty()) fail("no constraint declared", 0);
    p.variables = Box(std::move(xs));
    p.parameters = Box(std::move(ys));

    const SymbolTable symbols = p.symbols();
    for (const auto& c : pending) p.constraints.push_back(constraint(c.start, symbols));
    return p;
  }

 private:
  Expression constraint(std::size_t start, const SymbolTable& symbols) {
    PrefixParse parsed;
    try {
      parsed = parse_expression_prefix(text_, start, symbols);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at offset"));
      fail(msg, e.offset());
    }
    pos_ = parsed.end;
    skip();
    const std::size_t at = pos_;
    const std::string_view rel = text_.substr(pos_, 2);
    if (rel != "<=" && rel != ">=") fail("expected '<=' or '>='", at);
    pos_ += 2;
    const double rhs = number();
    expect(';');
    if (rel == "<=") return rhs == 0 ? parsed.expr : parsed.expr - Expression::constant(rhs);
    return Expression::constant(rhs) - parsed.expr;
  }

  Interval interval() {
    expect('[');
    const double lo = number();
    expect(',');
    const double hi = number();
    const std::size_t at = pos_;
    expect(']');
    if (!(lo <= hi)) fail("empty domain [" + std::to_string(lo) + "," + std::to_string(hi) + "]", at);
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail("domains must be bounded", at);
    return Interval(lo, hi);
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    double v = 0;
    const char* first = text_.data() + digits;
    const auto res = std::from_chars(first, text_.data() + pos_, v);
    if (digits == pos_ || res.ec != std::errc{} || res.ptr != text_.data() + pos_) fail("invalid number", start);
    return text_[start] == '-' ? -v : v;
  }

  std::string word() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  // Whitespace and comments.
  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '#' || text_.substr(pos_, 2) == "//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ProblemFileError(msg, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Problem parse_problem(std::string_view text, std::string name) {
  Problem p = FileParser(text).parse(std::move(name));
  p.validate();
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), std::filesystem::path(path).stem().string());
}

}  // namespace qine
