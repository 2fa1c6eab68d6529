#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qine/contractor.hpp"
#include "qine/expr.hpp"
#include "qine/problem_file.hpp"
#include "qine/report.hpp"
#include "qine/solver.hpp"

namespace py = pybind11;
using namespace qine;

namespace {

SymbolTable table(const std::vector<std::string>& vars, const std::vector<std::string>& params) {
  SymbolTable t;
  for (std::size_t i = 0; i < vars.size(); ++i) t.emplace(vars[i], VarRef::var(i));
  for (std::size_t j = 0; j < params.size(); ++j) t.emplace(params[j], VarRef::param(j));
  return t;
}

Box box_from(const py::sequence& seq) {
  std::vector<Interval> dims;
  for (const auto& item : seq) {
    if (py::isinstance<Interval>(item)) {
      dims.push_back(item.cast<Interval>());
    } else {
      const auto pair = item.cast<std::pair<double, double>>();
      dims.emplace_back(pair.first, pair.second);
    }
  }
  return Box(std::move(dims));
}

}  // namespace

PYBIND11_MODULE(_qine, m) {
  m.doc() = "Interval branch and prune for universally quantified inequalities";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ProblemFileError>(m, "ProblemFileError", PyExc_ValueError);

  py::class_<Interval>(m, "Interval")
      .def(py::init<double>())
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_static("empty", &Interval::empty)
      .def_static("entire", &Interval::entire)
      .def_static("parse", &Interval::parse)
      .def_property_readonly("lo", &Interval::lo)
      .def_property_readonly("hi", &Interval::hi)
      .def_property_readonly("is_empty", &Interval::is_empty)
      .def_property_readonly("is_degenerate", &Interval::is_degenerate)
      .def("width", &Interval::width)
      .def("mid", &Interval::mid)
      .def("mag", &Interval::mag)
      .def("mig", &Interval::mig)
      .def("__contains__", [](const Interval& a, double v) { return a.contains(v); })
      .def("subset_of", &Interval::subset_of)
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def("sqrt", [](const Interval& a) { return sqrt(a); })
      .def("exp", [](const Interval& a) { return exp(a); })
      .def("log", [](const Interval& a) { return log(a); })
      .def("sin", [](const Interval& a) { return sin(a); })
      .def("cos", [](const Interval& a) { return cos(a); })
      .def("__pow__", [](const Interval& a, unsigned n) { return pow(a, n); })
      .def("__str__", &Interval::to_string)
      .def("__repr__", [](const Interval& a) { return "Interval(" + a.to_string() + ")"; });
  m.def("hull", py::overload_cast<const Interval&, const Interval&>(&hull));
  m.def("intersect", py::overload_cast<const Interval&, const Interval&>(&intersect));

  py::class_<Box>(m, "Box")
      .def(py::init(&box_from), py::arg("dims"))
      .def("__len__", &Box::size)
      .def("__getitem__",
           [](const Box& b, std::size_t i) {
             if (i >= b.size()) throw py::index_error();
             return b[i];
           })
      .def_property_readonly("is_empty", &Box::is_empty)
      .def("width", &Box::width)
      .def("widest_axis", &Box::widest_axis)
      .def("midpoint", &Box::midpoint)
      .def("volume", &Box::volume)
      .def("contains", [](const Box& b, const std::vector<double>& p) { return b.contains(p); })
      .def("subset_of", &Box::subset_of)
      .def("bisect", &Box::bisect)
      .def(py::self == py::self)
      .def("__str__", &Box::to_string)
      .def("__repr__", [](const Box& b) { return "Box(" + b.to_string() + ")"; });

  py::class_<Expression>(m, "Expression")
      .def("eval_interval", &eval_interval, py::arg("x"), py::arg("y"))
      .def(
          "eval_point",
          [](const Expression& e, const std::vector<double>& x, const std::vector<double>& y) {
            return eval_point(e, x, y);
          },
          py::arg("x"), py::arg("y"))
      .def("derivative_interval", &derivative_interval, py::arg("param"), py::arg("x"), py::arg("y"))
      .def_property_readonly("variable_arity", &Expression::variable_arity)
      .def_property_readonly("parameter_arity", &Expression::parameter_arity)
      .def(py::self == py::self)
      .def("__str__", [](const Expression& e) { return render(e); });
  m.def(
      "parse_expression",
      [](const std::string& text, const std::vector<std::string>& variables,
         const std::vector<std::string>& parameters) { return parse_expression(text, table(variables, parameters)); },
      py::arg("text"), py::arg("variables"), py::arg("parameters") = std::vector<std::string>{});

  m.def(
      "hc4_revise",
      [](const Expression& f, const std::string& relation, const Box& x, const Box& y) -> py::object {
        if (relation != "<=" && relation != ">=") throw py::value_error("relation must be '<=' or '>='");
        const auto r = hc4_revise({f, relation == "<=" ? Relation::le_zero : Relation::ge_zero}, x, y);
        if (r.empty) return py::none();
        return py::make_tuple(r.x, r.y);
      },
      py::arg("f"), py::arg("relation"), py::arg("x"), py::arg("y"),
      "Contracts (x, y) with 'f <= 0' or 'f >= 0'; returns None when no point can satisfy it.");

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("variable_names", &Problem::variable_names)
      .def_readonly("parameter_names", &Problem::parameter_names)
      .def_readonly("variables", &Problem::variables)
      .def_readonly("parameters", &Problem::parameters)
      .def_readonly("constraints", &Problem::constraints);
  m.def("parse_problem", &parse_problem, py::arg("text"), py::arg("name") = "problem");
  m.def("load_problem", &load_problem, py::arg("path"));

  py::enum_<Mode>(m, "Mode").value("HC4", Mode::hc4).value("HC4_PLUS", Mode::hc4_plus);
  py::enum_<StopReason>(m, "StopReason")
      .value("COMPLETED", StopReason::completed)
      .value("RATIO_REACHED", StopReason::ratio_reached)
      .value("NODE_LIMIT", StopReason::node_limit)
      .value("TIME_LIMIT", StopReason::time_limit);

  py::class_<PavingStats>(m, "PavingStats")
      .def_readonly("nodes_processed", &PavingStats::nodes_processed)
      .def_readonly("volume_inner", &PavingStats::volume_inner)
      .def_readonly("volume_boundary", &PavingStats::volume_boundary)
      .def_readonly("volume_rejected", &PavingStats::volume_rejected)
      .def_readonly("volume_initial", &PavingStats::volume_initial)
      .def_readonly("elapsed", &PavingStats::elapsed)
      .def_readonly("stop", &PavingStats::stop);

  py::class_<Paving>(m, "Paving")
      .def_readonly("inner", &Paving::inner)
      .def_readonly("boundary", &Paving::boundary)
      .def_readonly("stats", &Paving::stats);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &SolverConfig::epsilon)
      .def_readwrite("stop_ratio", &SolverConfig::stop_ratio)
      .def_readwrite("mode", &SolverConfig::mode)
      .def_readwrite("param_bisection", &SolverConfig::param_bisection)
      .def_readwrite("max_param_splits", &SolverConfig::max_param_splits)
      .def_readwrite("max_nodes", &SolverConfig::max_nodes)
      .def_readwrite("time_limit", &SolverConfig::time_limit)
      .def_readwrite("progress_interval", &SolverConfig::progress_interval)
      .def_readwrite("on_progress", &SolverConfig::on_progress);

  m.def("solve", &solve, py::arg("problem"), py::arg("config") = SolverConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("classified_ratio", &classified_ratio);
  m.def(
      "report",
      [](const Problem& p, const SolverConfig& cfg, const Paving& pv) {
        std::ostringstream os;
        write_report(os, p, cfg, pv);
        return os.str();
      },
      py::arg("problem"), py::arg("config"), py::arg("paving"));
  m.def(
      "svg",
      [](const Paving& pv, const Box& initial, std::size_t i, std::size_t j) {
        std::ostringstream os;
        write_svg(os, pv, initial, i, j);
        return os.str();
      },
      py::arg("paving"), py::arg("initial"), py::arg("i") = 0, py::arg("j") = 1);
}
