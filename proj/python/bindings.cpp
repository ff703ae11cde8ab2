// Python extension: the library operations with JSON documents as the
// exchange format (the same documents the command-line tool reads and writes).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nilsson/cli/cli.hpp"
#include "nilsson/error.hpp"
#include "nilsson/extract/analysis.hpp"
#include "nilsson/extract/fit.hpp"
#include "nilsson/gammakit/beta_integral.hpp"
#include "nilsson/gammakit/gamma_series.hpp"
#include "nilsson/gammakit/polygamma.hpp"
#include "nilsson/multisum/gfunction.hpp"
#include "nilsson/multisum/term.hpp"
#include "nilsson/recurrence/formal.hpp"
#include "nilsson/version.hpp"

namespace py = pybind11;
using namespace nilsson;

namespace {

std::string dump(const json& j) { return j.dump(); }

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw UserError(std::string(what) + " is not valid JSON: " + ex.what());
  }
}

BalancedTerm resolve_term(const std::string& term) {
  auto names = builtin_term_names();
  if (std::find(names.begin(), names.end(), term) != names.end()) return builtin_term(term);
  return term_from_json(parse(term, "term"));
}

json exact_values(const std::vector<NumberFieldElement>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.is_rational() ? rational_to_json(v.to_rational()) : nf_to_json(v));
  return out;
}

std::vector<std::string> gamma_series(const std::string& gamma, std::size_t order) {
  std::vector<std::string> out;
  for (const auto& c : gamma_ratio_series(Rational::parse(gamma), order).coefficients) out.push_back(c.str());
  return out;
}

py::dict beta_integral(const std::string& gamma, unsigned beta, unsigned long n, bool quad, long precision,
                       double tolerance) {
  Rational g = Rational::parse(gamma);
  auto v = quad ? beta_integral_quad(g, beta, n, tolerance) : beta_integral_closed(g, beta, n, precision);
  py::dict d;
  d["value"] = v.value.str(static_cast<std::size_t>(static_cast<double>(v.value.precision()) * 0.30103));
  d["float"] = v.value.to_double();
  d["error_estimate"] = v.error_estimate;
  d["method"] = v.method;
  return d;
}

py::dict check_balanced_py(const std::string& term) {
  auto r = check_balanced(resolve_term(term));
  py::dict d;
  d["balanced"] = r.balanced;
  d["linear_part_balanced"] = r.linear_part_balanced;
  d["defect"] = r.str();
  return d;
}

std::string eval_multisum_py(const std::string& term, long n0, long n1) {
  return dump(exact_values(eval_multisum_range(resolve_term(term), n0, n1)));
}

std::string unroll_py(const std::string& recurrence, std::size_t N) {
  return dump(exact_values(unroll(parse_recurrence(recurrence), N)));
}

std::string solutions_py(const std::string& recurrence, std::size_t K, long precision) {
  auto rec = parse_recurrence(recurrence);
  json out = json::array();
  for (const auto& s : formal_solutions(rec, K, precision)) {
    json j;
    j["lambda"] = complex_to_json(s.lambda);
    j["alpha"] = s.alpha_rational ? rational_to_json(*s.alpha_rational) : complex_to_json(s.alpha);
    json g = json::array();
    for (const auto& c : s.g.coefficients()) g.push_back(complex_to_json(c));
    j["g"] = std::move(g);
    if (s.exact) {
      j["exact"] = {{"field", field_to_json(*s.exact->context.field)},
                    {"root", s.exact->context.root},
                    {"lambda", exact_scalar_to_json(s.exact->lambda)}};
      json ge = json::array();
      for (const auto& c : s.exact->g.coefficients()) ge.push_back(exact_scalar_to_json(c));
      j["exact"]["g"] = std::move(ge);
    }
    out.push_back(std::move(j));
  }
  return dump(out);
}

std::string fit_py(const std::string& values, const std::string& model, long precision) {
  json m = parse(model, "model");
  if (precision > 0 && m.is_object()) m["precision"] = precision;
  FitModel fm = fit_model_from_json(m, 256);
  auto data = sequence_from_json(parse(values, "values"), fm.precision_bits);
  auto result = fit_coefficients(data, fm);
  json doc = expansion_to_json(fit_to_expansion(fm, result));
  doc["fit"] = fit_result_to_json(result);
  return dump(doc);
}

std::string check_py(const std::string& values, const std::string& expansion, const std::string& cuts,
                     unsigned long lo, unsigned long hi, long precision) {
  auto data = sequence_from_json(parse(values, "values"), precision);
  auto any = expansion_from_json(parse(expansion, "expansion"), precision);
  NumericExpansion e = std::visit(
      [&](const auto& x) -> NumericExpansion {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, NumericExpansion>) return x;
        else return expansion_to_numeric(x, precision);
      },
      any);
  return dump(check_report_to_json(check_expansion(data, e, parse_omega_list(cuts), lo, hi, precision)));
}

py::dict growth_py(const std::string& values, unsigned long lo, unsigned long hi) {
  auto g = estimate_growth(sequence_from_json(parse(values, "values"), 128), lo, hi);
  py::dict d;
  d["r"] = g.r;
  d["r_first"] = g.r_first;
  d["r_second"] = g.r_second;
  d["root_max"] = g.root_max;
  d["spread"] = g.spread;
  d["stable"] = g.stable;
  d["trend"] = g.trend;
  d["note"] = g.note;
  return d;
}

int omega_cmp_py(const std::string& a, const std::string& b) {
  auto c = omega_cmp(OmegaIndex::parse(a), OmegaIndex::parse(b));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nilsson-type asymptotic expansions (compiled core)";
  m.attr("__version__") = kVersion;

  auto user_error = py::register_exception<UserError>(m, "UserError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  (void)user_error;

  m.def("gamma_series", &gamma_series, py::arg("gamma"), py::arg("order"),
        "Exact coefficients c_0..c_order of Gamma(n+1-gamma)/Gamma(n+1) n^gamma, as rational strings.");
  m.def("p_beta_latex", [](unsigned beta) { return p_beta_polynomial(beta).latex(); }, py::arg("beta"),
        "Polygamma polynomial p_beta(gamma, n) in LaTeX.");
  m.def("polygamma", [](unsigned k, const std::string& x, long prec) { return polygamma(k, Rational::parse(x), prec).str(); },
        py::arg("k"), py::arg("x"), py::arg("precision") = 128);
  m.def("beta_integral", &beta_integral, py::arg("gamma"), py::arg("beta"), py::arg("n"), py::arg("quad") = false,
        py::arg("precision") = 128, py::arg("tolerance") = 1e-12);
  m.def("check_balanced", &check_balanced_py, py::arg("term"));
  m.def("eval_multisum", &eval_multisum_py, py::arg("term"), py::arg("n0"), py::arg("n1"),
        "Exact values a_n0..a_n1 as a JSON array.");
  m.def("unroll", &unroll_py, py::arg("recurrence"), py::arg("N"));
  m.def("formal_solutions", &solutions_py, py::arg("recurrence"), py::arg("order") = 10, py::arg("precision") = 256);
  m.def("fit", &fit_py, py::arg("values"), py::arg("model"), py::arg("precision") = 0);
  m.def("check", &check_py, py::arg("values"), py::arg("expansion"), py::arg("cuts"), py::arg("lo"), py::arg("hi"),
        py::arg("precision") = 256);
  m.def("estimate_growth", &growth_py, py::arg("values"), py::arg("lo"), py::arg("hi"));
  m.def("omega_cmp", &omega_cmp_py, py::arg("a"), py::arg("b"));
  m.def("run_cli", &run_cli, py::arg("args"), "Runs one command-line invocation; returns (exit code, stdout, stderr).");
}
