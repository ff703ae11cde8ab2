#include "nilsson/cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "nilsson/error.hpp"
#include "nilsson/extract/analysis.hpp"
#include "nilsson/extract/fit.hpp"
#include "nilsson/gammakit/beta_integral.hpp"
#include "nilsson/gammakit/gamma_series.hpp"
#include "nilsson/multisum/gfunction.hpp"
#include "nilsson/multisum/term.hpp"
#include "nilsson/recurrence/formal.hpp"
#include "nilsson/version.hpp"

namespace nilsson::cli {

namespace {

struct Range {
  unsigned long lo = 0, hi = 0;
};

unsigned long parse_index(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UserError(what + ": \"" + text + "\" is not a natural number");
  try {
    return std::stoul(text);
  } catch (const std::exception&) {
    throw UserError(what + ": \"" + text + "\" is out of range");
  }
}

// "a..b" (inclusive generation range) or "a:b" (analysis window).
Range parse_range(const std::string& text, const std::string& sep, const std::string& what) {
  auto pos = text.find(sep);
  if (pos == std::string::npos) throw UserError(what + " must have the form a" + sep + "b, got \"" + text + "\"");
  Range r{parse_index(text.substr(0, pos), what), parse_index(text.substr(pos + sep.size()), what)};
  if (r.lo > r.hi) throw UserError(what + ": lower end " + std::to_string(r.lo) + " exceeds upper end " + std::to_string(r.hi));
  return r;
}

std::string range_str(const Range& r, const std::string& sep) { return std::to_string(r.lo) + sep + std::to_string(r.hi); }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open input file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& ex) {
    throw UserError("\"" + path + "\" is not valid JSON: " + ex.what());
  }
}

json meta(const std::string& command, long precision, const std::optional<std::string>& window) {
  json m = {{"tool", "nilsson"}, {"version", kVersion}, {"command", command}, {"precision", precision}};
  m["window"] = window ? json(*window) : json(nullptr);
  return m;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UserError("cannot write output file \"" + path + "\"");
  f << doc.dump(2) << "\n";
  if (!f) throw UserError("failed writing output file \"" + path + "\"");
}

void check_precision(long bits) {
  if (bits < kMinPrecision) throw UserError("--precision must be at least " + std::to_string(kMinPrecision) + " bits");
}

// Values document; exact strings when every value is rational, otherwise
// embedded complex literals next to the exact field coordinates.
json values_document(const std::vector<NumberFieldElement>& values, unsigned long n_min, long precision) {
  bool rational = std::all_of(values.begin(), values.end(), [](const auto& v) { return v.is_rational(); });
  json vals = json::array();
  json doc = {{"n_min", n_min}};
  if (rational) {
    for (const auto& v : values) vals.push_back(rational_to_json(v.to_rational()));
  } else {
    json exact = json::array();
    for (const auto& v : values) {
      vals.push_back(complex_to_json(nf_embed(v, v.field()->default_root(), precision)));
      exact.push_back(nf_to_json(v));
    }
    doc["exact"] = std::move(exact);
    doc["root"] = values.front().field()->default_root();
  }
  doc["values"] = std::move(vals);
  return doc;
}

json solution_json(const FormalSolution& s) {
  json j;
  j["lambda"] = complex_to_json(s.lambda);
  j["alpha"] = s.alpha_rational ? rational_to_json(*s.alpha_rational) : complex_to_json(s.alpha);
  j["log_degree"] = s.log_degree;
  json g = json::array();
  for (const auto& c : s.g.coefficients()) g.push_back(complex_to_json(c));
  j["g"] = std::move(g);
  if (s.exact) {
    json e;
    e["field"] = field_to_json(*s.exact->context.field);
    e["root"] = s.exact->context.root;
    e["lambda"] = exact_scalar_to_json(s.exact->lambda);
    e["alpha"] = exact_scalar_to_json(s.exact->alpha);
    json ge = json::array();
    for (const auto& c : s.exact->g.coefficients()) ge.push_back(exact_scalar_to_json(c));
    e["g"] = std::move(ge);
    j["exact"] = std::move(e);
  }
  return j;
}

// ---- subcommands -----------------------------------------------------------

struct AnalyzeOptions {
  std::string file, out, unroll, values_out;
  std::size_t order = 10;
  long precision = 256;
};

int analyze_recurrence(const AnalyzeOptions& o, std::ostream& out) {
  check_precision(o.precision);
  auto rec = parse_recurrence(read_text(o.file));
  std::optional<Range> range;
  if (!o.unroll.empty()) {
    range = parse_range(o.unroll, "..", "--unroll");
    if (o.values_out.empty()) throw UserError("--unroll needs --values-out");
  } else if (!o.values_out.empty()) {
    throw UserError("--values-out needs --unroll a..b");
  }

  auto sols = formal_solutions(rec, o.order, o.precision);
  json report;
  report["meta"] = meta("analyze-recurrence", o.precision, std::nullopt);
  report["meta"]["order"] = o.order;
  report["recurrence"] = recurrence_to_json(rec);
  report["characteristic_polynomial"] = characteristic_polynomial(rec).str("x");
  json sj = json::array();
  for (const auto& s : sols) sj.push_back(solution_json(s));
  report["solutions"] = std::move(sj);
  // All embeddings of any non-rational field so that branches can be matched.
  for (const auto& s : sols) {
    if (!s.exact || s.exact->context.field->is_rationals()) continue;
    json roots = json::array();
    for (const auto& z : s.exact->context.field->roots(o.precision)) roots.push_back(complex_to_json(z));
    report["embeddings"] = {{"field", field_to_json(*s.exact->context.field)}, {"roots", std::move(roots)}};
    break;
  }

  auto expansion = solutions_to_expansion(sols, o.precision);
  json doc = expansion_to_json(expansion);
  doc["meta"] = meta("analyze-recurrence", o.precision, std::nullopt);
  doc["meta"]["stokes"] = "unit placeholders: Stokes constants are not determined by the recurrence";
  if (o.out.empty()) {
    report["expansion"] = std::move(doc);
  } else {
    emit(doc, o.out, out);
  }

  if (range) {
    auto values = unroll(rec, range->hi);
    std::vector<NumberFieldElement> slice(values.begin() + static_cast<std::ptrdiff_t>(range->lo), values.end());
    json vdoc = values_document(slice, range->lo, o.precision);
    vdoc["meta"] = meta("analyze-recurrence", o.precision, range_str(*range, ".."));
    emit(vdoc, o.values_out, out);
    report["values_out"] = o.values_out;
  }
  emit(report, "", out);
  return kExitOk;
}

struct EvalOptions {
  std::string term, n, out;
  long precision = 256;
};

int eval_multisum(const EvalOptions& o, std::ostream& out) {
  check_precision(o.precision);
  auto names = builtin_term_names();
  bool builtin = std::find(names.begin(), names.end(), o.term) != names.end();
  BalancedTerm term = builtin ? builtin_term(o.term) : term_from_json(read_json(o.term));
  Range r = parse_range(o.n, "..", "--n");
  auto values = eval_multisum_range(term, static_cast<long>(r.lo), static_cast<long>(r.hi));
  json doc = values_document(values, r.lo, o.precision);
  doc["meta"] = meta("eval-multisum", o.precision, range_str(r, ".."));
  doc["term"] = builtin ? json(o.term) : term_to_json(term);
  emit(doc, o.out, out);
  return kExitOk;
}

struct FitOptions {
  std::string values, model, window, out;
  long precision = 0;  // 0: from the model document
};

int fit(const FitOptions& o, std::ostream& out) {
  if (o.precision != 0) check_precision(o.precision);
  json model_doc = read_json(o.model);
  // An explicit --precision wins over the document (exact lambdas are
  // embedded at the final precision).
  if (o.precision != 0 && model_doc.is_object()) model_doc["precision"] = o.precision;
  FitModel model = fit_model_from_json(model_doc, 256);
  if (!o.window.empty()) {
    Range w = parse_range(o.window, ":", "--window");
    model.lo = w.lo;
    model.hi = w.hi;
  }
  if (model.hi == 0) throw UserError("fit needs a window: pass --window lo:hi or set \"window\" in the model");
  auto data = sequence_from_json(read_json(o.values), model.precision_bits);
  auto result = fit_coefficients(data, model);
  auto expansion = fit_to_expansion(model, result);
  json doc = expansion_to_json(expansion);
  doc["meta"] = meta("fit", model.precision_bits, std::to_string(model.lo) + ":" + std::to_string(model.hi));
  doc["fit"] = fit_result_to_json(result);
  doc["model"] = fit_model_to_json(model);
  emit(doc, o.out, out);
  return kExitOk;
}

struct CheckOptions {
  std::string values, expansion, cuts, window, out;
  long precision = 256;
};

int check(const CheckOptions& o, std::ostream& out) {
  check_precision(o.precision);
  Range w = parse_range(o.window, ":", "--window");
  auto cuts = parse_omega_list(o.cuts);
  auto data = sequence_from_json(read_json(o.values), o.precision);
  auto any = expansion_from_json(read_json(o.expansion), o.precision);
  NumericExpansion e = std::visit(
      [&](const auto& x) -> NumericExpansion {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, NumericExpansion>) return x;
        else return expansion_to_numeric(x, o.precision);
      },
      any);
  auto report = check_expansion(data, e, cuts, w.lo, w.hi, o.precision);
  json doc = check_report_to_json(report);
  doc["meta"] = meta("check", o.precision, range_str(w, ":"));
  emit(doc, o.out, out);
  return kExitOk;
}

struct GammaOptions {
  std::string gamma;
  std::size_t order = 6;
};

int gamma_series(const GammaOptions& o, std::ostream& out) {
  Rational gamma = Rational::parse(o.gamma);
  auto s = gamma_ratio_series(gamma, o.order);
  json coeffs = json::array();
  for (const auto& c : s.coefficients) coeffs.push_back(rational_to_json(c));
  json doc = {{"gamma", rational_to_json(gamma)}, {"order", o.order}, {"coefficients", std::move(coeffs)}};
  doc["meta"] = meta("gamma-series", 0, std::nullopt);
  doc["meta"]["precision"] = "exact";
  emit(doc, "", out);
  return kExitOk;
}

struct BetaOptions {
  std::string gamma;
  unsigned beta = 0;
  unsigned long n = 0;
  bool quad = false;
  double tolerance = 1e-12;
  long precision = 128;
};

int beta_integral(const BetaOptions& o, std::ostream& out) {
  check_precision(o.precision);
  Rational gamma = Rational::parse(o.gamma);
  auto closed = beta_integral_closed(gamma, o.beta, o.n, o.precision);
  json doc = {{"gamma", rational_to_json(gamma)}, {"beta", o.beta}, {"n", o.n},
              {"value", closed.value.str(static_cast<std::size_t>(o.precision * 0.30103))}, {"method", closed.method}};
  if (o.quad) {
    auto q = beta_integral_quad(gamma, o.beta, o.n, o.tolerance);
    double scale = std::max(std::fabs(closed.value.to_double()), 1e-300);
    doc["quadrature"] = {{"value", q.value.str(20)},
                         {"error_estimate", q.error_estimate},
                         {"relative_difference", std::fabs((q.value - closed.value).to_double()) / scale}};
  }
  doc["meta"] = meta("beta-integral", o.precision, std::nullopt);
  emit(doc, "", out);
  return kExitOk;
}

struct DiagnoseOptions {
  std::string values, window;
  long precision = 128;
};

json growth_json(const GrowthEstimate& g) {
  return {{"r", g.r},           {"r_first", g.r_first},         {"r_second", g.r_second},
          {"root_max", g.root_max}, {"root_first", g.root_first}, {"root_second", g.root_second},
          {"spread", g.spread}, {"stable", g.stable},            {"trend", g.trend},
          {"note", g.note}};
}

int diagnose(const DiagnoseOptions& o, std::ostream& out) {
  check_precision(o.precision);
  auto data = sequence_from_json(read_json(o.values), o.precision);
  Range w;
  if (!o.window.empty()) {
    w = parse_range(o.window, ":", "--window");
  } else {
    // Default: the upper two thirds of the data, away from n = 0.
    unsigned long count = data.n_max() - data.n_min + 1;
    w = {std::max<unsigned long>(1, data.n_min + count / 3), data.n_max()};
  }
  json doc;
  doc["growth"] = growth_json(estimate_growth(data, w.lo, w.hi));
  if (data.is_exact() && data.n_min == 0 && w.lo >= 1) {
    auto g = gfunction_diagnostic(*data.exact, w.lo, w.hi);
    doc["gfunction"] = {{"size_C", g.size_C},
                        {"denom_C", g.denom_C},
                        {"size_C_halves", {g.size_C_first, g.size_C_second}},
                        {"denom_C_halves", {g.denom_C_first, g.denom_C_second}},
                        {"compatible", g.compatible},
                        {"note", g.note}};
  } else {
    doc["gfunction"] = {{"note", "skipped: needs exact rational values starting at n = 0"}};
  }
  doc["meta"] = meta("diagnose", o.precision, range_str(w, ":"));
  emit(doc, "", out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilsson-type asymptotic expansions: recurrences, multisums, fitting and checking", "nilsson"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  AnalyzeOptions ao;
  auto* an = app.add_subcommand("analyze-recurrence", "Formal solutions of a linear recurrence");
  an->add_option("file", ao.file, "Recurrence JSON file")->required();
  an->add_option("--order", ao.order, "Truncation order K of the 1/n series")->capture_default_str();
  an->add_option("--precision", ao.precision, "Working precision in bits")->capture_default_str();
  an->add_option("--out", ao.out, "Write the expansion document here");
  an->add_option("--unroll", ao.unroll, "Also unroll exact values for n in a..b");
  an->add_option("--values-out", ao.values_out, "Values document for --unroll");

  EvalOptions eo;
  auto* ev = app.add_subcommand("eval-multisum", "Exact values of a balanced multisum");
  ev->add_option("--term", eo.term, "Built-in name or term JSON file")->required();
  ev->add_option("--n", eo.n, "Range a..b (inclusive)")->required();
  ev->add_option("--out", eo.out, "Values document path (default: stdout)");
  ev->add_option("--precision", eo.precision, "Embedding precision for non-rational values")->capture_default_str();

  FitOptions fo;
  auto* fi = app.add_subcommand("fit", "Least-squares fit of a Nilsson model");
  fi->add_option("--values", fo.values, "Values document")->required();
  fi->add_option("--model", fo.model, "Model document")->required();
  fi->add_option("--window", fo.window, "Fit window lo:hi (overrides the model)");
  fi->add_option("--precision", fo.precision, "Working precision in bits (overrides the model)");
  fi->add_option("--out", fo.out, "Expansion document path (default: stdout)");

  CheckOptions co;
  auto* ch = app.add_subcommand("check", "Residual ladder of an expansion against data");
  ch->add_option("--values", co.values, "Values document")->required();
  ch->add_option("--expansion", co.expansion, "Expansion document")->required();
  ch->add_option("--cuts", co.cuts, "Cuts \"alpha,beta;alpha,beta;...\"")->required();
  ch->add_option("--window", co.window, "Window lo:hi")->required();
  ch->add_option("--precision", co.precision, "Working precision in bits")->capture_default_str();
  ch->add_option("--out", co.out, "Report path (default: stdout)");

  GammaOptions go;
  auto* ga = app.add_subcommand("gamma-series", "Exact coefficients of Gamma(n+1-gamma)/Gamma(n+1) n^gamma");
  ga->add_option("--gamma", go.gamma, "Rational gamma p/q")->required();
  ga->add_option("--order", go.order, "Number of coefficients after c_0")->capture_default_str();

  BetaOptions bo;
  auto* be = app.add_subcommand("beta-integral", "I_{gamma,beta}(n) in closed form, optionally by quadrature");
  be->add_option("--gamma", bo.gamma, "Rational gamma in (0, n+1)")->required();
  be->add_option("--beta", bo.beta, "Log power")->required();
  be->add_option("--n", bo.n, "Index n")->required();
  be->add_flag("--quad", bo.quad, "Also evaluate by quadrature");
  be->add_option("--tolerance", bo.tolerance, "Quadrature relative tolerance")->capture_default_str();
  be->add_option("--precision", bo.precision, "Closed-form precision in bits")->capture_default_str();

  DiagnoseOptions dop;
  auto* di = app.add_subcommand("diagnose", "Growth-rate and G-function diagnostics of a sequence");
  di->add_option("--values", dop.values, "Values document")->required();
  di->add_option("--window", dop.window, "Window lo:hi (default: upper two thirds)");
  di->add_option("--precision", dop.precision, "Working precision in bits")->capture_default_str();

  std::vector<const char*> argv = {"nilsson"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUser;
  }

  try {
    if (*an) return analyze_recurrence(ao, out);
    if (*ev) return eval_multisum(eo, out);
    if (*fi) return fit(fo, out);
    if (*ch) return check(co, out);
    if (*ga) return gamma_series(go, out);
    if (*be) return beta_integral(bo, out);
    if (*di) return diagnose(dop, out);
    err << app.help();
    return kExitUser;
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace nilsson::cli
