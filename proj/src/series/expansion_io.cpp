#include "nilsson/series/expansion_io.hpp"

namespace nilsson {

json exact_scalar_to_json(const NumberFieldElement& x) {
  if (x.field()->is_rationals()) return rational_to_json(x.to_rational());
  return nf_coords_to_json(x);
}

namespace {

template <class T, class F>
json common_to_json(const NilssonExpansion<T>& e, F&& scalar) {
  json out;
  json lambdas = json::array();
  for (const auto& l : e.lambdas) lambdas.push_back(scalar(l));
  out["lambdas"] = std::move(lambdas);
  json terms = json::array();
  for (const auto& t : e.terms) {
    json g = json::array();
    for (const auto& c : t.g.coefficients()) g.push_back(scalar(c));
    terms.push_back({{"lambda_index", t.lambda_index},
                     {"alpha", rational_to_json(t.alpha)},
                     {"beta", t.beta},
                     {"stokes", scalar(t.stokes)},
                     {"g", std::move(g)},
                     {"normalized", t.g.normalized()}});
  }
  out["terms"] = std::move(terms);
  out["d"] = e.d;
  json s = json::array();
  for (const auto& a : e.S) s.push_back(rational_to_json(a));
  out["S"] = std::move(s);
  if (e.r_hint) out["r_hint"] = *e.r_hint;
  return out;
}

template <class T, class F>
NilssonExpansion<T> common_from_json(const json& j, typename NilssonExpansion<T>::Context ctx, F&& scalar) {
  NilssonExpansion<T> e;
  e.context = std::move(ctx);
  if (!j.contains("lambdas") || !j.at("lambdas").is_array()) throw UserError("expansion needs a \"lambdas\" array");
  for (const auto& l : j.at("lambdas")) e.lambdas.push_back(scalar(l));
  if (!j.contains("terms") || !j.at("terms").is_array()) throw UserError("expansion needs a \"terms\" array");
  for (const auto& t : j.at("terms")) {
    if (!t.is_object()) throw UserError("expansion term must be an object");
    ExpansionTerm<T> term;
    term.lambda_index = t.at("lambda_index").get<std::size_t>();
    term.alpha = rational_from_json(t.at("alpha"));
    term.beta = t.value("beta", 0u);
    term.stokes = t.contains("stokes") ? scalar(t.at("stokes")) : scalar(json("1"));
    std::vector<T> g;
    for (const auto& c : t.at("g")) g.push_back(scalar(c));
    if (g.empty()) throw UserError("g-series must have at least one coefficient");
    bool normalized = t.value("normalized", ScalarTraits<T>::is_one(g.front()));
    term.g = TruncatedSeries<T>(std::move(g), normalized);
    e.terms.push_back(std::move(term));
  }
  if (j.contains("S")) {
    for (const auto& a : j.at("S")) e.S.push_back(rational_from_json(a));
    e.d = j.value("d", 0u);
  } else {
    std::tie(e.S, e.d) = implied_omega(e);
    if (j.contains("d")) e.d = std::max(e.d, j.at("d").get<unsigned>());
  }
  if (j.contains("r_hint")) e.r_hint = j.at("r_hint").get<double>();
  expansion_validate(e);
  return e;
}

}  // namespace

json expansion_to_json(const ExactExpansion& e) {
  json out = common_to_json(e, exact_scalar_to_json);
  out["mode"] = "exact";
  if (!e.context.field->is_rationals()) {
    out["minpoly"] = field_to_json(*e.context.field);
    out["root"] = e.context.root;
  }
  return out;
}

json expansion_to_json(const NumericExpansion& e) {
  json out = common_to_json(e, complex_to_json);
  out["mode"] = "numeric";
  return out;
}

json expansion_to_json(const AnyExpansion& e) {
  return std::visit([](const auto& x) { return expansion_to_json(x); }, e);
}

AnyExpansion expansion_from_json(const json& j, long default_precision) {
  try {
    if (!j.is_object()) throw UserError("expansion document must be a JSON object");
    std::string mode;
    if (j.contains("mode")) {
      mode = j.at("mode").get<std::string>();
    } else {
      bool numeric = j.contains("lambdas") && j.at("lambdas").is_array() && !j.at("lambdas").empty() &&
                     is_complex_literal(j.at("lambdas").front());
      mode = numeric ? "numeric" : "exact";
    }
    if (mode == "numeric") {
      return common_from_json<BigComplex>(j, NumericContext{},
                                          [&](const json& v) { return complex_from_json(v, default_precision); });
    }
    if (mode != "exact") throw UserError("expansion mode must be \"exact\" or \"numeric\", got \"" + mode + "\"");
    ExactContext ctx;
    if (j.contains("minpoly")) ctx.field = field_from_json(j.at("minpoly"));
    ctx.root = j.value("root", ctx.field->default_root());
    if (ctx.root >= ctx.field->degree()) throw UserError("embedding root index out of range");
    FieldPtr field = ctx.field;
    return common_from_json<NumberFieldElement>(j, ctx, [&](const json& v) { return nf_from_json(v, field); });
  } catch (const json::exception& ex) {
    throw UserError(std::string("malformed expansion document: ") + ex.what());
  }
}

}  // namespace nilsson
