#include "valgeo/io.hpp"

#include <fstream>
#include <sstream>

namespace valgeo {

namespace {

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

Scalar optional_scalar(const Json& j, const char* key, const Scalar& fallback) {
  return j.contains(key) ? scalar_from_json(j.at(key)) : fallback;
}

const char* term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::SuppCompose:
      return "supp";
    case TermKind::EulerMinus:
      return "euler_minus";
    case TermKind::EulerPlus:
      return "euler_plus";
    case TermKind::EulerAll:
      return "euler_all";
    case TermKind::Measure:
      return "measure";
  }
  return "";
}

Json term_to_json(const Term& t) {
  Json j;
  j["kind"] = term_kind_name(t.kind);
  if (t.kind == TermKind::Measure) {
    j["measure"] = measure_to_json(t.measure);
  } else {
    j["weight"] = weight_to_json(t.weight);
    j["reflect_body"] = t.reflect_body;
  }
  j["coeff"] = scalar_to_json(t.coeff);
  if (t.cone_hull) return Json{{"kind", "cone_hull"}, {"inner", j}};
  return j;
}

Term term_from_json(const Json& j) {
  const std::string kind = require(j, "kind", "term").get<std::string>();
  if (kind == "cone_hull") return term_from_json(require(j, "inner", "cone_hull")).on_cone_hull();
  Term t;
  if (kind == "measure") {
    t = Term::measure_term(measure_from_json(require(j, "measure", "measure term")));
  } else {
    const WeightSpec w = weight_from_json(require(j, "weight", "term"));
    const bool reflect_body = j.value("reflect_body", false);
    if (kind == "supp") {
      t = Term::supp(w, reflect_body);
    } else if (kind == "euler_minus") {
      t = Term::euler(FaceClass::Minus, w, reflect_body);
    } else if (kind == "euler_plus") {
      t = Term::euler(FaceClass::Plus, w, reflect_body);
    } else if (kind == "euler_all") {
      t = Term::euler(FaceClass::All, w, reflect_body);
    } else {
      throw Error("term: unknown kind \"" + kind + "\"");
    }
  }
  t.coeff = optional_scalar(j, "coeff", 1);
  return t;
}

WeightSpec weight_or_zero(const Json& j, const char* key) {
  return j.contains(key) && !j.at(key).is_null() ? weight_from_json(j.at(key))
                                                 : WeightSpec::constant(0);
}

MeasureSpec measure_or_zero(const Json& j, const char* key) {
  return j.contains(key) && !j.at(key).is_null() ? measure_from_json(j.at(key)) : MeasureSpec{};
}

}  // namespace

Json scalar_to_json(const Scalar& s) { return to_string(s); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.dump(), 10);
  if (j.is_number_float()) return parse_scalar(j.dump());
  throw Error("expected a rational given as a string or number, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(scalar_to_json(c));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array of coordinates, got " + j.dump());
  Vector v;
  for (const auto& c : j) v.push_back(scalar_from_json(c));
  return v;
}

Json polytope_to_json(const Polytope& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(vector_to_json(v));
  return Json{{"n", p.ambient_dim()}, {"vertices", vs}};
}

Polytope polytope_from_json(const Json& j) {
  const int n = require(j, "n", "polytope").get<int>();
  if (n < 1 || n > kMaxDimension) throw Error("polytope: n must be between 1 and 6");
  std::vector<Vector> pts;
  for (const auto& v : require(j, "vertices", "polytope")) {
    pts.push_back(vector_from_json(v));
    if (static_cast<int>(pts.back().size()) != n) throw Error("polytope: vertex of wrong dimension");
  }
  return convex_hull_or_empty(pts, n);
}

Json weight_to_json(const WeightSpec& w) {
  Json j;
  switch (w.kind) {
    case WeightKind::Power:
      j = {{"kind", "power"}, {"p", scalar_to_json(w.exponent)}};
      break;
    case WeightKind::AbsPower:
      j = {{"kind", "abs_power"}, {"p", scalar_to_json(w.exponent)}};
      break;
    case WeightKind::SignedPower:
      j = {{"kind", "signed_power"},
           {"q", scalar_to_json(w.exponent)},
           {"side", w.side == Side::Positive ? "pos" : "neg"}};
      break;
    case WeightKind::ExpNeg:
      j = {{"kind", "exp_neg"}};
      break;
    case WeightKind::LogAbs:
      j = {{"kind", "log_abs"}};
      break;
    case WeightKind::Indicator:
      j = {{"kind", "indicator"}, {"a", scalar_to_json(w.lower)}, {"b", scalar_to_json(w.upper)}};
      break;
    case WeightKind::Polynomial:
      j = {{"kind", "poly"}, {"coeffs", vector_to_json(w.coeffs)}};
      break;
    case WeightKind::Constant:
      j = {{"kind", "constant"}, {"c", scalar_to_json(w.coeffs.at(0))}};
      break;
    case WeightKind::Tabulated: {
      Json entries = Json::array();
      for (const auto& [t, v] : w.table) entries.push_back({scalar_to_json(t), scalar_to_json(v)});
      j = {{"kind", "table"}, {"entries", entries}, {"fallback", scalar_to_json(w.fallback)}};
      break;
    }
  }
  if (w.reflect) j["reflect"] = true;
  return j;
}

WeightSpec weight_from_json(const Json& j) {
  const std::string kind = require(j, "kind", "weight").get<std::string>();
  WeightSpec w;
  if (kind == "power") {
    const Scalar p = scalar_from_json(require(j, "p", "power"));
    if (!is_integer(p) || p < 0) throw Error("power: p must be a non-negative integer");
    w = WeightSpec::power(static_cast<unsigned>(p.get_num().get_ui()));
  } else if (kind == "abs_power") {
    w = WeightSpec::abs_power(scalar_from_json(require(j, "p", "abs_power")));
  } else if (kind == "signed_power") {
    const std::string side = j.value("side", std::string("pos"));
    if (side != "pos" && side != "neg") throw Error("signed_power: side must be \"pos\" or \"neg\"");
    w = WeightSpec::signed_power(scalar_from_json(require(j, "q", "signed_power")),
                                 side == "pos" ? Side::Positive : Side::Negative);
  } else if (kind == "exp_neg") {
    w = WeightSpec::exp_neg();
  } else if (kind == "log_abs") {
    w = WeightSpec::log_abs();
  } else if (kind == "indicator") {
    w = WeightSpec::indicator(scalar_from_json(require(j, "a", "indicator")),
                              scalar_from_json(require(j, "b", "indicator")));
  } else if (kind == "poly") {
    w = WeightSpec::polynomial(vector_from_json(require(j, "coeffs", "poly")));
  } else if (kind == "constant") {
    w = WeightSpec::constant(scalar_from_json(require(j, "c", "constant")));
  } else if (kind == "table") {
    std::vector<std::pair<Scalar, Scalar>> entries;
    for (const auto& e : require(j, "entries", "table")) {
      if (!e.is_array() || e.size() != 2) throw Error("table: entries are [location, value] pairs");
      entries.emplace_back(scalar_from_json(e[0]), scalar_from_json(e[1]));
    }
    w = WeightSpec::tabulated(std::move(entries), optional_scalar(j, "fallback", 0));
  } else {
    throw Error("weight: unknown kind \"" + kind + "\"");
  }
  if (j.value("reflect", false)) w = w.reflected();
  return w;
}

Json measure_to_json(const MeasureSpec& m) {
  Json atoms = Json::array();
  for (const auto& [t, c] : m.atoms) atoms.push_back({scalar_to_json(t), scalar_to_json(c)});
  return Json{{"density", m.density ? weight_to_json(*m.density) : Json(nullptr)}, {"atoms", atoms}};
}

MeasureSpec measure_from_json(const Json& j) {
  if (!j.is_object()) throw Error("measure: expected an object");
  MeasureSpec m;
  if (j.contains("density") && !j.at("density").is_null()) m.density = weight_from_json(j.at("density"));
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) throw Error("measure: atoms are [location, mass] pairs");
      m.atoms.emplace_back(scalar_from_json(a[0]), scalar_from_json(a[1]));
    }
  }
  m.validate();
  return m;
}

Json expr_to_json(const ValuationExpr& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms) terms.push_back(term_to_json(t));
  return Json{{"terms", terms}};
}

ValuationExpr expr_from_json(const Json& j) {
  if (!j.is_object()) throw Error("expression: expected an object");
  ValuationExpr e;
  if (j.contains("form")) {
    const std::string form = j.at("form").get<std::string>();
    if (form == "continuous") {
      e = continuous_form(weight_or_zero(j, "zeta"), measure_or_zero(j, "mu"));
    } else if (form == "regular") {
      e = regular_form(weight_or_zero(j, "zeta1"), weight_or_zero(j, "zeta2"), measure_or_zero(j, "mu"));
    } else if (form == "general") {
      e = general_form(weight_or_zero(j, "zeta1"), weight_or_zero(j, "zeta2"), measure_or_zero(j, "mu"),
                       weight_or_zero(j, "zeta1_tilde"), weight_or_zero(j, "zeta2_tilde"),
                       measure_or_zero(j, "mu_tilde"));
    } else if (form == "continuous_general") {
      e = continuous_general_form(weight_or_zero(j, "zeta"), measure_or_zero(j, "mu"),
                                  weight_or_zero(j, "zeta_tilde"), measure_or_zero(j, "mu_tilde"));
    } else if (form == "homogeneous") {
      const Json& c = require(j, "c", "homogeneous");
      if (!c.is_array() || c.size() != 4) throw Error("homogeneous: c must list four constants");
      e = homogeneous_form(scalar_from_json(require(j, "q", "homogeneous")),
                           require(j, "n", "homogeneous").get<int>(), scalar_from_json(c[0]),
                           scalar_from_json(c[1]), scalar_from_json(c[2]), scalar_from_json(c[3]));
    } else {
      throw Error("expression: unknown form \"" + form + "\"");
    }
  }
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) e.add(term_from_json(t));
  }
  if (e.terms.empty()) throw Error("expression: no terms");
  e.validate();
  return e;
}

Json load_json(const std::string& text_or_path) {
  std::string path = text_or_path;
  if (!path.empty() && path.front() == '@') path.erase(0, 1);
  std::ifstream in(path);
  try {
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      return Json::parse(buf.str());
    }
    return Json::parse(text_or_path);
  } catch (const Json::exception& ex) {
    throw Error(std::string("invalid JSON: ") + ex.what());
  }
}

}  // namespace valgeo
