#ifndef VALGEO_IO_HPP
#define VALGEO_IO_HPP

#include "valgeo/polytope.hpp"
#include "valgeo/valuations.hpp"
#include "valgeo/weight.hpp"

#include <json.hpp>

#include <string>

namespace valgeo {

using Json = nlohmann::json;

/// Rationals are written as "p/q" strings. On input, JSON numbers are
/// accepted too: integers exactly, and decimals through their shortest
/// decimal text, so -0.5 reads as -1/2.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"n": 3, "vertices": [["0","0","0"], ...]}; the vertex list is hulled,
/// so redundant points are allowed on input.
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

/// {"kind": "power", "p": 2}, {"kind": "abs_power", "p": -0.5},
/// {"kind": "signed_power", "q": "3/2", "side": "neg"}, {"kind": "exp_neg"},
/// {"kind": "log_abs"}, {"kind": "indicator", "a": "0", "b": "1"},
/// {"kind": "poly", "coeffs": ["1", "0", "3/2"]}, {"kind": "constant", "c": "2"},
/// {"kind": "table", "entries": [["0", "1"]], "fallback": "0"};
/// each optionally with "reflect": true.
Json weight_to_json(const WeightSpec& w);
WeightSpec weight_from_json(const Json& j);

/// {"density": <weight> | null, "atoms": [["t", "mass"], ...]}.
Json measure_to_json(const MeasureSpec& m);
MeasureSpec measure_from_json(const Json& j);

/// {"terms": [term, ...]} where a term is
///   {"kind": "supp" | "euler_minus" | "euler_plus" | "euler_all",
///    "weight": <weight>, "reflect_body": bool, "coeff": "c"},
///   {"kind": "measure", "measure": <measure>, "coeff": "c"}, or
///   {"kind": "cone_hull", "inner": <term>}.
/// A named form is also accepted and expanded:
///   {"form": "continuous", "zeta": w, "mu": m},
///   {"form": "regular", "zeta1": w, "zeta2": w, "mu": m},
///   {"form": "general", "zeta1", "zeta2", "mu", "zeta1_tilde", "zeta2_tilde", "mu_tilde"},
///   {"form": "continuous_general", "zeta", "mu", "zeta_tilde", "mu_tilde"},
///   {"form": "homogeneous", "q": q, "n": n, "c": [c1, c2, c3, c4]}.
Json expr_to_json(const ValuationExpr& e);
ValuationExpr expr_from_json(const Json& j);

/// Parses a JSON document given inline or, when the text names a readable
/// file (optionally prefixed with '@'), from that file.
Json load_json(const std::string& text_or_path);

}  // namespace valgeo

#endif  // VALGEO_IO_HPP
