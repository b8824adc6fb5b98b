#ifndef VALGEO_VALUATIONS_HPP
#define VALGEO_VALUATIONS_HPP

#include "valgeo/polytope.hpp"
#include "valgeo/slicing.hpp"
#include "valgeo/value.hpp"
#include "valgeo/weight.hpp"

#include <functional>
#include <string>
#include <vector>

namespace valgeo {

/// zeta(h_P(x)), or zeta(h_{-P}(x)) when reflect_body is set. Zero on the
/// empty set.
Value supp_compose(const Polytope& p, const Vector& x, const WeightSpec& zeta,
                   bool reflect_body = false);

enum class FaceClass { Minus, Plus, All };

/// Sum over F in F^-(P), F^+(P) or F(P) (P itself included) of
/// (-1)^{dim F} zeta(h_F(x)); with reflect_body the sum runs over -P.
/// Faces are grouped by their exact height first, so zeta is evaluated once
/// per distinct height and only where the signed count is nonzero.
Value euler_op(const Polytope& p, const Vector& x, const WeightSpec& zeta, FaceClass which,
               bool reflect_body = false);

/// Signed face count sum_F (-1)^{dim F} V_0(x ∩ F) over all faces of P.
long local_euler_sum(const Polytope& p, const Vector& x);

// Derived bodies, sampled as functions of the direction x.

/// h_{M_p P}(x) = (integral over P of |x·y|^p)^{1/p}, p >= 1.
Value moment_body_support(const Polytope& p, const Vector& x, const Scalar& exponent);
/// ||x||_{M_p^* P} = (integral over P of |x·y|^p)^{1/p}, p > -1, p != 0.
Value polar_moment_gauge(const Polytope& p, const Vector& x, const Scalar& exponent);
/// log ||x||_{M_0^* P} = (1/V(P)) integral over P of log|x·y|; needs dim P = n.
Value l0_polar_moment_log_gauge(const Polytope& p, const Vector& x);
Value l0_polar_moment_gauge(const Polytope& p, const Vector& x);
/// Integral over P of e^{-x·y}; x = o is allowed and gives V(P).
Value laplace_transform(const Polytope& p, const Vector& x);
/// (h_P(x)^p + h_{-P}(x)^p)^{1/p}, p >= 1; requires o in P.
Value difference_body_support(const Polytope& p, const Vector& x, const Scalar& exponent);
/// ||x||_{IP}^{-1} = V_{n-1}(P ∩ x^⊥)/|x|. Exact: the |x| factor cancels
/// against the profile normalization. Flagged when the section hits a jump
/// of the profile (a facet of P lies in x^⊥).
Value intersection_body_gauge_inv(const Polytope& p, const Vector& x);

using DirectionFunction = std::function<double(const Vector&)>;

/// Support function of the L_p Minkowski sum: (h_1^p + h_2^p)^{1/p}.
DirectionFunction lp_minkowski_combine(DirectionFunction h1, DirectionFunction h2, double p);
/// Gauge of the L_q harmonic sum: (g_1^q + g_2^q)^{1/q}, q != 0.
DirectionFunction lq_harmonic_combine(DirectionFunction g1, DirectionFunction g2, double q);

// Closed valuation expressions.

enum class TermKind { SuppCompose, EulerMinus, EulerPlus, EulerAll, Measure };

/// coeff * (term evaluated on P, or on [P, o] when cone_hull is set).
struct Term {
  TermKind kind = TermKind::SuppCompose;
  WeightSpec weight;    // all kinds except Measure
  MeasureSpec measure;  // Measure
  bool reflect_body = false;
  bool cone_hull = false;
  Scalar coeff = 1;

  static Term supp(WeightSpec zeta, bool reflect_body = false);
  static Term euler(FaceClass which, WeightSpec zeta, bool reflect_body = false);
  static Term measure_term(MeasureSpec mu);
  Term on_cone_hull() const;
  Term scaled(const Scalar& c) const;

  /// Simple terms vanish on lower-dimensional polytopes and pick up the
  /// factor c^n under (P, x) -> (cP, x/c); the others are invariant.
  bool is_simple() const { return kind == TermKind::Measure; }
  void validate() const;
};

struct ValuationExpr {
  std::vector<Term> terms;

  ValuationExpr& add(Term t);
  void validate() const;
  bool is_exact() const;
  std::string describe() const;
};

/// zeta(h_P) + zeta(-h_{-P}) + M_mu.
ValuationExpr continuous_form(const WeightSpec& zeta, const MeasureSpec& mu);
/// zeta1(h_P) + zeta1^R(h_{-P}) + ⋄^-_{zeta2}(P) + ⋄^-_{zeta2^R}(-P) + M_mu.
ValuationExpr regular_form(const WeightSpec& zeta1, const WeightSpec& zeta2, const MeasureSpec& mu);
/// The general form on all polytopes: ⋄^+ and ⋄^- terms on P, -P, [P,o] and
/// -[P,o], plus M_mu(P) and M_{mu~}([P,o]).
ValuationExpr general_form(const WeightSpec& zeta1, const WeightSpec& zeta2, const MeasureSpec& mu,
                           const WeightSpec& zeta1_tilde, const WeightSpec& zeta2_tilde,
                           const MeasureSpec& mu_tilde);
/// zeta(h_P) + zeta(-h_{-P}) + M_mu(P) + zeta~(h_{[P,o]}) + zeta~(-h_{-[P,o]}) + M_{mu~}([P,o]).
ValuationExpr continuous_general_form(const WeightSpec& zeta, const MeasureSpec& mu,
                                      const WeightSpec& zeta_tilde, const MeasureSpec& mu_tilde);
/// c1 h_P^q + c2 h_{-P}^q + c3 ∫_{P ∩ {x·y>=0}} (x·y)^r + c4 ∫_{P ∩ {x·y<=0}} |x·y|^r,
/// with r = q - n: q-homogeneous in P for P containing o.
ValuationExpr homogeneous_form(const Scalar& q, int n, const Scalar& c1, const Scalar& c2,
                               const Scalar& c3, const Scalar& c4);

Value evaluate_term(const Polytope& p, const Vector& x, const Term& t);
Value classified_evaluate(const Polytope& p, const Vector& x, const ValuationExpr& expr);

/// Value of expr at (cP, x/c) for c > 0 with c^n = volume_factor, obtained
/// exactly from the values at (P, x): invariant terms are unchanged, simple
/// terms scale by c^n.
Value evaluate_dilated(const Polytope& p, const Vector& x, const ValuationExpr& expr,
                       const Scalar& volume_factor);

// Cone volume measure of a polytope L with o in its interior: one atom per
// facet, at the unit outer normal u_i, of mass V(conv(o, F_i)).

struct ConeVolumeAtom {
  Vector normal;  // outer facet normal (not normalized)
  Scalar offset;  // h_L(normal)
  Scalar mass;    // cone volume of the facet
};
std::vector<ConeVolumeAtom> cone_volume_measure(const Polytope& l);

/// Sum over the atoms of V_L of g(atom) * mass.
Value cone_volume_integral(const Polytope& l, const std::function<Value(const ConeVolumeAtom&)>& g);

}  // namespace valgeo

#endif  // VALGEO_VALUATIONS_HPP
