#ifndef VALGEO_HARNESS_HPP
#define VALGEO_HARNESS_HPP

#include "valgeo/io.hpp"
#include "valgeo/polytope.hpp"
#include "valgeo/valuations.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace valgeo {

struct FuzzConfig {
  std::uint64_t seed = 1;
  int n_min = 3;
  int n_max = 3;
  int vertices_min = 4;
  int vertices_max = 8;
  long denominator = 4;  // coordinates are multiples of 1/denominator in [-1, 1]
  int trials = 100;
  bool exact_must_be_zero = true;  // exact paths tolerate no difference at all
  double tolerance = 1e-8;         // relative bound for floating-point paths
  bool shrink = true;
  long mc_samples = 1000000;  // samples per Monte-Carlo fixture
};

struct CounterexampleReport {
  std::string identity;
  std::uint64_t seed = 0;
  int trial = 0;
  Json inputs;
  std::string lhs;
  std::string rhs;
  double delta = 0;
  Json shrunk;  // null when shrinking was skipped or made no progress

  Json to_json() const;
};

/// Generator for trial `trial` of a run with the given seed: every trial is
/// replayable on its own, independent of the order in which trials run.
std::mt19937_64 trial_rng(std::uint64_t seed, int trial);

/// Convex hull of `count` random points with coordinates k/den in [-1, 1]
/// (at least enough of them to span R^n),
/// retried until full-dimensional. With contain_origin the origin is added
/// to the point set.
Polytope random_polytope(std::mt19937_64& rng, int n, int count, long den, bool contain_origin);
Vector random_nonzero_vector(std::mt19937_64& rng, int n, long den);
/// Hyperplane through a random interior point of a full-dimensional P.
Hyperplane random_cutting_plane(std::mt19937_64& rng, const Polytope& p, long den);
/// Product of `count` elementary shears with entries k/2, |k| <= 3.
LinearMap random_shear_product(std::mt19937_64& rng, int n, int count);
/// Shear product followed by a positive diagonal scaling (det != 1 in general).
LinearMap random_glplus(std::mt19937_64& rng, int n, int count);

/// Compares two sides. Exact values must coincide when both are exact and
/// exact_must_be_zero; otherwise |a - b| <= tol * max(1, |a|, |b|) plus the
/// reported error estimates. `delta` receives |a - b|.
bool sides_agree(const Value& a, const Value& b, const FuzzConfig& cfg, double& delta);

/// Greedy shrinker: drops vertices while the identity still fails, then
/// moves coordinates toward 0 and 1 and to smaller denominators.
/// `violates` must return true on the input.
Polytope shrink_polytope(const Polytope& p, const std::function<bool(const Polytope&)>& violates);

/// Z(P) + Z(P∩H) = Z(P∩H+) + Z(P∩H-) on random (P, H, x).
std::vector<CounterexampleReport> fuzz_valuation_identity(const ValuationExpr& z, const FuzzConfig& cfg,
                                                          const std::string& name = "valuation");

enum class Group { SL, GLPlus };

/// Z(φP)(x) = ZP(φ^t x) on random (P, φ, x). For GL+ maps the simple terms
/// carry the factor det φ (Jacobian), the other terms are weight 0.
std::vector<CounterexampleReport> fuzz_covariance(const ValuationExpr& z, Group group,
                                                  const FuzzConfig& cfg,
                                                  const std::string& name = "covariance");

struct MonteCarloEstimate {
  double estimate = 0;
  double stderr_ = 0;
};

/// Uniform rejection sampling of the integral of zeta(x·y) over P inside
/// its bounding box.
MonteCarloEstimate mc_oracle_moment(const Polytope& p, const Vector& x, const WeightSpec& zeta,
                                    long samples, std::uint64_t seed);

/// Probe points: vertices, edge midpoints, facet centroids, the vertex
/// centroid, and points outside P.
std::vector<Vector> local_euler_probes(const Polytope& p);

/// Checks the pointwise local Euler identity and the F^-/F^+ counts of
/// P - y at every probe y; true when all hold exactly.
bool exhaustive_local_euler(const Polytope& p, const std::vector<Vector>& probes);

/// Operators exercised by the identity suites.
struct NamedExpr {
  std::string name;
  ValuationExpr expr;
};
std::vector<NamedExpr> standard_operators();

struct DissectionReport {
  int checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// For s T^d in R^n and each lambda: the cut by H_lambda yields exactly
/// φ_λ sT^d, ψ_λ sT^d and φ_λ sT̂^{d-1}, and every operator satisfies the
/// dissection identity with the dilations λ^{1/n}, (1-λ)^{1/n} applied
/// through the exact dilation law.
DissectionReport dissection_suite(int n, int d, const Scalar& s, const std::vector<Scalar>& lambdas,
                                  const std::vector<NamedExpr>& operators,
                                  const std::vector<Vector>& directions);

/// s -> integral over sP of zeta(x·y) for polynomial zeta is a polynomial
/// of degree <= n + deg zeta: its finite difference of that order plus one
/// over s = 1, ..., n + deg zeta + 2 vanishes.
bool cauchy_polynomial_check(const Polytope& p, const Vector& x, const WeightSpec& zeta);

/// Worker count from VALGEO_THREADS (default: hardware concurrency).
int thread_count();
/// Runs body(i) for i in [0, count) on thread_count() workers.
void parallel_for(int count, const std::function<void(int)>& body);

struct SuiteReport {
  std::string suite;
  int trials = 0;
  long checks = 0;
  std::vector<CounterexampleReport> violations;
  double seconds = 0;
  Json details = Json::object();  // suite-specific statistics

  bool passed() const { return violations.empty(); }
  Json summary_json() const;
};

/// Names accepted by run_suite.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const FuzzConfig& cfg);

}  // namespace valgeo

#endif  // VALGEO_HARNESS_HPP
