// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "valgeo/harness.hpp"
#include "valgeo/slicing.hpp"
#include "valgeo/valuations.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

using namespace valgeo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

FuzzConfig config(int trials, int n, std::uint64_t seed) {
  FuzzConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.n_min = n;
  cfg.n_max = n;
  return cfg;
}

void report_violations(Outcome& out, const std::vector<CounterexampleReport>& reports) {
  if (!reports.empty()) out.require(false, std::to_string(reports.size()) + " violations, first: " + reports.front().to_json().dump());
}

void suite_outcome(Outcome& out, const std::string& name, const FuzzConfig& cfg) {
  const SuiteReport r = run_suite(name, cfg);
  report_violations(out, r.violations);
  out.note << ' ' << name << ": " << r.checks << " checks";
}

/// Operators named in the valuation-property criterion.
std::vector<NamedExpr> valuation_operators() {
  std::vector<NamedExpr> ops;
  for (auto& op : standard_operators()) {
    if (op.name != "general_form") ops.push_back(std::move(op));
  }
  return ops;
}

Outcome criterion_valuation() {
  Outcome out;
  const auto start = Clock::now();
  long checks = 0;
  for (const auto& op : valuation_operators()) {
    report_violations(out, fuzz_valuation_identity(op.expr, config(200, 3, 101), op.name + "/n3"));
    report_violations(out, fuzz_valuation_identity(op.expr, config(50, 4, 102), op.name + "/n4"));
    checks += 250;
  }
  const double t = seconds_since(start);
  out.require(t <= 120, "runtime above 2 min");
  out.note << ' ' << valuation_operators().size() << " operators, " << checks << " instances, " << t << " s";
  return out;
}

Outcome criterion_local_euler() {
  Outcome out;
  // Hand fixture: T^2 with o as vertex: 1 - 2 + 1 = 0.
  const Polytope t2 = standard_simplex(2, 2);
  const FaceLattice& lat = face_lattice(t2);
  int origin_index = -1;
  for (std::size_t i = 0; i < t2.vertices().size(); ++i) {
    if (is_zero(t2.vertices()[i])) origin_index = static_cast<int>(i);
  }
  std::vector<long> by_dim(3, 0);
  for (const auto& f : lat.faces) {
    for (int v : f.vertex_indices) {
      if (v == origin_index) ++by_dim[static_cast<std::size_t>(f.dim)];
    }
  }
  out.require(by_dim == std::vector<long>{1, 2, 1}, "faces of T^2 through o");
  out.require(local_euler_sum(t2, zero_vector(2)) == 0, "T^2 local sum at o");
  out.note << " T^2 at o: " << by_dim[0] << "-" << by_dim[1] << "+" << by_dim[2] << "=" << local_euler_sum(t2, zero_vector(2))
           << ";";
  suite_outcome(out, "local_euler", config(100, 3, 303));
  return out;
}

Outcome criterion_closed_forms() {
  Outcome out;
  Scalar fact = 1;
  for (int n = 2; n <= 6; ++n) {
    fact *= n;
    out.require(volume(standard_simplex(n, n)) == 1 / fact, "V(T^" + std::to_string(n) + ")");
  }
  std::mt19937_64 rng(505);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 3;
    Vector x;
    long double expected = 1;
    for (int i = 0; i < n; ++i) {
      long num = 0;
      while (num == 0) num = std::uniform_int_distribution<long>(-12, 12)(rng);
      x.push_back(ratio(num, 4));
      const long double xi = static_cast<long double>(num) / 4;
      expected *= -std::expm1(-xi) / xi;
    }
    const Polytope cube = box(zero_vector(n), Vector(static_cast<std::size_t>(n), Scalar(1)));
    const long double got = laplace_transform(cube, x).approx();
    worst = std::max(worst, static_cast<double>(std::fabs(got - expected) / std::fabs(expected)));
  }
  out.require(worst <= 1e-12, "Laplace transform of the unit cube");
  const Value m = moment_transform(standard_simplex(2, 2), unit_vector(2, 0), WeightSpec::power(2));
  out.require(m.is_exact() && m.exact_value() == ratio(1, 12), "integral of y1^2 over T^2");
  out.note << " V(T^n)=1/n! for n=2..6; Laplace worst relative error " << worst << "; y1^2 over T^2 = " << m.to_string();
  return out;
}

Outcome criterion_covariance() {
  Outcome out;
  long checks = 0;
  for (const auto& op : standard_operators()) {
    report_violations(out, fuzz_covariance(op.expr, Group::SL, config(100, 3, 606), "sl/" + op.name));
    checks += 100;
    if (op.name == "supp" || op.name.rfind("euler", 0) == 0) {
      report_violations(out, fuzz_covariance(op.expr, Group::GLPlus, config(100, 3, 607), "glplus/" + op.name));
      checks += 100;
      // phi = 2 I, det 8.
      Matrix twice = identity_matrix(3);
      for (int i = 0; i < 3; ++i) twice[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      const LinearMap phi(twice);
      auto rng = trial_rng(608, 0);
      for (int k = 0; k < 20; ++k) {
        const Polytope p = random_polytope(rng, 3, 6, 4, k % 2 == 0);
        const Vector x = random_nonzero_vector(rng, 3, 3);
        const Value lhs = classified_evaluate(apply_linear(p, phi), x, op.expr);
        const Value rhs = classified_evaluate(p, phi.transpose_apply(x), op.expr);
        out.require(lhs.is_exact() && rhs.is_exact() && lhs.exact_value() == rhs.exact_value(),
                    "det 8 map for " + op.name);
        ++checks;
      }
    }
  }
  out.note << ' ' << checks << " exact checks";
  return out;
}

Outcome criterion_mc() {
  Outcome out;
  const auto start = Clock::now();
  FuzzConfig cfg = config(100, 3, 1010);
  cfg.mc_samples = 1000000;
  const SuiteReport r = run_suite("mc", cfg);
  const double t = seconds_since(start);
  report_violations(out, r.violations);
  out.require(t <= 300, "runtime above 5 min");
  out.note << ' ' << r.details.at("within_4_sigma").get<int>() << "/" << cfg.trials << " fixtures within 4 sigma, " << t
           << " s";
  return out;
}

template <class F>
bool run(int number, const std::string& title, F&& criterion) {
  Outcome out;
  try {
    out = criterion();
  } catch (const std::exception& ex) {
    out.ok = false;
    out.note << " [exception: " << ex.what() << "]";
  }
  std::cout << (out.ok ? "PASS" : "FAIL") << ' ' << number << ". " << title << ":" << out.note.str() << std::endl;
  return out.ok;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "valuation property", criterion_valuation);
  ok &= run(2, "Euler-type relation", [] {
    Outcome out;
    suite_outcome(out, "euler", config(100, 3, 202));
    return out;
  });
  ok &= run(3, "local Euler relation", criterion_local_euler);
  ok &= run(4, "Fubini identity", [] {
    Outcome out;
    suite_outcome(out, "fubini", config(50, 3, 404));
    return out;
  });
  ok &= run(5, "closed forms", criterion_closed_forms);
  ok &= run(6, "covariance", criterion_covariance);
  ok &= run(7, "homogeneity and log law", [] {
    Outcome out;
    suite_outcome(out, "homogeneity", config(100, 3, 707));
    return out;
  });
  ok &= run(8, "simplex dissection identity", [] {
    Outcome out;
    suite_outcome(out, "dissection", config(1, 3, 808));
    return out;
  });
  ok &= run(9, "cone-hull Euler relation", [] {
    Outcome out;
    suite_outcome(out, "eu4", config(100, 3, 909));
    return out;
  });
  ok &= run(10, "Monte-Carlo concordance", criterion_mc);
  return ok ? 0 : 1;
}
