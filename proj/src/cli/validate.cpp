#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "kfp/asymptotics.hpp"
#include "kfp/cli.hpp"
#include "kfp/oracle.hpp"
#include "kfp/spectrum.hpp"

namespace kfp::cli {
namespace {

struct Sample {
  double a;
  double b;
  double t;
};

std::vector<Sample> draw(std::uint64_t seed, int cases, double t_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.1, 50.0);
  std::uniform_real_distribution<double> ub(0.1, 50.0);
  std::uniform_real_distribution<double> ut(0.0, t_max);
  std::bernoulli_distribution sign(0.5);
  std::vector<Sample> out;
  for (int i = 0; i < cases; ++i) {
    const double a = ua(rng);
    const double b = sign(rng) ? ub(rng) : -ub(rng);
    out.push_back({a, b, ut(rng)});
  }
  return out;
}

// Relative to the sum of the absolute monomials, so near-cancelling anchors do not inflate.
double rel(double got, double want, double monomials) {
  return std::abs(got - want) / std::max(std::abs(want), monomials);
}

}  // namespace

std::optional<double> resolve_tol(std::optional<double> flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("KFP_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return std::nullopt;
}

std::vector<SuiteResult> run_validation(std::uint64_t seed, int cases, std::optional<double> tol) {
  auto pick = [&](double fallback) { return tol.value_or(fallback); };
  std::vector<SuiteResult> out;

  {
    SuiteResult s{"norm", cases, 0.0, pick(1e-9)};
    for (const auto& x : draw(seed, cases, 10.0)) {
      const Params p(x.a, x.b);
      const double ref = oracle::operator_norm(oracle::expm(-x.t * build_matrix(p)));
      s.worst = std::max(s.worst, std::abs(norm_closed(p, x.t) - ref) / (1.0 + ref));
    }
    out.push_back(s);
  }
  {
    SuiteResult s{"decomposition", cases, 0.0, pick(1e-9)};
    for (const auto& x : draw(seed + 1, cases, 5.0)) {
      const Params p(x.a, x.b);
      const Matrix4 ref = oracle::expm(-x.t * build_matrix(p));
      s.worst = std::max(s.worst, max_abs(assemble(decomposition(p, x.t)) - ref));
    }
    out.push_back(s);
  }
  {
    // Ferrari roots against the closed form, and characteristic residuals.
    SuiteResult s{"spectrum", cases, 0.0, pick(1e-9)};
    for (const auto& x : draw(seed + 2, cases, 1.0)) {
      const Params p(x.a, x.b);
      const Spectrum sp = eigenvalues_closed_form(p);
      const auto roots = solve_quartic_ferrari(QuarticCoeffs::from_params(p), resolvent_root(p));
      const double scale = 1.0 + x.a + x.b * x.b;
      for (const Complex& z : sp) {
        double nearest = INFINITY;
        for (const Complex& r : roots) nearest = std::min(nearest, std::abs(r + 0.5 - z));
        s.worst = std::max(s.worst, nearest / (1.0 + std::abs(z)));
        s.worst = std::max(s.worst, std::abs(characteristic_poly(p, z)) / (scale * scale));
      }
    }
    out.push_back(s);
  }
  {
    // Identities relating A, c and the spectrum, plus printed series anchors.
    SuiteResult s{"asymptotics", cases, 0.0, pick(1e-11)};
    for (const auto& x : draw(seed + 3, cases, 1.0)) {
      const Params p(x.a, x.b);
      const LemmaResiduals lr = lemma_identities(p);
      for (const IdentityResidual& r : {lr.trace_form, lr.four_a, lr.lambda1_modulus})
        s.worst = std::max(s.worst, r.residual / std::max(r.scale, 1e-300));
      const SeriesCoefficients sc = tau_sigma(p, 3);
      const double a = x.a;
      const double b2 = x.b * x.b;
      s.worst = std::max({s.worst, rel(sc.tau[2], (1 - 4 * a) / 24, (1 + 4 * a) / 24),
                          rel(sc.sigma[2], (1 - a) / 3, (1 + a) / 3),
                          rel(sc.tau[3], (1 - 4 * a * (2 - 4 * a - b2)) / 720, (1 + 8 * a + 16 * a * a + 4 * a * b2) / 720),
                          rel(sc.sigma[3], (4 * a * a - 17 * a + 4 + a * b2) / 90, (4 * a * a + 17 * a + 4 + a * b2) / 90)});
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace kfp::cli
