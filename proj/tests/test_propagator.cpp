#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kfp/asymptotics.hpp"
#include "kfp/oracle.hpp"
#include "kfp/propagator.hpp"
#include "kfp/spectrum.hpp"
#include "oracles.hpp"

using namespace kfp;
using doctest::Approx;

namespace {

double oracle_norm(const Params& p, double t) { return oracle::operator_norm(oracle::expm(-t * build_matrix(p))); }

Matrix4 oracle_exp(const Params& p, double t) { return oracle::expm(-t * build_matrix(p)); }

}  // namespace

TEST_CASE("coefficients at t=0") {
  const PropagatorCoefficients c = coefficients(Params(1, 1), 0.0);
  CHECK(std::abs(c.sh) == 0.0);
  CHECK(std::abs(c.ch - 1.0) < 1e-15);
  CHECK(std::abs(c.l) == 0.0);
  CHECK(c.t == 0.0);
}

TEST_CASE("coefficients: l and o from x1, x2 at a=1, b=1, t=1") {
  const Params p(1, 1);
  const PropagatorCoefficients c = coefficients(p, 1.0);
  const Spectrum s = eigenvalues_closed_form(p);
  CHECK(std::abs(c.l - (s[0] * c.x1 + s[1] * c.x2)) < 1e-12);
  CHECK(std::abs(c.o - (c.x1 + c.x2)) < 1e-12);
  CHECK(std::abs(c.ch + c.sh - std::exp(-s[0])) < 1e-14);
}

TEST_CASE("x1, x2 are minus the Lagrange product coefficients") {
  // -l2 e^{-t l1}/(2iabc) = -e^{-t l1}/prod_{k != 1}(l1 - l_k); the sign carries
  // through l, o and the six coefficients, which the oracle tests pin down.
  for (double b : {3.0, -3.0}) {
    const Params p(2, b);
    const Spectrum s = eigenvalues_closed_form(p);
    const double t = 0.8;
    const Complex x1 = std::exp(-t * s[0]) / ((s[0] - s[1]) * (s[0] - s[2]) * (s[0] - s[3]));
    const Complex x2 = std::exp(-t * s[1]) / ((s[1] - s[0]) * (s[1] - s[2]) * (s[1] - s[3]));
    const PropagatorCoefficients c = coefficients(p, t);
    CHECK(std::abs(c.x1 + x1) < 1e-13);
    CHECK(std::abs(c.x2 + x2) < 1e-13);
  }
}

TEST_CASE("|S|^2 at a=8, b=12, t=2") {
  const Params p(8, 12);
  const AuxQuantities x = compute_aux(p);
  const double t = 2.0;
  const double want = std::exp(-t) * (std::cosh(x.c1 * t) - std::cos(x.c2 * t)) / 2;
  CHECK(std::norm(coefficients(p, t).sh) == Approx(want).epsilon(1e-12));
}

TEST_CASE("coefficients preconditions") {
  CHECK_THROWS_AS(coefficients(Params(1, 0), 1.0), DomainError);
  CHECK_THROWS_AS(coefficients(Params(1, 1), -1.0), DomainError);
  CHECK_THROWS_AS(decomposition(Params(1, 0), 1.0), DomainError);
}

TEST_CASE("decomposition examples") {
  CHECK(max_abs(assemble(decomposition(Params(1, 1), 0.0)) - Matrix4::identity()) < 1e-12);
  CHECK(max_abs(assemble(decomposition(Params(1, 1), 0.7)) - oracle_exp(Params(1, 1), 0.7)) < 1e-10);
  CHECK(max_abs(assemble(decomposition(Params(2, 3), 0.5)) - oracle_exp(Params(2, 3), 0.5)) < 1e-10);
  const ExpDecomposition d = decomposition(Params(14, 5), 1.0);
  const PropagatorCoefficients c = coefficients(Params(14, 5), 1.0);
  REQUIRE(c.l.real() != 0.0);
  CHECK(d.d / d.e == Approx(-c.l.imag() / c.l.real()).epsilon(1e-12));
}

TEST_CASE("assemble picks basis matrices") {
  ExpDecomposition only_g;
  only_g.g = 1;
  CHECK(assemble(only_g) == basis_matrix(BasisTag::Hvv).entries);
  ExpDecomposition only_k;
  only_k.k = 1;
  CHECK(assemble(only_k) == Matrix4::identity());
  CHECK(basis_matrix(BasisTag::Hxx).entries + basis_matrix(BasisTag::Hvv).entries == Matrix4::identity());
}

TEST_CASE("basis entries are in {-1, 0, 1} and K = [J, H_vv]") {
  for (BasisTag tag : kAllBasisTags)
    for (double x : basis_matrix(tag).entries.data) CHECK((x == -1.0 || x == 0.0 || x == 1.0));
  const Matrix4 j = basis_matrix(BasisTag::J).entries;
  const Matrix4 h = basis_matrix(BasisTag::Hvv).entries;
  CHECK(j * h - h * j == basis_matrix(BasisTag::K).entries);
  CHECK(basis_name(BasisTag::KJ) == "K_J");
}

TEST_CASE("norm factors at t=0") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {8.0, 12.0}, {0.2, 0.0}, {24.0, 0.0}}) {
    const NormFactors f = norm_factors(Params(a, b), 0.0);
    CHECK(f.t_factor == Approx(f.abs_a).epsilon(1e-15));
    CHECK(f.s_factor == 0.0);
  }
  CHECK_THROWS_AS(norm_factors(Params(0.25, 0), 1.0), DomainError);
}

TEST_CASE("S at a=8, b=12, t=1 matches the P1..P4 route") {
  const Params p(8, 12);
  const double t = 1.0;
  const NormFactors f = norm_factors(p, t);
  CHECK(f.s_factor >= 0.0);
  // ||e^{-tM}||^2 = e^{-t}(T + sqrt S)/|A|  =>  S = (|A| e^t n^2 - T)^2
  const double n = testing_oracles::norm_p1_p4(8, 12, t);
  const double s_route = std::pow(f.abs_a * std::exp(t) * n * n - f.t_factor, 2);
  CHECK(f.s_factor == Approx(s_route).epsilon(1e-10));
}

TEST_CASE("periodic return at a=24, b=0") {
  const double t = 4 * std::numbers::pi / std::sqrt(95.0);
  const NormFactors f = norm_factors(Params(24, 0), t);
  CHECK(f.t_factor == Approx(f.abs_a).epsilon(1e-12));
  CHECK(std::abs(f.s_factor) <= 1e-9 * f.abs_a * f.abs_a);
}

TEST_CASE("norm_closed examples") {
  CHECK(norm_closed(Params(3, 4), 0.0) == 1.0);
  CHECK(norm_closed(Params(1, 1), 1.0) == Approx(oracle_norm(Params(1, 1), 1.0)).epsilon(1e-9));
  for (double t : {0.5, 1.0, 2.0}) {
    // Decay floor at the true abscissa (0.2210337, not the tabulated 0.221337).
    CHECK(norm_closed(Params(14, 5), t) >= std::exp(-spectral_abscissa(Params(14, 5)) * t));
    CHECK(norm_closed(Params(14, 5), t) >= std::exp(-0.221337 * t));
  }
  CHECK_THROWS_AS(norm_closed(Params(0.25, 0), 1.0), DomainError);
}

TEST_CASE("norm_closed at b=0 with |A| > 0 agrees with the oracle") {
  for (double a : {0.1, 1.0, 24.0})
    for (double t : {0.3, 2.0, 7.0}) CHECK(norm_closed(Params(a, 0), t) == Approx(oracle_norm(Params(a, 0), t)).epsilon(1e-9));
}

TEST_CASE("small-t switch is continuous") {
  const Params p(8, 12);
  const double bracket = japanese_bracket(compute_aux(p).abs_a);
  const double t_switch = std::sqrt(1e-8 / bracket);
  CHECK(norm_closed(p, t_switch * (1 - 1e-9)) == Approx(norm_closed(p, t_switch * (1 + 1e-9))).epsilon(1e-13));
  CHECK(norm_closed(p, 1e-7) <= 1.0);
}

TEST_CASE("log_norm_stable") {
  CHECK(log_norm_stable(Params(1, 1), 0.0) == 0.0);
  const Params p(8, 12);
  CHECK(log_norm_stable(p, 50.0) == Approx(std::log(norm_closed(p, 50.0))).epsilon(1e-9));
  const LongTimeEstimate lt = long_time_estimate(p);
  const double t = 1e5;
  const double model = -0.5 * (1 - lt.c1) * t + std::log(lt.sqrt_r1);
  const double got = log_norm_stable(p, t);
  CHECK(std::isfinite(got));
  CHECK(std::abs(got - model) < 1e-6);
  CHECK(std::isfinite(log_norm_stable(p, 1e6)));
}

TEST_CASE("evaluate_norm routes b=0 and |A|=0 to the oracle") {
  const NormEvaluation deg = evaluate_norm(Params(0.25, 0), 2.0);
  CHECK(deg.source == NormSource::Oracle);
  CHECK(deg.norm == Approx(oracle_norm(Params(0.25, 0), 2.0)).epsilon(1e-12));
  const NormEvaluation zf = evaluate_norm(Params(24, 0), 1.0);
  CHECK(zf.source == NormSource::Oracle);
  CHECK(zf.norm == Approx(norm_closed(Params(24, 0), 1.0)).epsilon(1e-10));
  const NormEvaluation cf = evaluate_norm(Params(8, 12), 3.0);
  CHECK(cf.source == NormSource::ClosedForm);
  CHECK(cf.norm == Approx(std::exp(cf.log_norm)).epsilon(1e-15));
  CHECK(source_name(NormSource::ClosedForm) == "closed-form");
}

TEST_CASE("property: semigroup law") {
  for (const auto& x : testing_oracles::random_triples(11, 40, 5.0)) {
    const Params p(x.a, x.b);
    const double s = std::fmod(x.t * 7.3, 5.0);
    const Matrix4 lhs = assemble(decomposition(p, x.t + s));
    const Matrix4 rhs = assemble(decomposition(p, x.t)) * assemble(decomposition(p, s));
    CHECK(max_abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("property: oracle equivalence of norm and decomposition") {
  for (const auto& x : testing_oracles::random_triples(12, 200, 10.0)) {
    const Params p(x.a, x.b);
    const double ref = oracle_norm(p, x.t);
    CHECK(std::abs(norm_closed(p, x.t) - ref) <= 1e-9 * ref);
    CHECK(testing_oracles::norm_p1_p4(x.a, x.b, x.t) == Approx(ref).epsilon(1e-8));
    if (x.t <= 5.0) CHECK(max_abs(assemble(decomposition(p, x.t)) - oracle_exp(p, x.t)) <= 1e-9);
  }
}

TEST_CASE("property: branch independence and sign of b") {
  for (const auto& x : testing_oracles::random_triples(13, 100, 10.0)) {
    const Params p(x.a, x.b);
    const AuxQuantities aux = compute_aux(p);
    AuxQuantities flipped = aux;
    flipped.c1 = -aux.c1;
    flipped.c2 = -aux.c2;
    const NormFactors f = norm_factors(p, aux, x.t);
    const NormFactors g = norm_factors(p, flipped, x.t);
    CHECK(g.t_factor == Approx(f.t_factor).epsilon(1e-12));
    CHECK(g.s_factor == Approx(f.s_factor).epsilon(1e-12));
    CHECK(norm_closed(p.with_b(-x.b), x.t) == Approx(norm_closed(p, x.t)).epsilon(1e-12));
  }
}

TEST_CASE("property: assembled matrix is the identity at t=0 and exceeds the spectral floor") {
  for (const auto& x : testing_oracles::random_triples(14, 50, 10.0)) {
    const Params p(x.a, x.b);
    CHECK(max_abs(assemble(decomposition(p, 0.0)) - Matrix4::identity()) <= 1e-12);
    CHECK(norm_closed(p, x.t) >= std::exp(-spectral_abscissa(p) * x.t) * (1 - 1e-12));
  }
}
