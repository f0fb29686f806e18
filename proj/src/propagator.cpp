#include "kfp/propagator.hpp"

#include <cmath>
#include <string>

#include "kfp/asymptotics.hpp"
#include "kfp/detail/closed_form.hpp"
#include "kfp/detail/compensated.hpp"
#include "kfp/oracle.hpp"
#include "kfp/spectrum.hpp"

namespace kfp {
namespace {

constexpr double kSmallTSwitch = 1e-8;
constexpr double kClampRel = 1e-12;

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be finite and >= 0, got " + std::to_string(t));
}

void check_abs_a(const AuxQuantities& aux) {
  if (aux.abs_a == 0.0) throw DomainError("|A| = 0: closed form undefined (a = 1/4, b = 0)");
}

detail::AuxT<double> to_generic(const AuxQuantities& aux) { return {aux.a1, aux.a2, aux.abs_a, aux.c1, aux.c2}; }

// S is a difference of near-equal terms; tolerate roundoff-sized negatives.
double clamp_s(double s, double a, const AuxQuantities& aux, double cosh_weight) {
  if (s >= 0.0) return s;
  const double scale = aux.abs_a * aux.abs_a + std::abs(2.0 - aux.a1) * aux.abs_a + 8.0 * a;
  if (s >= -kClampRel * scale * cosh_weight) return 0.0;
  throw NumericalError("S = " + std::to_string(s) + " is negative beyond roundoff");
}

double bracket_abs_a(const AuxQuantities& aux) { return japanese_bracket(aux.abs_a); }

bool use_series(const AuxQuantities& aux, double t) { return bracket_abs_a(aux) * t * t < kSmallTSwitch; }

// Below this |c1| t the half-angle forms are used; above it the scaled ones,
// where nothing cancels and cosh would overflow.
constexpr double kScaledSwitch = 20.0;

}  // namespace

namespace detail {

double compensated_deviation(const Params& p, const AuxQuantities& aux, double t) {
  const double c1t = std::abs(aux.c1) * t;
  if (c1t <= kScaledSwitch) {
    const auto f = detail::ts_excess_generic(p.a(), to_generic(aux), t);
    const double s = clamp_s(f.s_factor, p.a(), aux, std::cosh(2.0 * c1t));
    const double r = (f.t_excess + std::sqrt(s)) / aux.abs_a;
    return std::expm1(-c1t) + std::exp(-c1t) * r;
  }
  const auto f = detail::ts_scaled_generic(p.a(), to_generic(aux), t);
  const double u = std::exp(-c1t);
  const double s = clamp_s(f.s_factor, p.a(), aux, 0.5 * (1.0 + u * u * u * u));
  return (f.t_factor + std::sqrt(s)) / aux.abs_a - 1.0;
}

}  // namespace detail

namespace {

double compensated_log1p(const Params& p, const AuxQuantities& aux, double t) {
  return std::log1p(detail::compensated_deviation(p, aux, t));
}

}  // namespace

PropagatorCoefficients coefficients(const Params& p, double t) {
  check_time(t);
  if (p.b() == 0.0) throw DomainError("coefficients require b != 0");
  const AuxQuantities aux = compute_aux(p);
  check_abs_a(aux);
  const Spectrum sp = eigenvalues_closed_form(p);
  const Complex l1 = sp[0];
  const Complex l2 = sp[1];
  const Complex e1 = std::exp(-t * l1);
  const Complex e2 = std::exp(-t * l2);
  const Complex i(0.0, 1.0);
  const Complex den = 2.0 * i * p.a() * p.b() * aux.c();

  PropagatorCoefficients out{};
  out.t = t;
  out.x1 = -l2 * e1 / den;
  out.x2 = l1 * e2 / den;
  out.o = (l1 * e2 - l2 * e1) / den;
  out.l = (e2 - e1) / (2.0 * i * p.b() * aux.c());
  out.ch = 0.5 * (e1 + e2);
  out.sh = 0.5 * (e1 - e2);
  return out;
}

ExpDecomposition decomposition(const Params& p, double t) {
  const PropagatorCoefficients pc = coefficients(p, t);
  const double a = p.a();
  const double b = p.b();
  const double ra = p.sqrt_a();
  const double rl = pc.l.real();
  const double il = pc.l.imag();
  const double ro = pc.o.real();

  ExpDecomposition d;
  d.t = t;
  d.g = 2.0 * b * (b * rl - il);
  d.d = 2.0 * b * ra * il;
  d.e = -2.0 * b * ra * rl;
  d.f = 2.0 * b * (rl + b * il) - 2.0 * b * a * ro;
  d.h = -2.0 * a * b * ro;
  d.k = 2.0 * a * b * pc.o.imag();
  return d;
}

Matrix4 assemble(const ExpDecomposition& dec) {
  const auto m = [](BasisTag tag) { return basis_matrix(tag).entries; };
  return dec.g * m(BasisTag::Hvv) + dec.d * m(BasisTag::J) + dec.e * m(BasisTag::JJ) + dec.f * m(BasisTag::Jvv) +
         dec.h * m(BasisTag::Jxx) + dec.k * Matrix4::identity();
}

NormFactors norm_factors(const Params& p, double t) { return norm_factors(p, compute_aux(p), t); }

NormFactors norm_factors(const Params& p, const AuxQuantities& aux, double t) {
  check_time(t);
  check_abs_a(aux);
  const auto f = detail::ts_generic(p.a(), to_generic(aux), t);
  const double s = clamp_s(f.s_factor, p.a(), aux, std::cosh(2.0 * aux.c1 * t));
  return {f.t_factor, s, aux.abs_a};
}

double norm_closed(const Params& p, double t) {
  check_time(t);
  const AuxQuantities aux = compute_aux(p);
  check_abs_a(aux);
  if (use_series(aux, t)) return small_t_norm(p, t, 6);
  return std::exp(0.5 * (-one_minus_c1(p, aux) * t + compensated_log1p(p, aux, t)));
}

double log_norm_stable(const Params& p, double t) {
  check_time(t);
  const AuxQuantities aux = compute_aux(p);
  check_abs_a(aux);
  if (use_series(aux, t)) return std::log(small_t_norm(p, t, 6));
  return 0.5 * (-one_minus_c1(p, aux) * t + compensated_log1p(p, aux, t));
}

std::string_view source_name(NormSource s) { return s == NormSource::ClosedForm ? "closed-form" : "oracle"; }

NormEvaluation evaluate_norm(const Params& p, double t) {
  check_time(t);
  const AuxQuantities aux = compute_aux(p);
  if (p.b() != 0.0 && aux.abs_a != 0.0) {
    const double lg = log_norm_stable(p, t);
    return {std::exp(lg), lg, NormSource::ClosedForm};
  }
  // Shift by the decay rate so the oracle exponential stays O(1).
  const double mu = 0.5 * (1.0 - aux.c1);
  const Matrix4 shifted = build_matrix(p) - mu * Matrix4::identity();
  const double lg = std::log(oracle::operator_norm(oracle::expm(-t * shifted))) - mu * t;
  return {std::exp(lg), lg, NormSource::Oracle};
}

}  // namespace kfp
