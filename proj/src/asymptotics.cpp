#include "kfp/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kfp/detail/compensated.hpp"
#include "kfp/detail/series.hpp"
#include "kfp/spectrum.hpp"

namespace kfp {
namespace {

void require_nonzero_abs_a(const AuxQuantities& aux) {
  if (aux.abs_a == 0.0) throw DomainError("|A| = 0");
}

void require_b(const Params& p) {
  if (p.b() == 0.0) throw DomainError("b must be nonzero");
}

// |A|^2 straight from the components, no square root round trip.
double abs_a_squared(const AuxQuantities& aux) { return aux.a1 * aux.a1 + aux.a2 * aux.a2; }

void require_large_b(const Params& p, double threshold) {
  require_b(p);
  const double ratio = japanese_bracket(p.a()) / (p.b() * p.b());
  if (ratio > threshold)
    throw DomainError("<a>/b^2 = " + std::to_string(ratio) + " above threshold " + std::to_string(threshold));
}

}  // namespace

std::pair<double, double> b_plus_minus(const AuxQuantities& aux, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  return detail::b_plus_minus_generic(aux.a1, aux.abs_a, k);
}

double small_t_norm(const Params& p, double t, int order, double radius) {
  if (order < 0 || order > 6) throw std::invalid_argument("order must be in 0..6");
  const AuxQuantities aux = compute_aux(p);
  const double weight = japanese_bracket(aux.abs_a) * t * t;
  if (!(weight <= radius))
    throw OutOfRadius("<A> t^2 = " + std::to_string(weight) + " exceeds radius " + std::to_string(radius));
  const double a = p.a();
  const double b2 = p.b() * p.b();
  const double c[7] = {1.0, 0.0, 0.0, -a / 12.0, 0.0, a * b2 / 360.0 + a * a / 240.0 + a / 120.0, a * a / 288.0};
  double r = 0.0;
  for (int k = order; k >= 0; --k) r = r * t + c[k];
  return r;
}

double large_b_deviation(const Params& p, std::span<const double> t_grid, double threshold) {
  require_large_b(p, threshold);
  const AuxQuantities aux = compute_aux(p);
  double sup = 0.0;
  for (double t : t_grid) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("grid times must be finite and >= 0");
    sup = std::max(sup, std::abs(detail::compensated_deviation(p, aux, t)));
  }
  return sup;
}

double large_b_sup(const Params& p, double t_max, double threshold) {
  require_large_b(p, threshold);
  if (!std::isfinite(t_max) || t_max < 0.0) throw DomainError("t_max must be finite and >= 0");
  const AuxQuantities aux = compute_aux(p);
  const auto dev = [&](double t) { return std::abs(detail::compensated_deviation(p, aux, t)); };

  const double h = std::min(0.01, 0.02 / std::abs(p.b()));
  const auto n = static_cast<long>(std::ceil(t_max / h));
  double best = dev(0.0);
  long best_i = 0;
  for (long i = 1; i <= n; ++i) {
    const double v = dev(std::min(t_max, i * h));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  double lo = std::max(0.0, (best_i - 1) * h);
  double hi = std::min(t_max, (best_i + 1) * h);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = dev(x1);
  double f2 = dev(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = dev(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = dev(x2);
    }
  }
  return std::max({best, f1, f2});
}

LongTimeEstimate long_time_estimate(const Params& p) {
  require_b(p);
  const AuxQuantities aux = compute_aux(p);
  require_nonzero_abs_a(aux);
  const double c2sq1 = 1.0 + aux.c2 * aux.c2;
  LongTimeEstimate out{};
  out.r0 = (1.0 + (2.0 - aux.a1) / aux.abs_a + 8.0 * p.a() / abs_a_squared(aux)) / 8.0;
  out.r1 = c2sq1 / aux.abs_a;
  out.sqrt_r1 = std::sqrt(out.r1);
  out.c1 = aux.c1;
  return out;
}

double r1_via_r0(const Params& p) {
  const LongTimeEstimate e = long_time_estimate(p);
  const AuxQuantities aux = compute_aux(p);
  return 0.25 * (1.0 + (2.0 - aux.a1) / aux.abs_a) + std::sqrt(e.r0);
}

double long_time_envelope(const Params& p, double t) {
  require_b(p);
  const AuxQuantities aux = compute_aux(p);
  const double ja = japanese_bracket(p.a());
  const double b2 = p.b() * p.b();
  return std::exp(-2.0 * aux.c1 * t) + (ja * ja) / (b2 * b2) * std::exp(-aux.c1 * t);
}

LemmaResiduals lemma_identities(const Params& p) {
  const AuxQuantities aux = compute_aux(p);
  const double c1 = aux.c1;
  const double c2sq1 = 1.0 + aux.c2 * aux.c2;
  LemmaResiduals r{};

  const double lhs1 = aux.abs_a + 2.0 - aux.a1;
  r.trace_form = {std::abs(lhs1 - 2.0 * c2sq1), std::abs(lhs1)};

  const double lhs2 = 4.0 * p.a();
  r.four_a = {std::abs(lhs2 - c2sq1 * (1.0 - c1 * c1)), lhs2};

  // l1 = (1 - c1 - i(b + c2))/2 taken literally, not in factored form.
  const double re = 0.5 * (1.0 - c1);
  const double im = -0.5 * (p.b() + aux.c2);
  const double lhs3 = re * re + im * im;
  const double omc = one_minus_c1(p, aux);
  r.lambda1_modulus = {std::abs(lhs3 - 0.25 * c2sq1 * omc * omc), lhs3};
  return r;
}

double periodicity_period(double a) {
  if (!(a > 0.25) || !std::isfinite(a)) throw DomainError("periodicity requires a > 1/4");
  return 4.0 * std::numbers::pi / std::sqrt(4.0 * a - 1.0);
}

}  // namespace kfp
