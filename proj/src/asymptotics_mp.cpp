#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kfp/asymptotics.hpp"
#include "kfp/detail/closed_form.hpp"
#include "kfp/detail/series.hpp"

namespace kfp {
namespace {

// The polynomial forms in (A1, |A|^2) carry terms of size b^{2k} that cancel
// down to O(a^k); 100 digits keeps the rounded double exact for |b| up to ~1e6.
using Wide = boost::multiprecision::cpp_bin_float_100;

struct WideAux {
  Wide a;
  Wide x;
  Wide u;
};

WideAux wide_aux(const Params& p) {
  const Wide a(p.a());
  const Wide b(p.b());
  const Wide x = Wide(1) - b * b - Wide(4) * a;
  return {a, x, x * x + Wide(4) * b * b};
}

}  // namespace

SeriesCoefficients tau_sigma(const Params& p, int n) {
  if (n < 0) throw std::invalid_argument("order must be >= 0");
  if (compute_aux(p).abs_a == 0.0) throw DomainError("|A| = 0");
  const WideAux w = wide_aux(p);
  SeriesCoefficients out{{}, {}, n};
  for (int k = 0; k <= n; ++k) {
    out.tau.push_back(static_cast<double>(detail::tau_generic(w.x, w.u, k)));
    out.sigma.push_back(static_cast<double>(detail::sigma_generic(w.a, w.x, w.u, k)));
  }
  return out;
}

std::vector<double> small_t_coefficients(const Params& p, int order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  const WideAux w = wide_aux(p);
  std::vector<double> out;
  for (const Wide& c : detail::norm_series_generic(w.a, w.x, w.u, order)) out.push_back(static_cast<double>(c));
  return out;
}

double small_t_remainder_slope(const Params& p, double w_lo, double w_hi, int points) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  if (!(w_lo > 0.0) || !(w_hi > w_lo) || points < 2) throw std::invalid_argument("need 0 < w_lo < w_hi, points >= 2");

  const Real a(p.a());
  const Real b(p.b());
  const detail::AuxT<Real> aux = detail::aux_generic(a, b);
  const Real u = aux.a1 * aux.a1 + aux.a2 * aux.a2;
  const Real bracket = sqrt(Real(1) + u);
  const std::vector<Real> series = detail::norm_series_generic(a, aux.a1, u, 6);

  // Least squares for log r = slope * log t + const.
  Real sx(0), sy(0), sxx(0), sxy(0);
  const Real lw0 = log(Real(w_lo));
  const Real lw1 = log(Real(w_hi));
  for (int i = 0; i < points; ++i) {
    const Real w = exp(lw0 + (lw1 - lw0) * i / (points - 1));
    const Real t = sqrt(w / bracket);
    const Real exact = sqrt(detail::norm_squared_generic(a, b, t));
    const Real r = abs(detail::horner(series, t) - exact);
    if (r == 0) throw NumericalError("remainder vanished; cannot fit a slope");
    const Real x = log(t);
    const Real y = log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Real n(points);
  return static_cast<double>((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

}  // namespace kfp
