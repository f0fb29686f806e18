#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "kfp/core.hpp"

namespace kfp {

// T = sum |A| tau_k t^{2k},  S = sum |A|^2 sigma_k t^{2k}.
struct SeriesCoefficients {
  std::vector<double> tau;
  std::vector<double> sigma;
  int order;
};

struct LongTimeEstimate {
  double r0;
  double r1;
  double sqrt_r1;
  double c1;
};

struct IdentityResidual {
  double residual;
  double scale;  // magnitude of the left side
};

// |A| + 2 - A1 = 2(c2^2 + 1),  4a = (1 + c2^2)(1 - c1^2),
// |l1|^2 = (1 + c2^2)(1 - c1)^2 / 4.
struct LemmaResiduals {
  IdentityResidual trace_form;
  IdentityResidual four_a;
  IdentityResidual lambda1_modulus;
};

inline constexpr double kSeriesRadius = 0.1;
inline constexpr double kLargeBThreshold = 0.1;

/// (B+_k, B-_k) = (c1^{2k} + (-1)^k c2^{2k}, c1^{2k} - (-1)^k c2^{2k}),
/// summed as binomials in A1 and |A|.
std::pair<double, double> b_plus_minus(const AuxQuantities& aux, int k);

SeriesCoefficients tau_sigma(const Params& p, int n);

/// Coefficients of ||e^{-tM}|| in powers of t, any order.
std::vector<double> small_t_coefficients(const Params& p, int order);

/// Truncated expansion 1 - (a/12) t^3 + (a b^2/360 + a^2/240 + a/120) t^5 + a^2/288 t^6
/// up to degree `order` (0..6). Throws OutOfRadius if <A> t^2 > radius.
double small_t_norm(const Params& p, double t, int order = 6, double radius = kSeriesRadius);

/// sup over the grid of |e^{(1 - c1) t} ||e^{-tM}||^2 - 1|.
/// Requires b != 0 and <a> / b^2 <= threshold.
double large_b_deviation(const Params& p, std::span<const double> t_grid, double threshold = kLargeBThreshold);

/// The same supremum over the whole interval [0, t_max]: a grid fine enough to
/// resolve the b^{-1} time scale, then golden-section refinement at the peak.
double large_b_sup(const Params& p, double t_max, double threshold = kLargeBThreshold);

/// Log-log slope of |small_t_norm(order 6) - exact norm| against t for
/// <A> t^2 log-spaced over [w_lo, w_hi]. Evaluated in 50-digit arithmetic
/// since the remainder sits far below double roundoff.
double small_t_remainder_slope(const Params& p, double w_lo, double w_hi, int points = 24);

LongTimeEstimate long_time_estimate(const Params& p);

// R1 assembled as (1 + (2 - A1)/|A|)/4 + sqrt(R0).
double r1_via_r0(const Params& p);

/// E(t) = e^{-2 c1 t} + <a>^2 b^{-4} e^{-c1 t}
double long_time_envelope(const Params& p, double t);

LemmaResiduals lemma_identities(const Params& p);

/// 4 pi / sqrt(4a - 1); e^{t/2} e^{-t M_{a,0}} repeats with this period.
double periodicity_period(double a);

}  // namespace kfp
