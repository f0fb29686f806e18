#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kfp/asymptotics.hpp"
#include "kfp/cli.hpp"
#include "kfp/spectrum.hpp"

namespace kfp::cli {
namespace {

std::string fixed7(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", x);
  return buf;
}

std::string complex7(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.7f%+.7fi", z.real(), z.imag());
  return buf;
}

}  // namespace

std::string spectrum_report(double a, std::span<const double> bs) {
  std::string out = "a = " + fixed7(a) + "\n";
  out += "b | spectral abscissa | a/b^2 | lambda1 | lambda2 | lambda3 | lambda4\n";
  for (double b : bs) {
    const Params p(a, b);
    const Spectrum sp = eigenvalues_closed_form(p);
    out += fixed7(b) + " | " + fixed7(spectral_abscissa(p)) + " | " + (b != 0.0 ? fixed7(a / (b * b)) : "—");
    for (const Complex& z : sp) out += " | " + complex7(z);
    out += "\n";
  }
  return out;
}

std::vector<RegimeRow> regimes(double a, std::span<const double> bs, const RegimeOptions& opts) {
  std::vector<RegimeRow> rows;
  const bool all = opts.which == Regime::All;

  if (all || opts.which == Regime::SmallT) {
    for (double b : bs) {
      const Params p(a, b);
      rows.push_back({"small-t", b, "remainder_slope",
                      small_t_remainder_slope(p, opts.small_t_w_lo, opts.small_t_w_hi)});
    }
  }

  if (all || opts.which == Regime::LargeB) {
    double prev = 0.0;
    bool have_prev = false;
    for (double b : bs) {
      const Params p(a, b);
      const double sup = large_b_sup(p, opts.large_b_t_max);
      rows.push_back({"large-b", b, "sup_deviation", sup});
      if (have_prev) rows.push_back({"large-b", b, "ratio_to_previous", prev / sup});
      prev = sup;
      have_prev = true;
    }
  }

  if (all || opts.which == Regime::LongT) {
    for (double b : bs) {
      const Params p(a, b);
      const LongTimeEstimate lt = long_time_estimate(p);
      const double t = opts.long_t;
      const double compensated = std::exp(0.5 * one_minus_c1(p, compute_aux(p)) * t + log_norm_stable(p, t));
      const double gap = std::abs(compensated / lt.sqrt_r1 - 1.0);
      const double env = long_time_envelope(p, t);
      double proj = 0.0;
      for (int j = 1; j <= 4; ++j) proj = std::max(proj, std::abs(projector_norm(p, j) - lt.sqrt_r1));
      rows.push_back({"long-t", b, "sqrt_r1", lt.sqrt_r1});
      rows.push_back({"long-t", b, "c1", lt.c1});
      rows.push_back({"long-t", b, "relative_gap", gap});
      rows.push_back({"long-t", b, "envelope", env});
      rows.push_back({"long-t", b, "fitted_c", env > 0.0 ? gap / env : 0.0});
      rows.push_back({"long-t", b, "projector_max_diff", proj});
    }
  }
  return rows;
}

}  // namespace kfp::cli
