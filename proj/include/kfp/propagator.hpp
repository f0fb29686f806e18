#pragma once

#include <string_view>

#include "kfp/basis.hpp"
#include "kfp/core.hpp"

namespace kfp {

// Lagrange-interpolation scalars for e^{-tM}. l = l1 x1 + l2 x2, o = x1 + x2,
// ch +/- sh = e^{-t l1}, e^{-t l2}.
struct PropagatorCoefficients {
  Complex x1;
  Complex x2;
  Complex l;
  Complex o;
  Complex ch;
  Complex sh;
  double t;
};

// e^{-tM} = g H_vv + d J + e J_J + f J_vv + h J_xx + k (H_xx + H_vv)
struct ExpDecomposition {
  double g = 0;
  double d = 0;
  double e = 0;
  double f = 0;
  double h = 0;
  double k = 0;
  double t = 0;
};

struct NormFactors {
  double t_factor;
  double s_factor;
  double abs_a;
};

/// Requires b != 0, |A| > 0, t >= 0.
PropagatorCoefficients coefficients(const Params& p, double t);

ExpDecomposition decomposition(const Params& p, double t);

Matrix4 assemble(const ExpDecomposition& dec);

/// T and S as printed, S clamped to 0 against roundoff.
NormFactors norm_factors(const Params& p, double t);

// Same, with a caller-chosen square root of A (either sign of c).
NormFactors norm_factors(const Params& p, const AuxQuantities& aux, double t);

/// ||e^{-tM}||, switching to the small-t series when <A> t^2 < 1e-8.
double norm_closed(const Params& p, double t);

/// log ||e^{-tM}|| with the dominant exponential factored out; finite for
/// t up to 1e6 and beyond.
double log_norm_stable(const Params& p, double t);

enum class NormSource { ClosedForm, Oracle };

std::string_view source_name(NormSource s);

struct NormEvaluation {
  double norm;
  double log_norm;
  NormSource source;
};

/// Closed form where it applies, brute-force oracle for b = 0 or |A| = 0.
NormEvaluation evaluate_norm(const Params& p, double t);

}  // namespace kfp
