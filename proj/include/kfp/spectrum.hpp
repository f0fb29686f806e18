#pragma once

#include <array>
#include <vector>

#include "kfp/core.hpp"

namespace kfp {

/// The four eigenvalues of M_{a,b} in the fixed order
///   l1 = (1 - c1 - i(b + c2))/2,  l2 = (1 + c1 - i(b - c2))/2,
///   l3 = conj(l1),                l4 = conj(l2),
/// so that l1 always carries the minimal real part (1 - c1)/2.
struct Spectrum {
  std::array<Complex, 4> lambda;

  const Complex& operator[](std::size_t i) const { return lambda[i]; }
  auto begin() const { return lambda.begin(); }
  auto end() const { return lambda.end(); }
};

// Depressed quartic z^4 + p z^2 + q z + r, obtained from the characteristic
// polynomial by lambda = z + 1/2.
struct QuarticCoeffs {
  double p;
  double q;
  double r;

  static QuarticCoeffs from_params(const Params& params);
};

Spectrum eigenvalues_closed_form(const Params& p);

// -8y^3 + 4py^2 + 8ry - 4pr + q^2
double resolvent_cubic(const QuarticCoeffs& c, double y);

// The resolvent root used for M_{a,b}.
inline double resolvent_root(const Params& p) { return p.a() - 0.25; }

/// Roots of z^4 + p z^2 + q z + r through the two quadratic factors
///   z^2 + s z + y0 - q/(2s),   z^2 - s z + y0 + q/(2s),   s^2 = 2 y0 - p.
/// y0 must cancel the resolvent cubic (checked to 1e-9 relative, otherwise
/// ResolventMismatch). When |2 y0 - p| < 1e-13 the factorization is singular
/// and the biquadratic z^4 + p z^2 + r is solved instead.
std::array<Complex, 4> solve_quartic_ferrari(const QuarticCoeffs& c, double y0);

/// min Re(lambda) = (1 - c1)/2.
double spectral_abscissa(const Params& p);

/// Leading-order eigenvalues as |b| -> infinity. Throws DomainError at b = 0.
Spectrum eigenvalue_asymptotics_large_b(const Params& p);

/// Eigenvectors v_j (M v_j = lambda_j v_j) normalized to last component 1.
/// Throws DomainError at b = 0.
std::array<Vec4<Complex>, 4> eigenvectors(const Params& p);

/// Change-of-basis matrix P with M_{a,0} = P diag(l1, l1, l2, l2) P^{-1}.
/// Throws DomainError unless b = 0 and a != 1/4.
CMatrix4 eigenvectors_zero_field(const Params& p);

/// ||Pi_j|| = (a + |l_j|^2) / |a - l_j^2| for j in 1..4. Requires b != 0.
double projector_norm(const Params& p, int j);

/// Generalized eigenvalues sum_j k_j lambda_j of the operator for
/// k in {0..kmax}^4, deduplicated to 1e-12 and sorted by (Re, Im).
std::vector<Complex> operator_spectrum_multiindex(const Params& p, int kmax);

}  // namespace kfp
