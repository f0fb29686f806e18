#pragma once

// Small-time series of T, S and the norm, generic over the scalar type.
// Coefficients are polynomials in x = A1 and u = |A|^2; nothing here divides
// by |A|.

#include <cstdint>
#include <utility>
#include <vector>

namespace kfp::detail {

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class Real>
Real ipow(const Real& x, int n) {
  Real r(1);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

template <class Real>
Real factorial(int n) {
  Real r(1);
  for (int i = 2; i <= n; ++i) r *= Real(i);
  return r;
}

// B+_k and B-_k as binomial sums in A1 and |A|.
template <class Real>
std::pair<Real, Real> b_plus_minus_generic(const Real& a1, const Real& abs_a, int k) {
  Real plus(0);
  Real minus(0);
  for (int j = 0; 2 * j <= k; ++j)
    plus += Real(binomial(k, 2 * j)) * ipow(a1, k - 2 * j) * ipow(abs_a, 2 * j);
  for (int j = 0; 2 * j + 1 <= k; ++j)
    minus += Real(binomial(k, 2 * j + 1)) * ipow(a1, k - 2 * j - 1) * ipow(abs_a, 2 * j + 1);
  // 2^{1-k}
  Real scale(2);
  for (int i = 0; i < k; ++i) scale /= Real(2);
  return {plus * scale, minus * scale};
}

// B+_k with |A|^2 = u.
template <class Real>
Real b_plus_poly(const Real& x, const Real& u, int k) {
  Real s(0);
  for (int j = 0; 2 * j <= k; ++j) s += Real(binomial(k, 2 * j)) * ipow(x, k - 2 * j) * ipow(u, j);
  Real scale(2);
  for (int i = 0; i < k; ++i) scale /= Real(2);
  return s * scale;
}

// B-_k / |A| with |A|^2 = u.
template <class Real>
Real b_minus_over_abs_poly(const Real& x, const Real& u, int k) {
  Real s(0);
  for (int j = 0; 2 * j + 1 <= k; ++j)
    s += Real(binomial(k, 2 * j + 1)) * ipow(x, k - 2 * j - 1) * ipow(u, j);
  Real scale(2);
  for (int i = 0; i < k; ++i) scale /= Real(2);
  return s * scale;
}

// (4^{k-1} B+_k - Re(A^k)) / |A|^2 for k >= 1, expanded with A2^2 = u - x^2.
// The u^0 part cancels exactly in integer arithmetic.
template <class Real>
Real re_power_quotient(const Real& x, const Real& u, int k) {
  // coeff[l][m]: coefficient of u^l x^m
  std::vector<std::vector<std::int64_t>> coeff(k + 1, std::vector<std::int64_t>(k + 1, 0));
  const std::int64_t pow2 = std::int64_t{1} << (k - 1);
  for (int j = 0; 2 * j <= k; ++j) {
    const std::int64_t ck = binomial(k, 2 * j);
    coeff[j][k - 2 * j] += ck * pow2;
    // (-1)^j (u - x^2)^j = (x^2 - u)^j = sum_l C(j,l) (-u)^l x^{2(j-l)}
    for (int l = 0; l <= j; ++l) {
      const std::int64_t sign = (l % 2 == 0) ? 1 : -1;
      coeff[l][k - 2 * l] -= ck * binomial(j, l) * sign;
    }
  }
  Real s(0);
  for (int l = 1; l <= k; ++l)
    for (int m = 0; m <= k; ++m)
      if (coeff[l][m] != 0) s += Real(coeff[l][m]) * ipow(u, l - 1) * ipow(x, m);
  return s;
}

template <class Real>
Real tau_generic(const Real& x, const Real& u, int k) {
  const Real num = b_plus_poly(x, u, k) + (Real(2) - x) * b_minus_over_abs_poly(x, u, k);
  return num / (Real(2) * factorial<Real>(2 * k));
}

template <class Real>
Real sigma_generic(const Real& a, const Real& x, const Real& u, int k) {
  if (k == 0) return Real(0);
  const Real pow4 = ipow(Real(4), k - 1);
  const Real num = Real(8) * a * re_power_quotient(x, u, k) +
                   pow4 * ((Real(2) - x) * b_minus_over_abs_poly(x, u, k) + b_plus_poly(x, u, k));
  return num / factorial<Real>(2 * k);
}

// Truncated power series helpers, coefficients indexed by degree.
template <class Real>
std::vector<Real> series_mul(const std::vector<Real>& p, const std::vector<Real>& q, int order) {
  std::vector<Real> r(order + 1, Real(0));
  for (int i = 0; i <= order && i < static_cast<int>(p.size()); ++i)
    for (int j = 0; i + j <= order && j < static_cast<int>(q.size()); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// sqrt of a series with positive constant term.
template <class Real>
std::vector<Real> series_sqrt(const std::vector<Real>& s, int order) {
  using std::sqrt;
  std::vector<Real> r(order + 1, Real(0));
  auto at = [&](int i) { return i < static_cast<int>(s.size()) ? s[i] : Real(0); };
  r[0] = sqrt(at(0));
  for (int n = 1; n <= order; ++n) {
    Real acc = at(n);
    for (int i = 1; i < n; ++i) acc -= r[i] * r[n - i];
    r[n] = acc / (Real(2) * r[0]);
  }
  return r;
}

// Coefficients of ||e^{-tM}|| in powers of t up to `order`, from
// e^t ||e^{-tM}||^2 = sum tau_k t^{2k} + t sqrt(sum_{k>=1} sigma_k t^{2k-2}).
template <class Real>
std::vector<Real> norm_series_generic(const Real& a, const Real& x, const Real& u, int order) {
  std::vector<Real> even(order + 1, Real(0));
  for (int k = 0; 2 * k <= order; ++k) even[2 * k] = tau_generic(x, u, k);

  std::vector<Real> inner(order + 1, Real(0));
  for (int k = 1; 2 * k - 2 <= order; ++k) inner[2 * k - 2] = sigma_generic(a, x, u, k);
  const std::vector<Real> root = series_sqrt(inner, order);

  std::vector<Real> h = even;
  for (int n = 1; n <= order; ++n) h[n] += root[n - 1];

  std::vector<Real> decay(order + 1, Real(0));
  Real term(1);
  for (int n = 0; n <= order; ++n) {
    decay[n] = term;
    term = -term / Real(n + 1);
  }
  const std::vector<Real> squared = series_mul(h, decay, order);
  return series_sqrt(squared, order);
}

template <class Real>
Real horner(const std::vector<Real>& c, const Real& t) {
  Real r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

}  // namespace kfp::detail
