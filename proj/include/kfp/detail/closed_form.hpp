#pragma once

// Scalar-generic closed forms. The double API in core/propagator/asymptotics
// instantiates these with double; high-precision checks instantiate them with
// a Boost.Multiprecision type. Math functions are found by ADL.

#include <cmath>
#include <type_traits>

namespace kfp::detail {

template <class Real>
struct AuxT {
  Real a1;
  Real a2;
  Real abs_a;
  Real c1;
  Real c2;
};

template <class Real>
Real hypot2(const Real& x, const Real& y) {
  if constexpr (std::is_floating_point_v<Real>) {
    return std::hypot(x, y);
  } else {
    using std::abs;
    using std::sqrt;
    const Real ax = abs(x);
    const Real ay = abs(y);
    const Real big = ax > ay ? ax : ay;
    if (big == 0) return Real(0);
    const Real rx = ax / big;
    const Real ry = ay / big;
    return big * sqrt(rx * rx + ry * ry);
  }
}

// A = 1 - b^2 - 4a - 2ib and c = sqrt(A) with c1 >= 0; sign(c2) = -sign(b),
// c2 >= 0 at b = 0. The larger of c1^2, c2^2 is taken from the
// subtraction-free half-sum, the other from 2 c1 c2 = A2.
template <class Real>
AuxT<Real> aux_generic(const Real& a, const Real& b) {
  using std::abs;
  using std::sqrt;
  AuxT<Real> out{};
  out.a1 = Real(1) - b * b - Real(4) * a;
  out.a2 = Real(-2) * b;
  out.abs_a = hypot2(out.a1, out.a2);
  if (out.abs_a == 0) {
    out.c1 = Real(0);
    out.c2 = Real(0);
    return out;
  }
  Real c2_mag;
  if (out.a1 >= 0) {
    out.c1 = sqrt((out.abs_a + out.a1) / Real(2));
    c2_mag = abs(out.a2) / (Real(2) * out.c1);
  } else {
    c2_mag = sqrt((out.abs_a - out.a1) / Real(2));
    out.c1 = abs(out.a2) / (Real(2) * c2_mag);
  }
  out.c2 = b > 0 ? Real(-c2_mag) : c2_mag;
  return out;
}

// 1 - c1 without cancellation: 4a = (1 + c2^2)(1 - c1^2).
template <class Real>
Real one_minus_c1(const Real& a, const AuxT<Real>& aux) {
  return Real(4) * a / ((Real(1) + aux.c2 * aux.c2) * (Real(1) + aux.c1));
}

template <class Real>
struct TSFactors {
  Real t_factor;
  Real s_factor;
};

// T and S as printed; S may come out slightly negative from roundoff.
template <class Real>
TSFactors<Real> ts_generic(const Real& a, const AuxT<Real>& aux, const Real& t) {
  using std::cos;
  using std::cosh;
  const Real& A1 = aux.a1;
  const Real& absA = aux.abs_a;
  const Real ch1 = cosh(aux.c1 * t);
  const Real co1 = cos(aux.c2 * t);
  const Real ch2 = cosh(Real(2) * aux.c1 * t);
  const Real co2 = cos(Real(2) * aux.c2 * t);
  TSFactors<Real> f{};
  f.t_factor = ((absA - A1 + Real(2)) * ch1 + (absA + A1 - Real(2)) * co1) / Real(2);
  f.s_factor = Real(8) * a * (Real(1) - ch1 * co1) +
               (Real(2) - A1) * absA * (ch2 - co2) / Real(4) +
               (Real(2) * a + absA * absA / Real(4)) * (ch2 + co2 - Real(2));
  return f;
}

// T e^{-|c1| t} and S e^{-2|c1| t}, finite for arbitrarily large t.
template <class Real>
TSFactors<Real> ts_scaled_generic(const Real& a, const AuxT<Real>& aux, const Real& t) {
  using std::abs;
  using std::cos;
  using std::exp;
  const Real& A1 = aux.a1;
  const Real& absA = aux.abs_a;
  const Real u = exp(-abs(aux.c1) * t);
  const Real u2 = u * u;
  const Real co1 = cos(aux.c2 * t);
  const Real co2 = cos(Real(2) * aux.c2 * t);
  const Real half_1pu2 = (Real(1) + u2) / Real(2);
  const Real half_1pu4 = (Real(1) + u2 * u2) / Real(2);
  TSFactors<Real> f{};
  f.t_factor = ((absA - A1 + Real(2)) * half_1pu2 + (absA + A1 - Real(2)) * co1 * u) / Real(2);
  f.s_factor = Real(8) * a * (u2 - half_1pu2 * u * co1) +
               (Real(2) - A1) * absA * (half_1pu4 - u2 * co2) / Real(4) +
               (Real(2) * a + absA * absA / Real(4)) * (half_1pu4 + u2 * co2 - Real(2) * u2);
  return f;
}

// T - |A| and S rewritten with cosh x - 1 = 2 sinh^2(x/2), 1 - cos x = 2 sin^2(x/2),
// so the O(1) parts cancel exactly and only relative error survives near t = 0.
template <class Real>
struct TSExcess {
  Real t_excess;
  Real s_factor;
};

template <class Real>
TSExcess<Real> ts_excess_generic(const Real& a, const AuxT<Real>& aux, const Real& t) {
  using std::sin;
  using std::sinh;
  const Real& A1 = aux.a1;
  const Real& absA = aux.abs_a;
  const Real h1 = sinh(aux.c1 * t / Real(2));
  const Real h2 = sin(aux.c2 * t / Real(2));
  const Real p = Real(2) * h1 * h1;  // cosh(c1 t) - 1
  const Real q = Real(2) * h2 * h2;  // 1 - cos(c2 t)
  const Real sh = sinh(aux.c1 * t);
  const Real sn = sin(aux.c2 * t);
  TSExcess<Real> f{};
  f.t_excess = ((absA - A1 + Real(2)) * p - (absA + A1 - Real(2)) * q) / Real(2);
  f.s_factor = Real(8) * a * (q - p + p * q) + (Real(2) - A1) * absA * (sh * sh + sn * sn) / Real(2) +
               (Real(2) * a + absA * absA / Real(4)) * Real(2) * (sh * sh - sn * sn);
  return f;
}

// ||e^{-tM}||^2 = e^{-t}(T + sqrt S)/|A|, no clamping, no small-t switch.
template <class Real>
Real norm_squared_generic(const Real& a, const Real& b, const Real& t) {
  using std::exp;
  using std::sqrt;
  const AuxT<Real> aux = aux_generic(a, b);
  const TSFactors<Real> f = ts_generic(a, aux, t);
  const Real s = f.s_factor > 0 ? f.s_factor : Real(0);
  return exp(-t) * (f.t_factor + sqrt(s)) / aux.abs_a;
}

}  // namespace kfp::detail
