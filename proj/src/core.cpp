#include "kfp/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kfp/detail/closed_form.hpp"

namespace kfp {

CMatrix4 to_complex(const Matrix4& m) {
  CMatrix4 out;
  for (std::size_t i = 0; i < 16; ++i) out.data[i] = m.data[i];
  return out;
}

double max_abs(const Matrix4& m) {
  double r = 0.0;
  for (double x : m.data) r = std::max(r, std::abs(x));
  return r;
}

double max_abs(const CMatrix4& m) {
  double r = 0.0;
  for (const Complex& x : m.data) r = std::max(r, std::abs(x));
  return r;
}

double frobenius_norm(const Matrix4& m) {
  double s = 0.0;
  for (double x : m.data) s += x * x;
  return std::sqrt(s);
}

Params::Params(double a, double b) : a_(a), b_(b), sqrt_a_(0.0) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("parameters must be finite");
  if (!(a > 0.0))
    throw DomainError("electric strength a must be positive, got " + std::to_string(a));
  sqrt_a_ = std::sqrt(a);
}

Matrix4 build_matrix(const Params& p) {
  const double s = p.sqrt_a();
  const double b = p.b();
  return Matrix4::from_rows({{
      {1.0, b, s, 0.0},
      {-b, 1.0, 0.0, s},
      {-s, 0.0, 0.0, 0.0},
      {0.0, -s, 0.0, 0.0},
  }});
}

AuxQuantities compute_aux(const Params& p) {
  const auto g = detail::aux_generic<double>(p.a(), p.b());
  return {g.a1, g.a2, g.abs_a, g.c1, g.c2};
}

double aux_residual(const AuxQuantities& aux) {
  const double scale = 1.0 + aux.abs_a;
  const double r1 = std::abs(aux.c1 * aux.c1 - aux.c2 * aux.c2 - aux.a1);
  const double r2 = std::abs(2.0 * aux.c1 * aux.c2 - aux.a2);
  const double r3 = std::abs(aux.c1 * aux.c1 + aux.c2 * aux.c2 - aux.abs_a);
  return std::max({r1, r2, r3}) / scale;
}

double one_minus_c1(const Params& p, const AuxQuantities& aux) {
  detail::AuxT<double> g{aux.a1, aux.a2, aux.abs_a, aux.c1, aux.c2};
  return detail::one_minus_c1(p.a(), g);
}

double japanese_bracket(double x) { return std::hypot(1.0, x); }

Complex characteristic_poly(const Params& p, Complex z) {
  const double a = p.a();
  const double b = p.b();
  // z^4 - 2z^3 + (2a + b^2 + 1) z^2 - 2a z + a^2, Horner form
  Complex r = z - 2.0;
  r = r * z + (2.0 * a + b * b + 1.0);
  r = r * z - 2.0 * a;
  r = r * z + a * a;
  return r;
}

}  // namespace kfp
