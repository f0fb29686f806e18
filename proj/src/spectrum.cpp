#include "kfp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kfp {
namespace {

constexpr double kDedupTol = 1e-12;

// Both roots of z^2 + B z + C without cancellation.
std::array<Complex, 2> quadratic_roots(Complex B, Complex C) {
  const Complex root = std::sqrt(B * B - 4.0 * C);
  const Complex plus = B + root;
  const Complex minus = B - root;
  const Complex big = std::abs(plus) >= std::abs(minus) ? plus : minus;
  if (big == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  const Complex z1 = -0.5 * big;
  return {z1, C / z1};
}

}  // namespace

QuarticCoeffs QuarticCoeffs::from_params(const Params& params) {
  const double a = params.a();
  const double b2 = params.b() * params.b();
  return {0.5 * (2.0 * b2 + 4.0 * a - 1.0), b2, (4.0 * b2 + 16.0 * a * a - 8.0 * a + 1.0) / 16.0};
}

Spectrum eigenvalues_closed_form(const Params& p) {
  const AuxQuantities aux = compute_aux(p);
  // b = -c1 c2 turns b + c2 into c2 (1 - c1) and b - c2 into -c2 (1 + c1).
  const double lo = 0.5 * one_minus_c1(p, aux);
  const double hi = 0.5 * (1.0 + aux.c1);
  const Complex l1{lo, -lo * aux.c2};
  const Complex l2{hi, hi * aux.c2};
  return {{l1, l2, std::conj(l1), std::conj(l2)}};
}

double resolvent_cubic(const QuarticCoeffs& c, double y) {
  return -8.0 * y * y * y + 4.0 * c.p * y * y + 8.0 * c.r * y - 4.0 * c.p * c.r + c.q * c.q;
}

std::array<Complex, 4> solve_quartic_ferrari(const QuarticCoeffs& c, double y0) {
  const double scale = 8.0 * std::abs(y0 * y0 * y0) + 4.0 * std::abs(c.p) * y0 * y0 +
                       8.0 * std::abs(c.r * y0) + 4.0 * std::abs(c.p * c.r) + c.q * c.q;
  const double res = resolvent_cubic(c, y0);
  if (std::abs(res) > 1e-9 * scale)
    throw ResolventMismatch("y0 = " + std::to_string(y0) + " is not a resolvent root (residual " +
                            std::to_string(res) + ")");

  const double s2 = 2.0 * y0 - c.p;
  if (std::abs(s2) < 1e-13) {
    const auto w = quadratic_roots(Complex(c.p), Complex(c.r));
    const Complex z1 = std::sqrt(w[0]);
    const Complex z2 = std::sqrt(w[1]);
    return {-z1, z1, -z2, z2};
  }

  const Complex s = std::sqrt(Complex(s2));
  const Complex shift = c.q / (2.0 * s);
  const auto first = quadratic_roots(s, y0 - shift);
  const auto second = quadratic_roots(-s, y0 + shift);
  return {first[0], first[1], second[0], second[1]};
}

double spectral_abscissa(const Params& p) { return 0.5 * one_minus_c1(p, compute_aux(p)); }

Spectrum eigenvalue_asymptotics_large_b(const Params& p) {
  const double b = p.b();
  if (b == 0.0) throw DomainError("large-b asymptotics need b != 0");
  const double a = p.a();
  const Complex l1{a / (b * b), a / b};
  const Complex l2{1.0 - a / (b * b), -(b + a / b)};
  return {{l1, l2, std::conj(l1), std::conj(l2)}};
}

std::array<Vec4<Complex>, 4> eigenvectors(const Params& p) {
  const double b = p.b();
  if (b == 0.0) throw DomainError("eigenvector formula divides by b; use eigenvectors_zero_field");
  const double a = p.a();
  const double s = p.sqrt_a();
  const Spectrum spec = eigenvalues_closed_form(p);
  std::array<Vec4<Complex>, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    const Complex l = spec[j];
    const Complex q = l * l - l + a;
    out[j] = {q / (b * s), -l / s, -q / (b * l), Complex(1.0)};
  }
  return out;
}

CMatrix4 eigenvectors_zero_field(const Params& p) {
  if (p.b() != 0.0) throw DomainError("zero-field basis requires b = 0");
  const AuxQuantities aux = compute_aux(p);
  if (aux.abs_a <= 1e-14) throw DomainError("a = 1/4 at b = 0 is a Jordan block, no eigenbasis");
  const Spectrum spec = eigenvalues_closed_form(p);
  const double s = p.sqrt_a();
  const Complex u = -spec[0] / s;
  const Complex w = -spec[1] / s;
  const Complex o{0.0};
  const Complex one{1.0};
  return CMatrix4::from_rows({{
      {o, u, o, w},
      {u, o, w, o},
      {o, one, o, one},
      {one, o, one, o},
  }});
}

double projector_norm(const Params& p, int j) {
  if (j < 1 || j > 4) throw std::out_of_range("projector index must be in 1..4");
  if (p.b() == 0.0) throw DomainError("spectral projectors need distinct eigenvalues (b != 0)");
  const Complex l = eigenvalues_closed_form(p)[static_cast<std::size_t>(j - 1)];
  const double num = p.a() + std::norm(l);
  const double den = std::abs(p.a() - l * l);
  if (den < 1e-14 * num) throw DegenerateSpectrum("a - lambda^2 vanishes");
  return num / den;
}

std::vector<Complex> operator_spectrum_multiindex(const Params& p, int kmax) {
  if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  const Spectrum spec = eigenvalues_closed_form(p);
  std::vector<Complex> all;
  const int n = kmax + 1;
  all.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2)
      for (int k3 = 0; k3 < n; ++k3)
        for (int k4 = 0; k4 < n; ++k4)
          all.push_back(double(k1) * spec[0] + double(k2) * spec[1] + double(k3) * spec[2] +
                        double(k4) * spec[3]);

  std::sort(all.begin(), all.end(), [](const Complex& x, const Complex& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });

  std::vector<Complex> out;
  for (const Complex& z : all) {
    bool duplicate = false;
    for (auto it = out.rbegin(); it != out.rend() && z.real() - it->real() <= kDedupTol; ++it) {
      if (std::abs(z.imag() - it->imag()) <= kDedupTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(z);
  }
  return out;
}

}  // namespace kfp
