#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "kfp/errors.hpp"

namespace kfp {

using Complex = std::complex<double>;

template <class T>
using Vec4 = std::array<T, 4>;

// Fixed 4x4 matrix, row-major.
template <class T>
struct Mat4 {
  std::array<T, 16> data{};

  constexpr T& operator()(std::size_t i, std::size_t j) { return data[4 * i + j]; }
  constexpr const T& operator()(std::size_t i, std::size_t j) const { return data[4 * i + j]; }

  static constexpr Mat4 zero() { return Mat4{}; }
  static constexpr Mat4 identity() {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = T(1);
    return m;
  }
  static constexpr Mat4 from_rows(const std::array<std::array<T, 4>, 4>& rows) {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return m;
  }

  constexpr Mat4 transposed() const {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  constexpr T trace() const { return data[0] + data[5] + data[10] + data[15]; }

  constexpr Mat4& operator+=(const Mat4& o) {
    for (std::size_t i = 0; i < 16; ++i) data[i] += o.data[i];
    return *this;
  }
  constexpr Mat4& operator-=(const Mat4& o) {
    for (std::size_t i = 0; i < 16; ++i) data[i] -= o.data[i];
    return *this;
  }
  constexpr Mat4& operator*=(const T& s) {
    for (auto& x : data) x *= s;
    return *this;
  }

  friend constexpr Mat4 operator+(Mat4 l, const Mat4& r) { return l += r; }
  friend constexpr Mat4 operator-(Mat4 l, const Mat4& r) { return l -= r; }
  friend constexpr Mat4 operator*(Mat4 m, const T& s) { return m *= s; }
  friend constexpr Mat4 operator*(const T& s, Mat4 m) { return m *= s; }

  friend constexpr Mat4 operator*(const Mat4& l, const Mat4& r) {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        const T lik = l(i, k);
        for (std::size_t j = 0; j < 4; ++j) m(i, j) += lik * r(k, j);
      }
    return m;
  }

  friend constexpr Vec4<T> operator*(const Mat4& l, const Vec4<T>& v) {
    Vec4<T> out{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out[i] += l(i, j) * v[j];
    return out;
  }

  friend constexpr bool operator==(const Mat4&, const Mat4&) = default;
};

using Matrix4 = Mat4<double>;
using CMatrix4 = Mat4<Complex>;

CMatrix4 to_complex(const Matrix4& m);

// Largest absolute entry.
double max_abs(const Matrix4& m);
double max_abs(const CMatrix4& m);

double frobenius_norm(const Matrix4& m);

// The physical pair (a, b): electric and magnetic strength. a > 0, b any real.
class Params {
 public:
  Params(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double sqrt_a() const noexcept { return sqrt_a_; }

  Params with_b(double b) const { return Params(a_, b); }

 private:
  double a_;
  double b_;
  double sqrt_a_;
};

/// A = A1 + i A2 = 1 - b^2 - 4a - 2ib and its square root c = c1 + i c2 with
/// c1 >= 0 and sign(c2) = -sign(b) (c2 >= 0 when b = 0).
struct AuxQuantities {
  double a1;
  double a2;
  double abs_a;
  double c1;
  double c2;

  Complex A() const { return {a1, a2}; }
  Complex c() const { return {c1, c2}; }
};

Matrix4 build_matrix(const Params& p);

AuxQuantities compute_aux(const Params& p);

inline constexpr double kDefaultTol = 1e-12;

// Worst residual of c1^2 - c2^2 = A1, 2 c1 c2 = A2, c1^2 + c2^2 = |A|,
// relative to 1 + |A|.
double aux_residual(const AuxQuantities& aux);

inline bool aux_consistent(const AuxQuantities& aux, double tol = kDefaultTol) {
  return aux_residual(aux) <= tol;
}

// 1 - c1 computed as 4a / ((1 + c2^2)(1 + c1)).
double one_minus_c1(const Params& p, const AuxQuantities& aux);

// <x> = (1 + x^2)^{1/2}
double japanese_bracket(double x);

Complex characteristic_poly(const Params& p, Complex z);

}  // namespace kfp
