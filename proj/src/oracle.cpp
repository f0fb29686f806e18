#include "kfp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kfp/basis.hpp"

namespace kfp::oracle {
namespace {

double one_norm(const Matrix4& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < 4; ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

template <class T>
T det3(const Mat4<T>& m, std::size_t skip_row, std::size_t skip_col) {
  std::size_t rows[3];
  std::size_t cols[3];
  for (std::size_t i = 0, r = 0, c = 0; i < 4; ++i) {
    if (i != skip_row) rows[r++] = i;
    if (i != skip_col) cols[c++] = i;
  }
  auto at = [&](int i, int j) { return m(rows[i], cols[j]); };
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

template <class T>
T det4(const Mat4<T>& m) {
  T d{};
  for (std::size_t j = 0; j < 4; ++j) {
    const T minor = det3(m, 0, j);
    d += (j % 2 == 0 ? m(0, j) : -m(0, j)) * minor;
  }
  return d;
}

}  // namespace

void OracleConfig::validate() const {
  if (taylor_terms < 20) throw std::invalid_argument("taylor_terms must be >= 20");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (svd_sweeps < 1) throw std::invalid_argument("svd_sweeps must be >= 1");
}

Matrix4 expm(const Matrix4& m, const OracleConfig& cfg) {
  cfg.validate();
  for (double x : m.data)
    if (!std::isfinite(x)) throw DomainError("expm input must be finite");
  const double norm = one_norm(m);
  if (norm > 1e8) throw Overflow("expm input norm " + std::to_string(norm) + " exceeds 1e8");

  int s = cfg.squarings;
  if (s < 0) {
    s = 0;
    while (std::ldexp(norm, -s) > 0.5) ++s;
  }
  const Matrix4 x = m * std::ldexp(1.0, -s);

  Matrix4 sum = Matrix4::identity();
  Matrix4 term = Matrix4::identity();
  for (int k = 1; k <= cfg.taylor_terms; ++k) {
    term = term * x;
    term *= 1.0 / k;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

Vec4<double> symmetric_eigenvalues(const Matrix4& sym, const OracleConfig& cfg) {
  cfg.validate();
  Matrix4 a = sym;
  const double scale = frobenius_norm(a);
  auto off_max = [&a] {
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) r = std::max(r, std::abs(a(i, j)));
    return r;
  };

  bool converged = off_max() <= cfg.tol * scale;
  for (int sweep = 0; sweep < cfg.svd_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 4; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
    converged = off_max() <= cfg.tol * scale;
  }
  if (!converged) throw NoConvergence("Jacobi did not converge within " + std::to_string(cfg.svd_sweeps) + " sweeps");

  Vec4<double> eig{a(0, 0), a(1, 1), a(2, 2), a(3, 3)};
  std::sort(eig.begin(), eig.end());
  return eig;
}

double operator_norm(const Matrix4& m, const OracleConfig& cfg) {
  const Vec4<double> eig = symmetric_eigenvalues(m.transposed() * m, cfg);
  return std::sqrt(std::max(0.0, eig[3]));
}

std::pair<double, double> intermediate_class_eigs(double beta1, double beta2, double beta3, double beta4) {
  const double r = std::hypot(std::hypot(beta1, beta2), beta3);
  return {beta4 - r, beta4 + r};
}

Matrix4 intermediate_class_matrix(double beta1, double beta2, double beta3, double beta4) {
  const Matrix4 hvv = basis_matrix(BasisTag::Hvv).entries;
  const Matrix4 hxx = basis_matrix(BasisTag::Hxx).entries;
  return beta1 * (hvv - hxx) + beta2 * basis_matrix(BasisTag::K).entries +
         beta3 * basis_matrix(BasisTag::JJ).entries + beta4 * Matrix4::identity();
}

double determinant(const Matrix4& m) { return det4(m); }

Complex determinant(const CMatrix4& m) { return det4(m); }

}  // namespace kfp::oracle
