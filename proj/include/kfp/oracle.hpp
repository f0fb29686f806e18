#pragma once

// Brute-force references that know nothing about the closed forms: Taylor
// scaling-and-squaring for the exponential, cyclic Jacobi for symmetric
// eigenvalues, cofactor expansion for determinants.

#include <utility>

#include "kfp/core.hpp"

namespace kfp::oracle {

struct OracleConfig {
  int taylor_terms = 30;  // >= 20
  int squarings = -1;     // < 0: smallest s with ||m|| / 2^s <= 1/2
  int svd_sweeps = 64;    // Jacobi sweep cap
  double tol = 1e-14;     // Jacobi off-diagonal threshold, relative

  void validate() const;
};

/// e^m. Throws Overflow when the 1-norm of m exceeds 1e8.
Matrix4 expm(const Matrix4& m, const OracleConfig& cfg = {});

/// Eigenvalues of a symmetric matrix in ascending order.
Vec4<double> symmetric_eigenvalues(const Matrix4& sym, const OracleConfig& cfg = {});

/// Largest singular value: sqrt of the top eigenvalue of m^T m.
double operator_norm(const Matrix4& m, const OracleConfig& cfg = {});

/// Double eigenvalues beta4 -/+ sqrt(beta1^2 + beta2^2 + beta3^2) of
/// beta1 (H_vv - H_xx) + beta2 K + beta3 J_J + beta4 I.
std::pair<double, double> intermediate_class_eigs(double beta1, double beta2, double beta3, double beta4);

Matrix4 intermediate_class_matrix(double beta1, double beta2, double beta3, double beta4);

double determinant(const Matrix4& m);
Complex determinant(const CMatrix4& m);

}  // namespace kfp::oracle
