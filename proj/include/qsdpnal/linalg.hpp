#pragma once

#include <Eigen/Dense>

#include "qsdpnal/error.hpp"

namespace qsdpnal {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Validates finiteness and returns (M + M^T) / 2.
Matrix make_symmetric(const Matrix& m);

/// Trace inner product <A, B> for equally sized matrices.
inline double inner(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

/// Symmetric vectorization with sqrt(2)-scaled off-diagonals, so that
/// <svec(A), svec(B)> = <A, B>. Length n(n+1)/2, column-major lower triangle.
Vector svec(const Matrix& m);
Matrix smat(const Vector& v, Index n);

struct EigenDecomposition {
  Matrix vectors;  // orthonormal columns
  Vector values;   // nonincreasing
};

EigenDecomposition eig_sym(const Matrix& m);

/// Element U0 of the Clarke generalized Jacobian of the PSD projection at
/// the decomposed matrix: H -> P (Sigma o (P^T H P)) P^T.
struct SpectralProjJacobian {
  EigenDecomposition decomp;
  Index num_positive = 0;  // |alpha|; alpha is the leading block of indices
  Matrix sigma_weights;
};

struct PsdProjection {
  Matrix proj;
  SpectralProjJacobian jac;
};

PsdProjection psd_project(const Matrix& m);

/// Projection only, skipping the Jacobian weights.
Matrix project_psd(const Matrix& m);

Matrix proj_jacobian_apply(const SpectralProjJacobian& jac, const Matrix& h);

/// Box-type polyhedral set {X : L <= X <= U} (entries may be infinite).
class PolyhedralSet {
 public:
  enum class Kind { WholeSpace, Box, Nonneg };

  PolyhedralSet() = default;
  static PolyhedralSet whole_space() { return {}; }
  static PolyhedralSet nonneg();
  static PolyhedralSet box(Matrix lower, Matrix upper);
  /// Box with uniform scalar bounds on every entry of an n x n matrix.
  static PolyhedralSet box(Index n, double lower, double upper);

  Kind kind() const { return kind_; }
  const Matrix& lower() const { return lower_; }
  const Matrix& upper() const { return upper_; }

  /// Returns the set scaled by a positive factor: {t X : X in K}.
  PolyhedralSet scaled(double t) const;

 private:
  Kind kind_ = Kind::WholeSpace;
  Matrix lower_;
  Matrix upper_;
};

Matrix box_project(const Matrix& m, const PolyhedralSet& k);

/// sup_{X in K} <Z, X>; returns +infinity when unbounded.
double support_function(const Matrix& z, const PolyhedralSet& k);

/// Prox of the support function scaled by 1/t, via x - (1/t) Pi_K(t x).
Matrix prox_conjugate_via_moreau(const Matrix& x, double t,
                                 const PolyhedralSet& k);

}  // namespace qsdpnal
