#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "qsdpnal/linalg.hpp"

namespace qsdpnal {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Entry (row, i, j, value) of a constraint matrix. Setting (i, j) also sets
/// (j, i); repeated entries accumulate.
struct ConstraintTriplet {
  Index row = 0;
  Index i = 0;
  Index j = 0;
  double value = 0.0;
};

/// X -> (<A_r, X>)_r for sparse symmetric A_r, stored as an m x n^2 row
/// matrix over the column-major vec(X).
class ConstraintMap {
 public:
  ConstraintMap() = default;
  explicit ConstraintMap(Index n) : n_(n), mat_(0, n * n) {}
  ConstraintMap(Index m, Index n, const std::vector<ConstraintTriplet>& t);
  static ConstraintMap from_matrices(const std::vector<Matrix>& mats);

  Index rows() const { return mat_.rows(); }
  Index n() const { return n_; }
  bool empty() const { return mat_.rows() == 0; }

  Vector apply(const Matrix& x) const;
  Matrix adjoint(const Vector& y) const;
  const SparseRows& matrix() const { return mat_; }

  /// Upper-triangular (i <= j) entries; re-reading them reproduces the map.
  std::vector<ConstraintTriplet> triplets() const;
  ConstraintMap scaled(double t) const;
  /// Frobenius norm of each A_r.
  Vector row_norms() const;

 private:
  Index n_ = 0;
  SparseRows mat_;
};

Vector apply_sparse_vec(const SparseRows& a, const Matrix& x);

class QOperator {
 public:
  enum class Kind { Zero, Dense, HadamardSquare, BilinearPair, GramSum };

  QOperator() = default;
  static QOperator zero(Index n);
  /// Symmetric PSD matrix acting on svec(X).
  static QOperator dense(Matrix svec_rep, Index n);
  /// X -> H o H o X.
  static QOperator hadamard_square(Matrix h);
  /// X -> (A X B + B X A) / 2.
  static QOperator bilinear_pair(Matrix a, Matrix b);
  /// X -> sum_i <B_i, X> B_i.
  static QOperator gram_sum(ConstraintMap b);

  Kind kind() const { return kind_; }
  Index n() const { return n_; }
  double scale() const { return scale_; }
  /// Same operator multiplied by t > 0.
  QOperator scaled(double t) const;

  Matrix apply(const Matrix& x) const;

  /// True when Q acts entrywise (Zero, HadamardSquare).
  bool is_entrywise() const;
  /// Entry weights w with Q(X) = w o X for entrywise kinds; otherwise the
  /// diagonal of Q in the entry basis, usable as a preconditioner.
  Matrix diagonal() const;

  const Matrix& dense_rep() const { return m1_; }
  const Matrix& h() const { return m1_; }
  const Matrix& a() const { return m1_; }
  const Matrix& b() const { return m2_; }
  const ConstraintMap& gram() const { return gram_; }

 private:
  Kind kind_ = Kind::Zero;
  Index n_ = 0;
  double scale_ = 1.0;
  Matrix m1_;
  Matrix m2_;
  Matrix weights_;  // H o H for HadamardSquare
  ConstraintMap gram_;
};

/// Power-method estimate of ||Q|| on symmetric matrices.
double estimate_q_norm(const QOperator& q);

/// Least-squares data: the quadratic term is (1/2)||B X - d||^2.
struct LeastSquaresData {
  ConstraintMap B;
  Vector d;
};

struct QsdpProblem {
  Index n = 0;
  QOperator Q;
  ConstraintMap AE;
  Vector bE;
  ConstraintMap AI;
  Vector bI;
  Matrix C;
  PolyhedralSet K;
  std::optional<LeastSquaresData> ls;
  /// Optional reference solution kept by generators (e.g. sensor positions).
  std::optional<Matrix> ground_truth;

  Index mE() const { return AE.rows(); }
  Index mI() const { return AI.rows(); }
  bool ls_mode() const { return ls.has_value(); }

  /// Throws InvalidInput on any dimensional or structural inconsistency.
  void validate() const;

  /// Quadratic operator of the objective (B*B in least-squares mode).
  QOperator effective_Q() const;
  Matrix apply_Q(const Matrix& x) const;
  Vector apply_AE(const Matrix& x) const { return AE.apply(x); }
  Vector apply_AI(const Matrix& x) const { return AI.apply(x); }
  Matrix adjoint_AE(const Vector& y) const { return AE.adjoint(y); }
  Matrix adjoint_AI(const Vector& y) const { return AI.adjoint(y); }

  /// (1/2)<X,QX> + <C,X>, or (1/2)||BX - d||^2 + <C,X> in least-squares mode.
  double objective(const Matrix& x) const;
};

/// Element of S^n x R^{mI}: matrix block plus slack block.
struct ConeElement {
  Matrix M;
  Vector v;

  static ConeElement zero(Index n, Index m) {
    return {Matrix::Zero(n, n), Vector::Zero(m)};
  }
  ConeElement& operator+=(const ConeElement& o) {
    M += o.M;
    v += o.v;
    return *this;
  }
  ConeElement& operator-=(const ConeElement& o) {
    M -= o.M;
    v -= o.v;
    return *this;
  }
  ConeElement& operator*=(double t) {
    M *= t;
    v *= t;
    return *this;
  }
};

inline ConeElement operator+(ConeElement a, const ConeElement& b) {
  return a += b;
}
inline ConeElement operator-(ConeElement a, const ConeElement& b) {
  return a -= b;
}
inline ConeElement operator*(double t, ConeElement a) { return a *= t; }

inline double inner(const ConeElement& a, const ConeElement& b) {
  return inner(a.M, b.M) + a.v.dot(b.v);
}
inline double norm(const ConeElement& a) {
  return std::sqrt(a.M.squaredNorm() + a.v.squaredNorm());
}
/// Projection onto S^n_+ x R^m_+.
ConeElement project_cone(const ConeElement& a);

/// Problem in equality standard form: inequalities A_I X <= b_I become
/// A_I X + D x = b_I with slack x >= 0. The data may additionally be scaled
/// (X = b_scale * X~, dual quantities = c_scale * dual~).
struct StandardizedProblem {
  Index n = 0;
  Index mE = 0;
  Index mI = 0;
  QOperator Q;  // B*B in least-squares mode
  std::optional<LeastSquaresData> ls;
  Matrix C;  // C - B*d in least-squares mode
  PolyhedralSet K;
  SparseRows A;  // m x (n*n + mI) over [vec(X); x]
  Vector b;
  Vector D;
  double b_scale = 1.0;
  double c_scale = 1.0;
  double q_norm = 0.0;  // power-method estimate of ||Q||
  std::shared_ptr<const QsdpProblem> original;

  Index m() const { return A.rows(); }
  bool ls_mode() const { return ls.has_value(); }

  Vector apply_A(const ConeElement& x) const;
  ConeElement adjoint_A(const Vector& y) const;
  Matrix apply_Q(const Matrix& w) const;
  Vector apply_B(const Matrix& x) const { return ls->B.apply(x); }
  Matrix adjoint_B(const Vector& u) const { return ls->B.adjoint(u); }
  /// Embeds a matrix as (M, 0).
  ConeElement lift(const Matrix& m) const {
    return {m, Vector::Zero(mI)};
  }
};

/// D_ii = max(1, ||A_{I,i}||_F).
Vector default_slack_scaling(const QsdpProblem& p);

StandardizedProblem standardize_inequalities(const QsdpProblem& p,
                                             const Vector& d);

/// Rescales b by max(1, ||b||) and C by max(1, ||C||) and adjusts Q, K and
/// the least-squares data accordingly.
StandardizedProblem scale_data(const StandardizedProblem& sp);

/// Solves (A A^T) y = r. Uses a sparse LDL^T factorization, or CG when the
/// Gram matrix is numerically singular.
class AatSolver {
 public:
  AatSolver() = default;
  explicit AatSolver(const SparseRows& a);

  bool singular() const { return singular_; }
  Index dim() const { return gram_.rows(); }

  struct Result {
    Vector y;
    double residual = 0.0;
    bool converged = true;
  };
  /// `tol` is used only by the CG fallback.
  Result solve(const Vector& r, double tol) const;

 private:
  Eigen::SparseMatrix<double> gram_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
  bool singular_ = false;
};

AatSolver aat_factorize(const ConstraintMap& a);

}  // namespace qsdpnal
