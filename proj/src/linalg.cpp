#include "qsdpnal/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qsdpnal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) fail(ErrorCode::InvalidInput, what);
}

// Eigenvalues this close to zero (relative to ||M||_F) are treated as
// nonpositive when forming the index set alpha.
constexpr double kZeroEigTol = 1e-14;

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IndefiniteOperator: return "IndefiniteOperator";
    case ErrorCode::LineSearchFailure: return "LineSearchFailure";
    case ErrorCode::Phase1Stalled: return "Phase1Stalled";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Matrix make_symmetric(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::InvalidInput,
          "symmetric matrix must be square");
  require_finite(m, "symmetric matrix has non-finite entries");
  return 0.5 * (m + m.transpose());
}

Vector svec(const Matrix& m) {
  const Index n = m.rows();
  Vector v(n * (n + 1) / 2);
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    v(k++) = m(j, j);
    for (Index i = j + 1; i < n; ++i) v(k++) = std::sqrt(2.0) * m(i, j);
  }
  return v;
}

Matrix smat(const Vector& v, Index n) {
  require(v.size() == n * (n + 1) / 2, ErrorCode::InvalidInput,
          "smat: length does not match order");
  Matrix m(n, n);
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    m(j, j) = v(k++);
    for (Index i = j + 1; i < n; ++i) {
      m(i, j) = v(k++) / std::sqrt(2.0);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

EigenDecomposition eig_sym(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::InvalidInput,
          "eig_sym: matrix must be square");
  require_finite(m, "eig_sym: non-finite entry");
  const Index n = m.rows();
  EigenDecomposition out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::InvalidInput, "eig_sym: eigensolver failed");
  // Eigen returns ascending order.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

PsdProjection psd_project(const Matrix& m) {
  PsdProjection out;
  SpectralProjJacobian& jac = out.jac;
  jac.decomp = eig_sym(m);
  const Vector& lam = jac.decomp.values;
  const Matrix& p = jac.decomp.vectors;
  const Index n = lam.size();

  const double tol = kZeroEigTol * m.norm();
  Index k = 0;
  while (k < n && lam(k) > tol) ++k;
  jac.num_positive = k;

  jac.sigma_weights = Matrix::Zero(n, n);
  jac.sigma_weights.topLeftCorner(k, k).setOnes();
  for (Index i = 0; i < k; ++i) {
    for (Index j = k; j < n; ++j) {
      const double lj = std::min(lam(j), 0.0);
      const double w = lam(i) / (lam(i) - lj);
      jac.sigma_weights(i, j) = w;
      jac.sigma_weights(j, i) = w;
    }
  }

  Index npos = 0;
  while (npos < n && lam(npos) > 0.0) ++npos;
  if (npos == 0) {
    out.proj = Matrix::Zero(n, n);
  } else {
    const auto pp = p.leftCols(npos);
    out.proj = pp * lam.head(npos).asDiagonal() * pp.transpose();
    out.proj = 0.5 * (out.proj + out.proj.transpose());
  }
  return out;
}

Matrix project_psd(const Matrix& m) {
  const Index n = m.rows();
  if (n == 0) return m;
  EigenDecomposition d = eig_sym(m);
  Index npos = 0;
  while (npos < n && d.values(npos) > 0.0) ++npos;
  if (npos == 0) return Matrix::Zero(n, n);
  const auto pp = d.vectors.leftCols(npos);
  Matrix out = pp * d.values.head(npos).asDiagonal() * pp.transpose();
  return 0.5 * (out + out.transpose());
}

Matrix proj_jacobian_apply(const SpectralProjJacobian& jac, const Matrix& h) {
  const Matrix& p = jac.decomp.vectors;
  const Index n = p.rows();
  require(h.rows() == n && h.cols() == n, ErrorCode::InvalidInput,
          "proj_jacobian_apply: dimension mismatch");
  if (jac.num_positive == 0) return Matrix::Zero(n, n);
  if (jac.num_positive == n) return h;
  Matrix t = p.transpose() * h * p;
  t = t.cwiseProduct(jac.sigma_weights);
  Matrix out = p * t * p.transpose();
  return 0.5 * (out + out.transpose());
}

PolyhedralSet PolyhedralSet::nonneg() {
  PolyhedralSet k;
  k.kind_ = Kind::Nonneg;
  return k;
}

PolyhedralSet PolyhedralSet::box(Matrix lower, Matrix upper) {
  require(lower.rows() == upper.rows() && lower.cols() == upper.cols() &&
              lower.rows() == lower.cols(),
          ErrorCode::InvalidInput, "box: bound shapes differ");
  for (Index j = 0; j < lower.cols(); ++j)
    for (Index i = 0; i < lower.rows(); ++i) {
      require(!std::isnan(lower(i, j)) && !std::isnan(upper(i, j)),
              ErrorCode::InvalidInput, "box: NaN bound");
      require(lower(i, j) <= upper(i, j), ErrorCode::InvalidInput,
              "box: lower bound exceeds upper bound");
      require(lower(i, j) == lower(j, i) && upper(i, j) == upper(j, i),
              ErrorCode::InvalidInput, "box: bounds must be symmetric");
    }
  PolyhedralSet k;
  k.kind_ = Kind::Box;
  k.lower_ = std::move(lower);
  k.upper_ = std::move(upper);
  return k;
}

PolyhedralSet PolyhedralSet::box(Index n, double lower, double upper) {
  return box(Matrix::Constant(n, n, lower), Matrix::Constant(n, n, upper));
}

PolyhedralSet PolyhedralSet::scaled(double t) const {
  require(t > 0.0, ErrorCode::InvalidInput, "scaled: factor must be positive");
  if (kind_ != Kind::Box) return *this;
  PolyhedralSet k = *this;
  k.lower_ *= t;
  k.upper_ *= t;
  return k;
}

Matrix box_project(const Matrix& m, const PolyhedralSet& k) {
  switch (k.kind()) {
    case PolyhedralSet::Kind::WholeSpace:
      return m;
    case PolyhedralSet::Kind::Nonneg:
      return m.cwiseMax(0.0);
    case PolyhedralSet::Kind::Box:
      require(k.lower().rows() == m.rows(), ErrorCode::InvalidInput,
              "box_project: dimension mismatch");
      return m.cwiseMax(k.lower()).cwiseMin(k.upper());
  }
  return m;
}

double support_function(const Matrix& z, const PolyhedralSet& k) {
  switch (k.kind()) {
    case PolyhedralSet::Kind::WholeSpace:
      return (z.array() == 0.0).all() ? 0.0 : kInf;
    case PolyhedralSet::Kind::Nonneg:
      return (z.array() <= 0.0).all() ? 0.0 : kInf;
    case PolyhedralSet::Kind::Box: {
      require(k.lower().rows() == z.rows(), ErrorCode::InvalidInput,
              "support_function: dimension mismatch");
      double total = 0.0;
      for (Index j = 0; j < z.cols(); ++j)
        for (Index i = 0; i < z.rows(); ++i) {
          const double zij = z(i, j);
          if (zij > 0.0) {
            if (std::isinf(k.upper()(i, j))) return kInf;
            total += zij * k.upper()(i, j);
          } else if (zij < 0.0) {
            if (std::isinf(k.lower()(i, j))) return kInf;
            total += zij * k.lower()(i, j);
          }
        }
      return total;
    }
  }
  return kInf;
}

Matrix prox_conjugate_via_moreau(const Matrix& x, double t,
                                 const PolyhedralSet& k) {
  require(t > 0.0, ErrorCode::InvalidInput,
          "prox_conjugate_via_moreau: t must be positive");
  return x - box_project(t * x, k) / t;
}

}  // namespace qsdpnal
