#include "qsdpnal/problem.hpp"

#include <cmath>

#include "qsdpnal/krylov.hpp"

namespace qsdpnal {

namespace {

using Trip = Eigen::Triplet<double>;

Eigen::Map<const Vector> flat(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

}  // namespace

double estimate_q_norm(const QOperator& q) {
  const Index n = q.n();
  if (q.kind() == QOperator::Kind::Zero || n == 0) return 0.0;
  LinearOp op = [&](const Vector& x, Vector& y) {
    Matrix xm = Eigen::Map<const Matrix>(x.data(), n, n);
    xm = 0.5 * (xm + xm.transpose());
    const Matrix qx = q.apply(xm);
    y = flat(qx);
  };
  return spectral_norm_estimate(op, n * n, 200);
}

// ---------------------------------------------------------------------------
// ConstraintMap

ConstraintMap::ConstraintMap(Index m, Index n,
                             const std::vector<ConstraintTriplet>& t)
    : n_(n), mat_(m, n * n) {
  require(m >= 0 && n >= 0, ErrorCode::InvalidInput,
          "ConstraintMap: negative dimension");
  std::vector<Trip> trips;
  trips.reserve(2 * t.size());
  for (const auto& e : t) {
    require(e.row >= 0 && e.row < m && e.i >= 0 && e.i < n && e.j >= 0 &&
                e.j < n,
            ErrorCode::InvalidInput, "ConstraintMap: triplet out of range");
    require(std::isfinite(e.value), ErrorCode::InvalidInput,
            "ConstraintMap: non-finite value");
    trips.emplace_back(e.row, e.i + n * e.j, e.value);
    if (e.i != e.j) trips.emplace_back(e.row, e.j + n * e.i, e.value);
  }
  mat_.setFromTriplets(trips.begin(), trips.end());
  mat_.makeCompressed();
}

ConstraintMap ConstraintMap::from_matrices(const std::vector<Matrix>& mats) {
  require(!mats.empty(), ErrorCode::InvalidInput,
          "from_matrices: empty list (use ConstraintMap(n))");
  const Index n = mats.front().rows();
  std::vector<ConstraintTriplet> t;
  for (std::size_t r = 0; r < mats.size(); ++r) {
    const Matrix a = make_symmetric(mats[r]);
    require(a.rows() == n, ErrorCode::InvalidInput,
            "from_matrices: inconsistent orders");
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i <= j; ++i)
        if (a(i, j) != 0.0)
          t.push_back({static_cast<Index>(r), i, j, a(i, j)});
  }
  return ConstraintMap(static_cast<Index>(mats.size()), n, t);
}

Vector apply_sparse_vec(const SparseRows& a, const Matrix& x) {
  require(a.cols() == x.size(), ErrorCode::InvalidInput,
          "constraint map: dimension mismatch");
  return a * flat(x);
}

Vector ConstraintMap::apply(const Matrix& x) const {
  require(x.rows() == n_ && x.cols() == n_, ErrorCode::InvalidInput,
          "ConstraintMap::apply: dimension mismatch");
  if (mat_.rows() == 0) return Vector();
  return mat_ * flat(x);
}

Matrix ConstraintMap::adjoint(const Vector& y) const {
  require(y.size() == mat_.rows(), ErrorCode::InvalidInput,
          "ConstraintMap::adjoint: dimension mismatch");
  if (mat_.rows() == 0) return Matrix::Zero(n_, n_);
  Vector v = mat_.transpose() * y;
  return Eigen::Map<Matrix>(v.data(), n_, n_);
}

std::vector<ConstraintTriplet> ConstraintMap::triplets() const {
  std::vector<ConstraintTriplet> out;
  for (Index r = 0; r < mat_.outerSize(); ++r)
    for (SparseRows::InnerIterator it(mat_, r); it; ++it) {
      const Index i = it.col() % n_;
      const Index j = it.col() / n_;
      if (i <= j && it.value() != 0.0) out.push_back({r, i, j, it.value()});
    }
  return out;
}

ConstraintMap ConstraintMap::scaled(double t) const {
  ConstraintMap out = *this;
  out.mat_ *= t;
  return out;
}

Vector ConstraintMap::row_norms() const {
  Vector out(mat_.rows());
  for (Index r = 0; r < mat_.outerSize(); ++r) out(r) = mat_.row(r).norm();
  return out;
}

// ---------------------------------------------------------------------------
// QOperator

QOperator QOperator::zero(Index n) {
  QOperator q;
  q.kind_ = Kind::Zero;
  q.n_ = n;
  return q;
}

QOperator QOperator::dense(Matrix svec_rep, Index n) {
  const Index dim = n * (n + 1) / 2;
  require(svec_rep.rows() == dim && svec_rep.cols() == dim,
          ErrorCode::InvalidInput, "QOperator::dense: size must be n(n+1)/2");
  QOperator q;
  q.kind_ = Kind::Dense;
  q.n_ = n;
  q.m1_ = make_symmetric(svec_rep);
  return q;
}

QOperator QOperator::hadamard_square(Matrix h) {
  QOperator q;
  q.kind_ = Kind::HadamardSquare;
  q.m1_ = make_symmetric(h);
  q.n_ = q.m1_.rows();
  q.weights_ = q.m1_.cwiseProduct(q.m1_);
  return q;
}

QOperator QOperator::bilinear_pair(Matrix a, Matrix b) {
  QOperator q;
  q.kind_ = Kind::BilinearPair;
  q.m1_ = make_symmetric(a);
  q.m2_ = make_symmetric(b);
  require(q.m1_.rows() == q.m2_.rows(), ErrorCode::InvalidInput,
          "QOperator::bilinear_pair: order mismatch");
  q.n_ = q.m1_.rows();
  for (const Matrix* m : {&q.m1_, &q.m2_}) {
    if (m->rows() == 0) continue;
    const double lmin = eig_sym(*m).values.minCoeff();
    require(lmin >= -1e-10 * (1.0 + m->norm()), ErrorCode::InvalidInput,
            "QOperator::bilinear_pair: factors must be PSD");
  }
  return q;
}

QOperator QOperator::gram_sum(ConstraintMap b) {
  QOperator q;
  q.kind_ = Kind::GramSum;
  q.n_ = b.n();
  q.gram_ = std::move(b);
  return q;
}

QOperator QOperator::scaled(double t) const {
  require(t > 0.0, ErrorCode::InvalidInput, "QOperator::scaled: t <= 0");
  QOperator q = *this;
  q.scale_ *= t;
  return q;
}

Matrix QOperator::apply(const Matrix& x) const {
  require(x.rows() == n_ && x.cols() == n_, ErrorCode::InvalidInput,
          "QOperator::apply: dimension mismatch");
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(n_, n_);
    case Kind::Dense:
      return smat(scale_ * (m1_ * svec(x)), n_);
    case Kind::HadamardSquare:
      return scale_ * weights_.cwiseProduct(x);
    case Kind::BilinearPair: {
      const Matrix t = m1_ * x * m2_;
      return (0.5 * scale_) * (t + t.transpose());
    }
    case Kind::GramSum:
      return scale_ * gram_.adjoint(gram_.apply(x));
  }
  return Matrix::Zero(n_, n_);
}

bool QOperator::is_entrywise() const {
  return kind_ == Kind::Zero || kind_ == Kind::HadamardSquare;
}

Matrix QOperator::diagonal() const {
  switch (kind_) {
    case Kind::Zero:
      return Matrix::Zero(n_, n_);
    case Kind::HadamardSquare:
      return scale_ * weights_;
    case Kind::BilinearPair: {
      const Vector da = m1_.diagonal();
      const Vector db = m2_.diagonal();
      return (0.5 * scale_) * (da * db.transpose() + db * da.transpose());
    }
    case Kind::GramSum: {
      const SparseRows& b = gram_.matrix();
      Vector col_sq = Vector::Zero(n_ * n_);
      for (Index r = 0; r < b.outerSize(); ++r)
        for (SparseRows::InnerIterator it(b, r); it; ++it)
          col_sq(it.col()) += it.value() * it.value();
      return scale_ * Eigen::Map<Matrix>(col_sq.data(), n_, n_);
    }
    case Kind::Dense: {
      Matrix out(n_, n_);
      Index k = 0;
      for (Index j = 0; j < n_; ++j)
        for (Index i = j; i < n_; ++i, ++k) {
          out(i, j) = scale_ * m1_(k, k);
          out(j, i) = out(i, j);
        }
      return out;
    }
  }
  return Matrix::Zero(n_, n_);
}

// ---------------------------------------------------------------------------
// QsdpProblem

void QsdpProblem::validate() const {
  require(n > 0, ErrorCode::InvalidInput, "problem: n must be positive");
  require(Q.n() == n, ErrorCode::InvalidInput, "problem: Q order mismatch");
  require(AE.n() == n || (AE.empty() && AE.n() == 0), ErrorCode::InvalidInput,
          "problem: AE order mismatch");
  require(bE.size() == AE.rows(), ErrorCode::InvalidInput,
          "problem: bE length mismatch");
  require(AI.n() == n || (AI.empty() && AI.n() == 0), ErrorCode::InvalidInput,
          "problem: AI order mismatch");
  require(bI.size() == AI.rows(), ErrorCode::InvalidInput,
          "problem: bI length mismatch");
  require(C.rows() == n && C.cols() == n, ErrorCode::InvalidInput,
          "problem: C order mismatch");
  require(C.allFinite() && (C - C.transpose()).cwiseAbs().maxCoeff() == 0.0,
          ErrorCode::InvalidInput, "problem: C must be finite and symmetric");
  require(bE.allFinite() && bI.allFinite(), ErrorCode::InvalidInput,
          "problem: non-finite right-hand side");
  if (K.kind() == PolyhedralSet::Kind::Box)
    require(K.lower().rows() == n, ErrorCode::InvalidInput,
            "problem: K order mismatch");
  if (ls) {
    require(ls->B.n() == n && ls->B.rows() > 0, ErrorCode::InvalidInput,
            "problem: least-squares map order mismatch");
    require(ls->d.size() == ls->B.rows() && ls->d.allFinite(),
            ErrorCode::InvalidInput, "problem: least-squares d mismatch");
    require(Q.kind() == QOperator::Kind::Zero ||
                (Q.kind() == QOperator::Kind::GramSum &&
                 Q.gram().rows() == ls->B.rows() && Q.scale() == 1.0),
            ErrorCode::InvalidInput,
            "problem: in least-squares mode Q must be Zero or B*B");
  }
}

QOperator QsdpProblem::effective_Q() const {
  if (ls) return QOperator::gram_sum(ls->B);
  return Q;
}

Matrix QsdpProblem::apply_Q(const Matrix& x) const {
  if (ls) return ls->B.adjoint(ls->B.apply(x));
  return Q.apply(x);
}

double QsdpProblem::objective(const Matrix& x) const {
  if (ls) return 0.5 * (ls->B.apply(x) - ls->d).squaredNorm() + inner(C, x);
  return 0.5 * inner(x, Q.apply(x)) + inner(C, x);
}

ConeElement project_cone(const ConeElement& a) {
  return {project_psd(a.M), a.v.cwiseMax(0.0)};
}

// ---------------------------------------------------------------------------
// Standard form

Vector StandardizedProblem::apply_A(const ConeElement& x) const {
  require(x.M.rows() == n && x.v.size() == mI, ErrorCode::InvalidInput,
          "apply_A: dimension mismatch");
  if (m() == 0) return Vector();
  Vector out = A.leftCols(n * n) * flat(x.M);
  if (mI > 0) out.tail(mI) += D.cwiseProduct(x.v);
  return out;
}

ConeElement StandardizedProblem::adjoint_A(const Vector& y) const {
  require(y.size() == m(), ErrorCode::InvalidInput,
          "adjoint_A: dimension mismatch");
  ConeElement out;
  if (m() == 0) return ConeElement::zero(n, mI);
  Vector v = A.leftCols(n * n).transpose() * y;
  out.M = Eigen::Map<Matrix>(v.data(), n, n);
  out.v = D.cwiseProduct(y.tail(mI));
  return out;
}

Matrix StandardizedProblem::apply_Q(const Matrix& w) const {
  return Q.apply(w);
}

Vector default_slack_scaling(const QsdpProblem& p) {
  return p.AI.row_norms().cwiseMax(1.0);
}

StandardizedProblem standardize_inequalities(const QsdpProblem& p,
                                             const Vector& d) {
  p.validate();
  require(d.size() == p.mI(), ErrorCode::InvalidInput,
          "standardize: D length must equal m_I");
  for (Index i = 0; i < d.size(); ++i)
    require(d(i) > 0.0 && std::isfinite(d(i)), ErrorCode::InvalidInput,
            "standardize: D must be strictly positive");

  StandardizedProblem sp;
  sp.n = p.n;
  sp.mE = p.mE();
  sp.mI = p.mI();
  sp.Q = p.effective_Q();
  sp.ls = p.ls;
  sp.C = p.C;
  if (p.ls) {
    sp.C -= p.ls->B.adjoint(p.ls->d);
    sp.C = 0.5 * (sp.C + sp.C.transpose());
  }
  sp.K = p.K;
  sp.D = d;
  sp.b.resize(sp.mE + sp.mI);
  sp.b << p.bE, p.bI;

  const Index nn = p.n * p.n;
  std::vector<Trip> trips;
  auto copy_rows = [&](const ConstraintMap& cm, Index offset) {
    const SparseRows& a = cm.matrix();
    for (Index r = 0; r < a.outerSize(); ++r)
      for (SparseRows::InnerIterator it(a, r); it; ++it)
        trips.emplace_back(offset + r, it.col(), it.value());
  };
  if (!p.AE.empty()) copy_rows(p.AE, 0);
  if (!p.AI.empty()) copy_rows(p.AI, sp.mE);
  for (Index i = 0; i < sp.mI; ++i)
    trips.emplace_back(sp.mE + i, nn + i, d(i));
  sp.A.resize(sp.mE + sp.mI, nn + sp.mI);
  sp.A.setFromTriplets(trips.begin(), trips.end());
  sp.A.makeCompressed();
  sp.q_norm = estimate_q_norm(sp.Q);
  sp.original = std::make_shared<const QsdpProblem>(p);
  return sp;
}

StandardizedProblem scale_data(const StandardizedProblem& sp) {
  StandardizedProblem out = sp;
  const double bs = std::max(1.0, sp.b.norm());
  const double cs = std::max(1.0, sp.C.norm());
  out.b_scale = sp.b_scale * bs;
  out.c_scale = sp.c_scale * cs;
  out.b = sp.b / bs;
  out.C = sp.C / cs;
  out.K = sp.K.scaled(1.0 / bs);
  const double qs = bs / cs;
  if (sp.ls) {
    out.ls->B = sp.ls->B.scaled(std::sqrt(qs));
    out.ls->d = sp.ls->d / std::sqrt(bs * cs);
    out.Q = QOperator::gram_sum(out.ls->B);
  } else if (sp.Q.kind() != QOperator::Kind::Zero) {
    out.Q = sp.Q.scaled(qs);
  }
  out.q_norm = sp.q_norm * qs;
  return out;
}

// ---------------------------------------------------------------------------
// A A^T

AatSolver::AatSolver(const SparseRows& a) {
  gram_ = Eigen::SparseMatrix<double>(a * a.transpose());
  if (gram_.rows() == 0) return;
  ldlt_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
  ldlt_->compute(gram_);
  if (ldlt_->info() != Eigen::Success) {
    singular_ = true;
    return;
  }
  const Vector piv = ldlt_->vectorD();
  const double dmax = piv.cwiseAbs().maxCoeff();
  if (!(piv.minCoeff() > 1e-12 * dmax)) singular_ = true;
}

AatSolver::Result AatSolver::solve(const Vector& r, double tol) const {
  require(r.size() == gram_.rows(), ErrorCode::InvalidInput,
          "AatSolver::solve: dimension mismatch");
  Result out;
  if (r.size() == 0) {
    out.y = Vector();
    return out;
  }
  if (!singular_) {
    out.y = ldlt_->solve(r);
    out.residual = (gram_ * out.y - r).norm();
    out.converged = true;
    return out;
  }
  LinearOp op = [this](const Vector& x, Vector& y) { y = gram_ * x; };
  const double eff_tol = std::max(tol, 1e-14 * r.norm());
  const int maxit = static_cast<int>(10 * r.size() + 200);
  KrylovResult kr = cg_solve(op, r, eff_tol, maxit);
  out.y = kr.x;
  out.residual = kr.residual_norm;
  out.converged = kr.converged;
  return out;
}

AatSolver aat_factorize(const ConstraintMap& a) {
  return AatSolver(a.matrix());
}

}  // namespace qsdpnal
