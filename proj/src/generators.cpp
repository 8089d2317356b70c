#include "qsdpnal/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

namespace qsdpnal {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double normal(Rng& rng) { return std::normal_distribution<double>()(rng); }

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Matrix read_matrix(std::istream& in, Index rows, Index cols,
                   const std::string& what) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) fail(ErrorCode::Parse, what + ": truncated matrix");
  return m;
}

std::ifstream open_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return in;
}

}  // namespace

Matrix random_correlation(Index n, Rng& rng, Index samples) {
  require(n >= 1, ErrorCode::InvalidInput, "random_correlation: n must be >= 1");
  if (samples <= 0) samples = 2 * n + 10;
  Vector beta(n);
  for (Index i = 0; i < n; ++i) beta(i) = uniform(rng, 0.3, 1.0);
  Matrix r(samples, n);
  for (Index t = 0; t < samples; ++t) {
    const double f = normal(rng);
    for (Index i = 0; i < n; ++i) r(t, i) = beta(i) * f + normal(rng);
  }
  r.rowwise() -= r.colwise().mean();
  Matrix cov = r.transpose() * r;
  const Vector s = cov.diagonal().cwiseSqrt().cwiseInverse();
  Matrix corr = s.asDiagonal() * cov * s.asDiagonal();
  corr = 0.5 * (corr + corr.transpose());
  corr.diagonal().setOnes();
  return corr;
}

// ---------------------------------------------------------------------------

Matrix ncm_weight_block(std::uint64_t seed) {
  constexpr Index kBlock = 93;
  Rng rng(seed);
  Matrix h(kBlock, kBlock);
  for (Index j = 0; j < kBlock; ++j)
    for (Index i = 0; i <= j; ++i) {
      const double v =
          uniform(rng, 0.0, 1.0) < 0.24 ? 1e-5 : uniform(rng, 2.0, 1.28e3);
      h(i, j) = v;
      h(j, i) = v;
    }
  return h;
}

QsdpProblem ncm_problem(const Matrix& h, const Matrix& g,
                        const PolyhedralSet& k) {
  const Index n = h.rows();
  require(h.cols() == n && g.rows() == n && g.cols() == n,
          ErrorCode::InvalidInput, "ncm_problem: shape mismatch");
  const Matrix hs = make_symmetric(h);
  const Matrix gs = make_symmetric(g);
  QsdpProblem p;
  p.n = n;
  p.Q = QOperator::hadamard_square(hs);
  Matrix c = -(hs.cwiseProduct(hs).cwiseProduct(gs));
  p.C = 0.5 * (c + c.transpose());
  std::vector<ConstraintTriplet> t;
  for (Index i = 0; i < n; ++i) t.push_back({i, i, i, 1.0});
  p.AE = ConstraintMap(n, n, t);
  p.bE = Vector::Ones(n);
  p.AI = ConstraintMap(n);
  p.bI = Vector();
  p.K = k;
  p.validate();
  return p;
}

QsdpProblem gen_ncm(Index n, double alpha, const NcmWeight& weight,
                    const PolyhedralSet& k, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidInput, "gen_ncm: n must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidInput,
          "gen_ncm: alpha must lie in (0, 1)");
  Rng rng(seed);
  const Matrix ghat = random_correlation(n, rng);
  Matrix e(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      e(i, j) = uniform(rng, -1.0, 1.0);
      e(j, i) = e(i, j);
    }
  e.diagonal().setOnes();
  const Matrix g = (1.0 - alpha) * ghat + alpha * e;

  Matrix h(n, n);
  if (weight.kind == NcmWeight::Kind::Uniform) {
    require(weight.lo >= 0.0 && weight.hi >= weight.lo,
            ErrorCode::InvalidInput, "gen_ncm: need 0 <= lo <= hi");
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i <= j; ++i) {
        h(i, j) = uniform(rng, weight.lo, weight.hi);
        h(j, i) = h(i, j);
      }
  } else {
    const Matrix h0 = ncm_weight_block(weight.seed);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) h(i, j) = h0(i % 93, j % 93);
  }
  if (k.kind() == PolyhedralSet::Kind::Box)
    require(k.lower().rows() == n, ErrorCode::InvalidInput,
            "gen_ncm: K order mismatch");
  return ncm_problem(h, g, k);
}

// ---------------------------------------------------------------------------

BiqData random_biq_data(Index l, double density, std::uint64_t seed) {
  require(l >= 2, ErrorCode::InvalidInput, "random_biq_data: l must be >= 2");
  require(density > 0.0 && density <= 1.0, ErrorCode::InvalidInput,
          "random_biq_data: density must lie in (0, 1]");
  Rng rng(seed);
  BiqData d{Matrix::Zero(l, l), Vector::Zero(l)};
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i <= j; ++i) {
      if (uniform(rng, 0.0, 1.0) >= density) continue;
      const double v = uniform_int(rng, -100, 100);
      if (i == j) {
        d.c(i) = v;
      } else {
        d.Q0(i, j) = v;
        d.Q0(j, i) = v;
      }
    }
  return d;
}

BiqData load_biq(const std::string& path) {
  std::ifstream in = open_text(path);
  Index l = 0, m = 0;
  if (!(in >> l >> m) || l < 2 || m < 0)
    fail(ErrorCode::Parse, path + ": bad header");
  BiqData d{Matrix::Zero(l, l), Vector::Zero(l)};
  for (Index e = 0; e < m; ++e) {
    Index i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) fail(ErrorCode::Parse, path + ": truncated");
    if (i < 1 || j < 1 || i > l || j > l)
      fail(ErrorCode::Parse, path + ": index out of range");
    --i;
    --j;
    if (i == j) {
      d.c(i) += v;
    } else {
      d.Q0(i, j) += v;
      d.Q0(j, i) += v;
    }
  }
  return d;
}

QsdpProblem gen_biq(const BiqData& data, std::uint64_t corr_seed) {
  const Index l = data.Q0.rows();
  require(l >= 2 && data.Q0.cols() == l && data.c.size() == l,
          ErrorCode::InvalidInput, "gen_biq: need l >= 2 and matching c");
  const Matrix q0 = make_symmetric(data.Q0);
  const Index n = l + 1;
  QsdpProblem p;
  p.n = n;

  std::vector<ConstraintTriplet> te;
  for (Index i = 0; i < l; ++i) {
    te.push_back({i, i, i, 1.0});
    te.push_back({i, i, l, -0.5});
  }
  te.push_back({l, l, l, 1.0});
  p.AE = ConstraintMap(l + 1, n, te);
  p.bE = Vector::Zero(l + 1);
  p.bE(l) = 1.0;

  std::vector<ConstraintTriplet> ti;
  std::vector<double> bi;
  Index r = 0;
  for (Index j = 1; j + 1 < l; ++j)
    for (Index i = 0; i < j; ++i) {
      ti.push_back({r, i, j, 0.5});
      ti.push_back({r, i, l, -0.5});
      bi.push_back(0.0);
      ++r;
      ti.push_back({r, i, j, 0.5});
      ti.push_back({r, j, l, -0.5});
      bi.push_back(0.0);
      ++r;
      ti.push_back({r, i, j, -0.5});
      ti.push_back({r, i, l, 0.5});
      ti.push_back({r, j, l, 0.5});
      bi.push_back(1.0);
      ++r;
    }
  p.AI = ConstraintMap(r, n, ti);
  p.bI = Eigen::Map<const Vector>(bi.data(), r);

  p.C = Matrix::Zero(n, n);
  p.C.topLeftCorner(l, l) = 0.5 * q0;
  p.C.col(l).head(l) = 0.5 * data.c;
  p.C.row(l).head(l) = 0.5 * data.c.transpose();

  Rng rng(corr_seed);
  const Matrix a = random_correlation(n, rng);
  const Matrix b = random_correlation(n, rng);
  p.Q = QOperator::bilinear_pair(a, b);
  p.K = PolyhedralSet::nonneg();
  p.validate();
  return p;
}

double biq_binary_value(const QsdpProblem& p, const Vector& x) {
  const Index l = p.n - 1;
  require(x.size() == l, ErrorCode::InvalidInput,
          "biq_binary_value: length mismatch");
  Vector z(l + 1);
  z << x, 1.0;
  return p.objective(z * z.transpose());
}

// ---------------------------------------------------------------------------

QapData random_qap_data(Index l, std::uint64_t seed) {
  require(l >= 2, ErrorCode::InvalidInput, "random_qap_data: l must be >= 2");
  Rng rng(seed);
  QapData d{Matrix::Zero(l, l), Matrix::Zero(l, l)};
  std::vector<std::pair<int, int>> pos(l);
  for (auto& q : pos) q = {uniform_int(rng, 0, 4), uniform_int(rng, 0, 4)};
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i < j; ++i) {
      d.A1(i, j) = d.A1(j, i) = uniform_int(rng, 0, 9);
      d.A2(i, j) = d.A2(j, i) = std::abs(pos[i].first - pos[j].first) +
                                std::abs(pos[i].second - pos[j].second);
    }
  return d;
}

QapData load_qap(const std::string& path) {
  std::ifstream in = open_text(path);
  Index l = 0;
  if (!(in >> l) || l < 2) fail(ErrorCode::Parse, path + ": bad header");
  QapData d;
  d.A1 = read_matrix(in, l, l, path);
  d.A2 = read_matrix(in, l, l, path);
  return d;
}

QsdpProblem gen_qap(const QapData& data, std::uint64_t corr_seed) {
  const Index l = data.A1.rows();
  require(l >= 2 && data.A1.cols() == l && data.A2.rows() == l &&
              data.A2.cols() == l,
          ErrorCode::InvalidInput, "gen_qap: A1, A2 must be l x l, l >= 2");
  const Index n = l * l;
  QsdpProblem p;
  p.n = n;

  std::vector<ConstraintTriplet> t;
  std::vector<double> b;
  Index r = 0;
  auto at = [l](Index blk, Index k) { return blk * l + k; };
  // sum_i X^{ii} = I
  for (Index bb = 0; bb < l; ++bb)
    for (Index a = 0; a <= bb; ++a) {
      for (Index i = 0; i < l; ++i)
        t.push_back({r, at(i, a), at(i, bb), a == bb ? 1.0 : 0.5});
      b.push_back(a == bb ? 1.0 : 0.0);
      ++r;
    }
  // <I, X^{ij}> = delta_ij
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i <= j; ++i) {
      for (Index k = 0; k < l; ++k)
        t.push_back({r, at(i, k), at(j, k), i == j ? 1.0 : 0.5});
      b.push_back(i == j ? 1.0 : 0.0);
      ++r;
    }
  // <E, X^{ij}> = 1
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i <= j; ++i) {
      for (Index q = 0; q < l; ++q)
        for (Index pp = 0; pp < l; ++pp) {
          if (i == j) {
            if (pp <= q) t.push_back({r, at(i, pp), at(i, q), 1.0});
          } else {
            t.push_back({r, at(i, pp), at(j, q), 0.5});
          }
        }
      b.push_back(1.0);
      ++r;
    }
  p.AE = ConstraintMap(r, n, t);
  p.bE = Eigen::Map<const Vector>(b.data(), r);
  p.AI = ConstraintMap(n);
  p.bI = Vector();

  Matrix c(n, n);
  for (Index i = 0; i < l; ++i)
    for (Index j = 0; j < l; ++j)
      c.block(i * l, j * l, l, l) = data.A2(i, j) * data.A1;
  p.C = 0.5 * (c + c.transpose());

  Rng rng(corr_seed);
  const Matrix a = random_correlation(n, rng);
  const Matrix bm = random_correlation(n, rng);
  p.Q = QOperator::bilinear_pair(a, bm);
  p.K = PolyhedralSet::nonneg();
  p.validate();
  return p;
}

Vector qap_perm_vector(const std::vector<int>& perm) {
  const Index l = static_cast<Index>(perm.size());
  Vector v = Vector::Zero(l * l);
  for (Index i = 0; i < l; ++i) {
    require(perm[i] >= 0 && perm[i] < l, ErrorCode::InvalidInput,
            "qap_perm_vector: entry out of range");
    v(i * l + perm[i]) = 1.0;
  }
  return v;
}

// ---------------------------------------------------------------------------

QsdpProblem gen_snl(const SnlParams& prm) {
  require(prm.d == 2 || prm.d == 3, ErrorCode::InvalidInput,
          "gen_snl: d must be 2 or 3");
  require(prm.l >= 2 && prm.R > 0.0 && prm.tau_noise >= 0.0 &&
              prm.lambda >= 0.0,
          ErrorCode::InvalidInput, "gen_snl: parameter out of range");
  const int d = prm.d;
  const Index l = prm.l;
  const Index n = l + d;
  constexpr Index m = 4;

  Matrix anchors(d, m);
  if (d == 2) {
    anchors << 0.3, 0.3, -0.3, -0.3, 0.3, -0.3, 0.3, -0.3;
  } else {
    anchors << 1, 2, 2, 1, 1, 2, 1, 2, 1, 1, 2, 2;
    anchors = anchors / 3.0 - Matrix::Constant(d, m, 0.5);
  }

  Rng rng(prm.seed);
  Matrix u(d, l);
  for (Index i = 0; i < l; ++i)
    for (int c = 0; c < d; ++c) u(c, i) = uniform(rng, -0.5, 0.5);

  std::vector<std::pair<Index, Index>> edges;
  std::vector<std::set<Index>> nbr(l);
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i < j; ++i)
      if ((u.col(i) - u.col(j)).norm() <= prm.R) {
        edges.emplace_back(i, j);
        nbr[i].insert(j);
        nbr[j].insert(i);
      }
  require(!edges.empty(), ErrorCode::InvalidInput,
          "gen_snl: no sensor pair within radius R");
  std::vector<std::pair<Index, Index>> anchored;
  for (Index i = 0; i < l; ++i)
    for (Index k = 0; k < m; ++k)
      if ((u.col(i) - anchors.col(k)).norm() <= prm.R)
        anchored.emplace_back(i, k);

  if (prm.lambda > 0.0) {
    // Every sensor must reach an anchor, otherwise the trace reward is
    // unbounded.
    std::vector<char> seen(l, 0);
    std::vector<Index> stack;
    for (const auto& [i, k] : anchored)
      if (!seen[i]) {
        seen[i] = 1;
        stack.push_back(i);
      }
    while (!stack.empty()) {
      const Index i = stack.back();
      stack.pop_back();
      for (Index j : nbr[i])
        if (!seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    require(std::all_of(seen.begin(), seen.end(), [](char s) { return s; }),
            ErrorCode::InvalidInput,
            "gen_snl: a sensor is not connected to any anchor");
  }

  // Distances on N carry multiplicative noise; anchor distances are exact.
  LeastSquaresData ls;
  std::vector<ConstraintTriplet> tb;
  ls.d.resize(static_cast<Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    const Index r = static_cast<Index>(e);
    tb.push_back({r, i, i, 1.0});
    tb.push_back({r, j, j, 1.0});
    tb.push_back({r, i, j, -1.0});
    const double dist =
        (u.col(i) - u.col(j)).norm() * std::abs(1.0 + prm.tau_noise * normal(rng));
    ls.d(r) = dist * dist;
  }
  ls.B = ConstraintMap(static_cast<Index>(edges.size()), n, tb);

  std::vector<ConstraintTriplet> te;
  std::vector<double> be;
  Index r = 0;
  for (const auto& [i, k] : anchored) {
    const Vector a = anchors.col(k);
    te.push_back({r, i, i, 1.0});
    for (int c = 0; c < d; ++c) {
      te.push_back({r, i, l + c, -a(c)});
      for (int c2 = c; c2 < d; ++c2)
        te.push_back({r, l + c, l + c2, a(c) * a(c2)});
    }
    be.push_back((u.col(i) - a).squaredNorm());
    ++r;
  }
  for (int c2 = 0; c2 < d; ++c2)
    for (int c = 0; c <= c2; ++c) {
      te.push_back({r, l + c, l + c2, c == c2 ? 1.0 : 0.5});
      be.push_back(c == c2 ? 1.0 : 0.0);
      ++r;
    }

  QsdpProblem p;
  p.n = n;
  p.Q = QOperator::zero(n);
  p.ls = std::move(ls);
  p.AE = ConstraintMap(r, n, te);
  p.bE = Eigen::Map<const Vector>(be.data(), r);

  std::vector<ConstraintTriplet> ti;
  std::vector<double> bi;
  if (prm.with_inequalities) {
    std::set<std::pair<Index, Index>> hat;
    for (Index i = 0; i < l; ++i)
      for (Index pn : nbr[i])
        for (Index j : nbr[pn])
          if (j != i && !nbr[i].count(j))
            hat.insert({std::min(i, j), std::max(i, j)});
    Index q = 0;
    for (const auto& [i, j] : hat) {
      ti.push_back({q, i, i, -1.0});
      ti.push_back({q, j, j, -1.0});
      ti.push_back({q, i, j, 1.0});
      bi.push_back(-prm.R * prm.R);
      ++q;
    }
    p.AI = ConstraintMap(q, n, ti);
    p.bI = Eigen::Map<const Vector>(bi.data(), q);
  } else {
    p.AI = ConstraintMap(n);
    p.bI = Vector();
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(l + m));
  Vector a(n);
  a.head(l).setConstant(scale);
  a.tail(d) = anchors.rowwise().sum() * scale;
  Matrix c = -prm.lambda * (Matrix::Identity(n, n) - a * a.transpose());
  p.C = 0.5 * (c + c.transpose());
  p.K = PolyhedralSet::whole_space();
  p.ground_truth = u;
  p.validate();
  return p;
}

Matrix snl_positions(const Matrix& x, int d) {
  const Index l = x.rows() - d;
  require(l >= 1, ErrorCode::InvalidInput, "snl_positions: X too small");
  return x.block(l, 0, d, l);
}

double snl_rmsd(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.cols() > 0,
          ErrorCode::InvalidInput, "snl_rmsd: shape mismatch");
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.cols()));
}

}  // namespace qsdpnal
