#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "qsdpnal/problem.hpp"

namespace qsdpnal {

using Rng = std::mt19937_64;

/// Correlation matrix of a synthetic one-factor return model with `samples`
/// observations: unit diagonal, PSD.
Matrix random_correlation(Index n, Rng& rng, Index samples = 0);

// ---------------------------------------------------------------------------
// Nearest correlation matrix

struct NcmWeight {
  enum class Kind { Uniform, BlockPattern };
  Kind kind = Kind::Uniform;
  double lo = 0.1;
  double hi = 10.0;
  std::uint64_t seed = 11;  // block pattern only

  static NcmWeight uniform(double lo, double hi) {
    return {Kind::Uniform, lo, hi, 0};
  }
  static NcmWeight block_pattern(std::uint64_t seed) {
    return {Kind::BlockPattern, 0.0, 0.0, seed};
  }
};

/// 93 x 93 weight block: about 24% of entries 1e-5, the rest in [2, 1280].
Matrix ncm_weight_block(std::uint64_t seed);

/// min 1/2 ||H o (X - G)||^2 s.t. diag(X) = e, X PSD, X in K, with
/// G = (1 - alpha) G^ + alpha E. The constant 1/2 ||H o G||^2 is dropped.
QsdpProblem gen_ncm(Index n, double alpha, const NcmWeight& weight,
                    const PolyhedralSet& k, std::uint64_t seed);

/// Same with an explicit weight matrix and target G.
QsdpProblem ncm_problem(const Matrix& h, const Matrix& g,
                        const PolyhedralSet& k);

// ---------------------------------------------------------------------------
// Binary integer quadratic

struct BiqData {
  Matrix Q0;  // symmetric l x l
  Vector c;
};

/// Biq Mac style instance with integer entries in [-100, 100].
BiqData random_biq_data(Index l, double density, std::uint64_t seed);

/// Reads "l m" followed by m lines "i j v" (1-based, upper triangle of Q0;
/// diagonal entries go to c).
BiqData load_biq(const std::string& path);

/// Relaxation over X = [Y x; x^T alpha] of order l + 1 with
/// diag(Y) = x, alpha = 1, X >= 0 and the three triangle families for the
/// pairs i < j <= l - 1 (1-based). Q = (A X B + B X A) / 2 with random
/// correlation A, B.
QsdpProblem gen_biq(const BiqData& data, std::uint64_t corr_seed);

/// 1/2 <X,QX> + <C,X> at X = [x x^T x; x^T 1] for a 0/1 vector x.
double biq_binary_value(const QsdpProblem& p, const Vector& x);

// ---------------------------------------------------------------------------
// Quadratic assignment

struct QapData {
  Matrix A1;
  Matrix A2;
};

/// Symmetric flow and distance matrices with small integer entries.
QapData random_qap_data(Index l, std::uint64_t seed);

/// Reads "l" followed by the two l x l matrices (QAPLIB layout).
QapData load_qap(const std::string& path);

/// Relaxation over X of order l^2 with C = A2 kron A1, sum_i X^{ii} = I,
/// <I, X^{ij}> = delta_ij, <E, X^{ij}> = 1 (i <= j) and X >= 0.
QsdpProblem gen_qap(const QapData& data, std::uint64_t corr_seed);

/// vec(P) as a 0/1 vector for the permutation perm (column i has its one in
/// row perm[i]).
Vector qap_perm_vector(const std::vector<int>& perm);

// ---------------------------------------------------------------------------
// Sensor network localization

struct SnlParams {
  int d = 2;
  Index l = 20;
  double R = 0.5;
  double tau_noise = 0.1;
  double lambda = 1e-2;
  bool with_inequalities = false;
  std::uint64_t seed = 1;
};

/// Least-squares relaxation over X = [V U^T; U I_d] of order l + d with four
/// anchors. The generating positions are kept as ground_truth (d x l).
QsdpProblem gen_snl(const SnlParams& params);

/// Sensor positions U (d x l) read off a solution X.
Matrix snl_positions(const Matrix& x, int d);

/// Root-mean-square distance between position sets (columns).
double snl_rmsd(const Matrix& a, const Matrix& b);

}  // namespace qsdpnal
