#pragma once

#include <functional>

#include "qsdpnal/sncg.hpp"

namespace qsdpnal {

struct AbcdConfig {
  double eta = 1e-6;  // proximal weight on y
  double eps0 = 1.0;  // inner tolerance eps_l = eps0 / l^1.5
  int max_iters = 100;
  double tol_floor = 1e-11;  // SNCG tolerances below this are not attainable
  SncgConfig sncg;
  bool verbose = false;
};

void validate(const AbcdConfig& c);

struct MomentumStep {
  double t_next = 1.0;
  double beta = 0.0;
};

/// t_next = (1 + sqrt(1 + 4 t^2)) / 2, beta = (t - 1) / t_next.
MomentumStep momentum_update(double t);

/// cur + beta (cur - prev) for W (or u), QW, S and y.
struct Extrapolated {
  Matrix W;
  Vector u;
  Matrix QW;
  ConeElement S;
  Vector y;
};
Extrapolated extrapolate(const Iterate& cur, const Iterate& prev, double beta);

/// Candidate acceptance test; receives (Z, W, S, y) with X set to X-hat.
using AbcdAccept = std::function<bool(const Iterate& candidate)>;

struct AbcdResult {
  Iterate it;  // X is copied from X-hat
  int iters = 0;
  int sncg_iters = 0;
  bool accepted = false;
  bool stalled = false;
  bool stationary = false;  // a sweep at the tolerance floor changed nothing
};

/// Minimizes the augmented Lagrangian in (Z, W, S, y) for fixed X-hat when
/// K is not the whole space.
AbcdResult abcd_solve(const StandardizedProblem& sp, const ConeElement& xhat,
                      double sigma, const Iterate& start,
                      const AbcdConfig& config,
                      const AbcdAccept& accept = nullptr);

}  // namespace qsdpnal
