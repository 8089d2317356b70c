#pragma once

namespace qsdpnal {

struct SigmaRule {
  double growth = 2.5;
  double ratio = 5.0;
  double sigma_min = 1e-3;
  double sigma_max = 1e6;
};

/// Grows sigma when the residual of the penalized constraint (`etaP`)
/// exceeds rule.ratio times the other residual, shrinks it in the opposite
/// case. The solver penalizes the constraint of (D), so callers pass the
/// KKT dual residual eta_D as `etaP`. Phase I passes multiplier_residual()
/// as `etaD`, Phase II the KKT primal residual eta_P.
double sigma_update(double sigma, double etaP, double etaD,
                    const SigmaRule& rule);

}  // namespace qsdpnal
