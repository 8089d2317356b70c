#pragma once

// Reference implementations used only by the tests. They share storage types
// with the library but none of its algorithms.

#include <functional>
#include <random>
#include <vector>

#include "qsdpnal/problem.hpp"

namespace oracle {

using qsdpnal::Index;
using qsdpnal::Matrix;
using qsdpnal::Vector;

struct Eig {
  Matrix vectors;
  Vector values;  // nonincreasing
};

/// Cyclic Jacobi rotations until the off-diagonal mass is below tol.
Eig jacobi_eig(const Matrix& m, double tol = 1e-14, int max_sweeps = 100);

Matrix psd_part(const Matrix& m);

/// Gaussian elimination with partial pivoting.
Vector gauss_solve(Matrix a, Vector b);

/// Minimum-norm least-squares solution of a symmetric PSD system through
/// the Jacobi eigendecomposition, discarding eigenvalues below rel_cut.
Vector pinv_solve_sym(const Matrix& a, const Vector& b, double rel_cut = 1e-10);

/// Dense matrix of a linear map on R^dim, built column by column.
Matrix materialize(const std::function<Vector(const Vector&)>& op, Index dim);

/// Central difference gradient.
Vector fd_gradient(const std::function<double(const Vector&)>& f,
                   const Vector& x, double h);

/// Minimizer of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-12);

/// Random symmetric matrix with N(0,1) entries.
Matrix random_sym(Index n, std::mt19937_64& rng);
/// Random PSD matrix of rank r.
Matrix random_psd(Index n, Index r, std::mt19937_64& rng);
/// Symmetric matrix with prescribed distinct eigenvalues.
Matrix with_spectrum(const Vector& values, std::mt19937_64& rng);

/// Projection onto {X : diag(X) = e} intersected with the PSD cone by
/// Dykstra's alternating projections.
Matrix dykstra_ncm(const Matrix& g, int iters = 20000, double tol = 1e-12);

/// min over x in {0,1}^l of 1/2<X,QX> + <C,X> at X = [x x^T x; x^T 1], with
/// Q and C taken directly from the instance fields.
double brute_force_biq(const qsdpnal::QsdpProblem& p);

/// Same objective at X = vec(P) vec(P)^T over all permutation matrices P.
double brute_force_qap(const qsdpnal::QsdpProblem& p, Index l);

/// (A X B + B X A) / 2 evaluated from the definition.
Matrix bilinear(const Matrix& a, const Matrix& b, const Matrix& x);

}  // namespace oracle
