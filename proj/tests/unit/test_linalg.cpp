#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "qsdpnal/linalg.hpp"

using namespace qsdpnal;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("eig_sym on small analytic cases") {
  const EigenDecomposition d = eig_sym(m2(3, 0, 0, 1));
  CHECK(d.values(0) == doctest::Approx(3.0));
  CHECK(d.values(1) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(1, 1)) == doctest::Approx(1.0));

  const EigenDecomposition f = eig_sym(m2(0, 1, 1, 0));
  CHECK(f.values(0) == doctest::Approx(1.0));
  CHECK(f.values(1) == doctest::Approx(-1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f.vectors(0, 0)) == doctest::Approx(r));
  CHECK(f.vectors(0, 0) * f.vectors(1, 0) > 0.0);
  CHECK(f.vectors(0, 1) * f.vectors(1, 1) < 0.0);
}

TEST_CASE("eig_sym invariants against the Jacobi oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = oracle::random_sym(8, rng);
    const EigenDecomposition d = eig_sym(m);
    const Matrix& p = d.vectors;
    CHECK((p.transpose() * p - Matrix::Identity(8, 8)).norm() <= 1e-12 * 8);
    CHECK((p * d.values.asDiagonal() * p.transpose() - m).norm() <=
          1e-10 * (1.0 + m.norm()));
    for (Index i = 0; i + 1 < 8; ++i) CHECK(d.values(i) >= d.values(i + 1));
    const oracle::Eig o = oracle::jacobi_eig(m);
    CHECK((o.values - d.values).norm() <= 1e-10 * (1.0 + m.norm()));
  }
}

TEST_CASE("eig_sym rejects non-finite input") {
  Matrix m = m2(1, 0, 0, std::nan(""));
  try {
    eig_sym(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("psd_project examples") {
  CHECK((project_psd(m2(2, 0, 0, -3)) - m2(2, 0, 0, 0)).norm() < 1e-14);
  CHECK((project_psd(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() <
        1e-14);
  CHECK((project_psd(m2(0, 1, 1, 0)) - m2(0.5, 0.5, 0.5, 0.5)).norm() < 1e-14);
}

TEST_CASE("psd_project is PSD, idempotent and matches the oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = oracle::random_sym(7, rng);
    const Matrix p = psd_project(m).proj;
    CHECK(oracle::jacobi_eig(p).values.minCoeff() >= -1e-10 * m.norm());
    CHECK((project_psd(p) - p).norm() <= 1e-10 * (1.0 + p.norm()));
    CHECK((p - oracle::psd_part(m)).norm() <= 1e-10 * (1.0 + m.norm()));
  }
}

TEST_CASE("projection characterization") {
  std::mt19937_64 rng(9);
  const Matrix m = oracle::random_sym(6, rng);
  const Matrix p = project_psd(m);
  for (int k = 0; k < 100; ++k) {
    const Matrix y = oracle::random_psd(6, 1 + k % 6, rng);
    CHECK(inner(m - p, y - p) <= 1e-10);
  }
}

TEST_CASE("box_project examples") {
  Matrix one(1, 1);
  one << 2.0;
  CHECK(box_project(one, PolyhedralSet::box(1, -1.0, 1.0))(0, 0) == 1.0);
  std::mt19937_64 rng(1);
  const Matrix m = oracle::random_sym(4, rng);
  CHECK(box_project(m, PolyhedralSet::whole_space()) == m);
  CHECK(box_project(m2(-0.7, 0.2, 0.2, 3), PolyhedralSet::nonneg()) ==
        m2(0, 0.2, 0.2, 3));
}

TEST_CASE("support_function examples") {
  Matrix z(1, 1);
  z << 2.0;
  CHECK(support_function(z, PolyhedralSet::box(1, 0.0, 1.0)) == 2.0);
  z << -3.0;
  CHECK(support_function(z, PolyhedralSet::nonneg()) == 0.0);
  z << 1.0;
  CHECK(support_function(z, PolyhedralSet::nonneg()) == kInf);
  CHECK(support_function(Matrix::Zero(2, 2), PolyhedralSet::whole_space()) ==
        0.0);
  CHECK(support_function(m2(0, 0, 0, 1e-3), PolyhedralSet::whole_space()) ==
        kInf);
}

TEST_CASE("support function dominates inner products over a finite box") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  const PolyhedralSet k = PolyhedralSet::box(4, -1.0, 2.0);
  const Matrix z = oracle::random_sym(4, rng);
  const double s = support_function(-z, k);
  for (int t = 0; t < 100; ++t) {
    Matrix x(4, 4);
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i <= j; ++i) x(i, j) = x(j, i) = u(rng);
    CHECK(s >= inner(-z, x) - 1e-12);
  }
}

TEST_CASE("prox_conjugate_via_moreau") {
  Matrix x(1, 1);
  x << 3.0;
  const PolyhedralSet box = PolyhedralSet::box(1, -1.0, 1.0);
  CHECK(prox_conjugate_via_moreau(x, 1.0, box)(0, 0) == doctest::Approx(2.0));
  x << 0.0;
  CHECK(prox_conjugate_via_moreau(x, 2.5, box)(0, 0) == 0.0);

  std::mt19937_64 rng(4);
  const Matrix r = oracle::random_sym(5, rng);
  const double t = 0.7;
  const PolyhedralSet k = PolyhedralSet::nonneg();
  // Prox_{t delta_K}(x) + t Prox_{delta_K^*/t}(x/t) = x.
  const Matrix lhs = box_project(r, k) + t * prox_conjugate_via_moreau(r / t, t, k);
  CHECK((lhs - r).norm() <= 1e-12 * (1.0 + r.norm()));

  // The conjugate prox agrees with a scalar minimization of
  // delta_K^*(z) + t/2 (z - x)^2 on each entry.
  const Matrix p = prox_conjugate_via_moreau(r, t, PolyhedralSet::box(5, -1.0, 1.0));
  for (Index i = 0; i < 5; ++i) {
    const double xi = r(i, i);
    const double zi = oracle::golden_section(
        [&](double z) { return std::abs(z) + 0.5 * t * (z - xi) * (z - xi); },
        -10.0, 10.0);
    CHECK(p(i, i) == doctest::Approx(zi).epsilon(1e-7));
  }

  try {
    prox_conjugate_via_moreau(x, 0.0, box);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("proj_jacobian_apply examples") {
  const PsdProjection p = psd_project(m2(2, 0, 0, -1));
  const Matrix h = m2(1.5, 0.9, 0.9, -2.0);
  const Matrix out = proj_jacobian_apply(p.jac, h);
  CHECK(out(0, 0) == doctest::Approx(1.5));
  CHECK(out(0, 1) == doctest::Approx(2.0 / 3.0 * 0.9));
  CHECK(out(1, 0) == doctest::Approx(2.0 / 3.0 * 0.9));
  CHECK(std::abs(out(1, 1)) < 1e-14);

  std::mt19937_64 rng(8);
  const Matrix pd = oracle::random_psd(5, 5, rng) + Matrix::Identity(5, 5);
  const Matrix hh = oracle::random_sym(5, rng);
  CHECK((proj_jacobian_apply(psd_project(pd).jac, hh) - hh).norm() < 1e-10);
  CHECK(proj_jacobian_apply(psd_project(-pd).jac, hh).norm() < 1e-14);

  try {
    proj_jacobian_apply(p.jac, Matrix::Zero(3, 3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("Sigma weights are bounded and block structured") {
  std::mt19937_64 rng(12);
  Vector spec(6);
  spec << 3.0, 1.5, 0.2, -0.4, -1.0, -2.5;
  const PsdProjection p = psd_project(oracle::with_spectrum(spec, rng));
  const Matrix& s = p.jac.sigma_weights;
  CHECK(p.jac.num_positive == 3);
  CHECK((s - s.transpose()).norm() == 0.0);
  CHECK(s.minCoeff() >= 0.0);
  CHECK(s.maxCoeff() <= 1.0);
  CHECK(s.topLeftCorner(3, 3) == Matrix::Ones(3, 3));
  CHECK(s.bottomRightCorner(3, 3) == Matrix::Zero(3, 3));
}

TEST_CASE("U0 is self-adjoint, PSD and matches finite differences") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix m = oracle::random_sym(6, rng);
    const PsdProjection p = psd_project(m);
    const Matrix h1 = oracle::random_sym(6, rng);
    const Matrix h2 = oracle::random_sym(6, rng);
    const Matrix u1 = proj_jacobian_apply(p.jac, h1);
    const Matrix u2 = proj_jacobian_apply(p.jac, h2);
    CHECK(std::abs(inner(u1, h2) - inner(h1, u2)) <= 1e-12 * h1.norm() * h2.norm());
    CHECK(inner(h1, u1) >= -1e-12 * h1.squaredNorm());
    const double h = 1e-6 * (1.0 + m.norm());
    const Matrix fd =
        (oracle::psd_part(m + h * h1) - oracle::psd_part(m - h * h1)) / (2 * h);
    CHECK((fd - u1).norm() <= 1e-4 * (1.0 + u1.norm()));
  }
}

TEST_CASE("svec preserves inner products") {
  std::mt19937_64 rng(2);
  const Matrix a = oracle::random_sym(5, rng);
  const Matrix b = oracle::random_sym(5, rng);
  CHECK(svec(a).dot(svec(b)) == doctest::Approx(inner(a, b)));
  CHECK((smat(svec(a), 5) - a).norm() < 1e-14);
}

TEST_CASE("make_symmetric canonicalizes storage") {
  const Matrix m = make_symmetric(m2(1, 2, 4, 3));
  CHECK(m(0, 1) == m(1, 0));
  CHECK(m(0, 1) == 3.0);
}
