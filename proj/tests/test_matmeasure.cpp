#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "stieltjes/measure.hpp"

using namespace stieltjes;

namespace {

Mat I(Index q) { return Mat::Identity(q, q); }
Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("Hermitian and PSD matrices validate their input") {
  Mat m(2, 2);
  m << 1.0, cplx(0, 1), cplx(0, 1), 1.0;
  CHECK_THROWS_AS(HermMatrix{m}, Error);
  try {
    HermMatrix h(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  try {
    PsdMatrix p(diag2(1.0, -1.0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPsd);
  }
  // Round-off below zero is admitted.
  CHECK_NOTHROW(PsdMatrix(diag2(1.0, -1e-14)));
  const HermMatrix h(Mat(Mat::Identity(2, 2) + 1e-13 * Mat::Ones(2, 2) * cplx(0, 1)));
  CHECK(h.mat() == h.mat().adjoint());
}

TEST_CASE("total mass") {
  CHECK(total_mass(MatrixMeasure(2, SupportSet::line())).mat() == Mat::Zero(2, 2));
  const MatrixMeasure two(2, SupportSet::right_ray(0),
                          {{0.0, PsdMatrix::identity(2)}, {1.0, PsdMatrix::identity(2)}});
  CHECK(total_mass(two).mat() == 2.0 * I(2));
  const PsdMatrix b(diag2(3.0, 0.5));
  const MatrixMeasure dirac(2, SupportSet::right_ray(1.5), {{1.5, b}});
  CHECK(total_mass(dirac) == b);
}

TEST_CASE("integration against atoms") {
  gen::Gen g(7);
  const MatrixMeasure mu = g.measure(3, SupportSet::right_ray(0), 5);
  CHECK(oracle::rel(integrate(mu, [](double) { return cplx(1.0); }), total_mass(mu).mat()) < 1e-15);

  const PsdMatrix w = g.psd_full(2);
  const MatrixMeasure at2(2, SupportSet::line(), {{2.0, w}});
  CHECK(integrate(at2, [](double t) { return cplx(t); }) == 2.0 * w.mat());

  const MatrixMeasure at1(2, SupportSet::line(), {{1.0, PsdMatrix::identity(2)}});
  const Mat v = integrate(at1, [](double t) { return 1.0 / (t - cplx(0, 1)); });
  // 1/(1 - i) = (1 + i)/2
  CHECK(oracle::rel(v, cplx(0.5, 0.5) * I(2)) < 1e-16);

  const MatrixMeasure at0(1, SupportSet::line(), {{0.0, PsdMatrix::identity(1)}});
  try {
    integrate(at0, [](double t) { return cplx(1.0 / t); });
    FAIL("expected NonFiniteKernel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteKernel);
  }
}

TEST_CASE("image measures") {
  gen::Gen g(11);
  const MatrixMeasure mu = g.measure(2, SupportSet::right_ray(0.5), 4);
  CHECK(image_measure(mu, AffineMap{1.0, 0.0}) == mu);

  const PsdMatrix w = g.psd_full(2);
  const MatrixMeasure one(2, SupportSet::right_ray(0), {{1.0, w}});
  const MatrixMeasure refl = image_measure(one, AffineMap{-1.0, 0.0});
  REQUIRE(refl.atoms().size() == 1);
  CHECK(refl.atoms()[0].t == -1.0);
  CHECK(refl.atoms()[0].weight == w);
  CHECK(refl.support().kind == SupportKind::LeftRay);

  // t -> alpha + beta - t and the Cauchy kernel, against direct substitution.
  const double alpha = 0.5, beta = -1.25;
  const MatrixMeasure three = g.measure(2, SupportSet::right_ray(alpha), 3);
  const cplx z(0.3, 0.7);
  const Mat lhs = integrate(image_measure(three, AffineMap{-1.0, alpha + beta}),
                            [z](double s) { return 1.0 / (s - z); });
  Mat rhs = Mat::Zero(2, 2);
  for (const auto& a : three.atoms()) rhs += (1.0 / (alpha + beta - a.t - z)) * a.weight.mat();
  CHECK(oracle::rel(lhs, rhs) < 1e-15);

  try {
    image_measure(mu, AffineMap{0.0, 1.0});
    FAIL("expected DegenerateMap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateMap);
  }
}

TEST_CASE("image measures preserve mass and satisfy change of variables") {
  gen::Gen g(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Index q = g.dim();
    const MatrixMeasure mu = g.measure(q, SupportSet::line(), g.integer(0, 12));
    double a = g.dyadic(-4.0, 4.0);
    if (a == 0.0) a = 1.0;
    const AffineMap map{a, g.dyadic(-4.0, 4.0)};
    const MatrixMeasure img = image_measure(mu, map);
    const cplx w(g.uniform(-3, 3), g.uniform(0.5, 3));
    auto f = [w](double s) { return std::exp(cplx(0, 0.3) * s) / (s - w); };
    const Mat lhs = integrate(img, f);
    const Mat rhs = integrate(mu, [&](double t) { return f(map(t)); });
    if (a > 0.0) {
      // Atom order is unchanged, so the sums are identical.
      CHECK(total_mass(img) == total_mass(mu));
      CHECK(lhs == rhs);
    } else {
      CHECK(oracle::rel(total_mass(img).mat(), total_mass(mu).mat()) < 1e-15);
      CHECK(oracle::rel(lhs, rhs) < 1e-14);
    }
  }
}

TEST_CASE("moments") {
  const PsdMatrix b(diag2(2.0, 1.0));
  const double alpha = 1.5;
  const auto s = moments(MatrixMeasure(2, SupportSet::right_ray(alpha), {{alpha, b}}), 4);
  for (int j = 0; j <= 4; ++j) CHECK(oracle::rel(s[j].mat(), std::pow(alpha, j) * b.mat()) < 1e-15);

  for (const auto& sj : moments(MatrixMeasure(3, SupportSet::line()), 3))
    CHECK(sj.mat() == Mat::Zero(3, 3));

  const MatrixMeasure two(2, SupportSet::line(),
                          {{1.0, PsdMatrix::identity(2)}, {2.0, PsdMatrix::identity(2)}});
  const auto t = moments(two, 2);
  CHECK(t[0].mat() == 2.0 * I(2));
  CHECK(t[1].mat() == 3.0 * I(2));
  CHECK(t[2].mat() == 5.0 * I(2));
}

TEST_CASE("block Hankel matrices of moment sequences are PSD") {
  gen::Gen g(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Index q = g.dim(3);
    const double alpha = g.endpoint();
    const MatrixMeasure mu = g.measure(q, SupportSet::right_ray(alpha), g.integer(1, 10), 0.0, 2.0);
    const int m = g.integer(0, 7);
    const auto s = moments(mu, m);
    for (const auto& sj : s) CHECK(sj.mat() == sj.mat().adjoint());
    const Mat h = block_hankel(s, m / 2);
    CHECK(min_eigenvalue(h) >= -1e-10 * (1.0 + opnorm(h)));
    if (m >= 1) {
      const Mat k = shifted_block_hankel(s, (m - 1) / 2, alpha);
      CHECK(min_eigenvalue(k) >= -1e-10 * (1.0 + opnorm(k)));
    }
  }
}

TEST_CASE("Gauss-Legendre rule") {
  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto r3 = gauss_legendre(3);
  CHECK(r3.nodes[1] == 0.0);
  CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(r3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
  CHECK(r3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  for (int n : {1, 4, 8, 17, 40}) {
    const auto r = gauss_legendre(n);
    double w = 0.0, x2 = 0.0;
    for (int i = 0; i < n; ++i) {
      w += r.weights[i];
      x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(std::abs(w - 2.0) < 1e-14);
    if (n >= 2) CHECK(std::abs(x2 - 2.0 / 3.0) < 1e-14);
  }
}

TEST_CASE("quadrature ingest") {
  const SupportSet s = SupportSet::right_ray(0.0);
  CHECK(quadrature_ingest([](double) { return Mat(Mat::Zero(2, 2)); }, 0, 1, 8, 2, s).empty());
  const MatrixMeasure ones = quadrature_ingest([](double) { return I(2); }, 0, 1, 8, 2, s);
  CHECK((total_mass(ones).mat() - I(2)).norm() < 1e-12);
  const MatrixMeasure lin = quadrature_ingest([](double t) -> Mat { return t * I(2); }, 0, 1, 8, 2, s);
  CHECK((moments(lin, 1)[0].mat() - 0.5 * I(2)).norm() < 1e-12);
  CHECK((moments(lin, 1)[1].mat() - I(2) / 3.0).norm() < 1e-12);
  try {
    quadrature_ingest([](double t) -> Mat { return diag2(1.0, t - 0.5); }, 0, 1, 8, 2, s);
    FAIL("expected NonPsdDensity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPsdDensity);
  }
}

TEST_CASE("scalar projection") {
  const MatrixMeasure d(2, SupportSet::line(), {{0.0, PsdMatrix(diag2(2.0, 3.0))}});
  CVec e1 = CVec::Zero(2);
  e1(0) = 1.0;
  const ScalarMeasure p = scalar_projection(d, e1);
  REQUIRE(p.atoms.size() == 1);
  CHECK(p.atoms[0].t == 0.0);
  CHECK(p.atoms[0].w == 2.0);

  CHECK(scalar_projection(MatrixMeasure(2, SupportSet::line()), e1).atoms.empty());

  CVec u(2);
  u << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const MatrixMeasure ones(2, SupportSet::line(), {{1.0, PsdMatrix(Mat(Mat::Ones(2, 2)))}});
  CHECK(scalar_projection(ones, u).atoms[0].w == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("quadratic forms commute with integration") {
  gen::Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Index q = g.dim(5);
    const MatrixMeasure mu = g.measure(q, SupportSet::line(), g.integer(0, 10));
    const CVec u = g.vector(q);
    const cplx w(g.uniform(-5, 5), g.uniform(0.2, 4));
    auto f = [w](double t) { return (1.0 + t * w) / (t - w); };
    const cplx lhs = (u.adjoint() * integrate(mu, f) * u)(0, 0);
    const cplx rhs = scalar_projection(mu, u).integrate(f);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("canonicalization") {
  gen::Gen g(15);
  const PsdMatrix w = g.psd_full(2);
  // Nodes closer than the merge radius are merged; zero weights vanish.
  const MatrixMeasure m(2, SupportSet::right_ray(0),
                        {{2.0, w}, {1.0, w}, {1.0 + 1e-13, w}, {3.0, PsdMatrix::zero(2)}});
  REQUIRE(m.atoms().size() == 2);
  CHECK(m.atoms()[0].t == 1.0);
  CHECK(oracle::rel(m.atoms()[0].weight.mat(), 2.0 * w.mat()) < 1e-15);
  CHECK(m.atoms()[1].t == 2.0);

  for (int trial = 0; trial < 50; ++trial) {
    const MatrixMeasure mu = g.measure(g.dim(), SupportSet::right_ray(0), g.integer(0, 30), 0.0, 1.0);
    CHECK(canonicalize(canonicalize(mu)) == canonicalize(mu));
    for (std::size_t k = 1; k < mu.atoms().size(); ++k) CHECK(mu.atoms()[k - 1].t < mu.atoms()[k].t);
  }

  try {
    MatrixMeasure bad(2, SupportSet::right_ray(0), {{-1.0, w}});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  CHECK_THROWS_AS(MatrixMeasure(2, SupportSet::open_right_ray(0), {{0.0, w}}), Error);
  CHECK_THROWS_AS(MatrixMeasure(3, SupportSet::line(), {{0.0, w}}), Error);
}

TEST_CASE("support sets") {
  CHECK(SupportSet::right_ray(1).contains(1));
  CHECK_FALSE(SupportSet::open_right_ray(1).contains(1));
  CHECK(SupportSet::left_ray(1).contains(-5));
  CHECK_FALSE(SupportSet::open_left_ray(1).contains(1));
  CHECK(SupportSet::right_ray(1).distance(cplx(-2, 4)) == 5.0);
  CHECK(SupportSet::right_ray(1).distance(cplx(3, -2)) == 2.0);
  CHECK(SupportSet::left_ray(1).distance(cplx(4, 4)) == 5.0);
  CHECK(SupportSet::line().distance(cplx(4, -4)) == 4.0);
  CHECK(support_kind_from_string("open_left_ray") == SupportKind::OpenLeftRay);
}
