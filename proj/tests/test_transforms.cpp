#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "stieltjes/classifier.hpp"
#include "stieltjes/limits.hpp"
#include "stieltjes/transforms.hpp"

using namespace stieltjes;

namespace {

const cplx kI(0.0, 1.0);

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ErrorKind kind_thrown(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidArgument;
}

Evaluator constant(const Mat& c, SupportSet ex = SupportSet::right_ray(0)) {
  return Evaluator(c.rows(), ex, [c](cplx) { return c; });
}

bool same_atoms(const MatrixMeasure& a, const MatrixMeasure& b) {
  if (a.atoms().size() != b.atoms().size()) return false;
  for (std::size_t k = 0; k < a.atoms().size(); ++k)
    if (a.atoms()[k].t != b.atoms()[k].t || !(a.atoms()[k].weight == b.atoms()[k].weight)) return false;
  return true;
}

}  // namespace

TEST_CASE("pseudo-inverse examples") {
  const PinvResult i = pinv(Mat::Identity(3, 3));
  CHECK(i.pinv == Mat::Identity(3, 3));
  CHECK(i.rank == 3);
  const PinvResult z = pinv(Mat::Zero(2, 2));
  CHECK(z.pinv == Mat::Zero(2, 2));
  CHECK(z.rank == 0);
  const PinvResult d = pinv(diag2(2, 0));
  CHECK(opnorm(d.pinv - diag2(0.5, 0)) < 1e-15);
  CHECK(d.rank == 1);
}

TEST_CASE("Penrose identities on random matrices") {
  gen::Gen g(81);
  for (int k = 0; k < 1000; ++k) {
    const Index q = g.dim(6);
    const Index r = g.integer(0, static_cast<int>(q));
    const Mat m = g.matrix(q, r) * g.matrix(r, q) * std::pow(10.0, g.uniform(-3, 3));
    const Mat p = pinv(m).pinv;
    const double s = opnorm(m), sp = opnorm(p);
    CHECK(opnorm(m * p * m - m) <= 1e-11 * (1.0 + s));
    CHECK(opnorm(p * m * p - p) <= 1e-11 * (1.0 + sp));
    CHECK(opnorm((m * p).adjoint() - m * p) <= 1e-11);
    CHECK(opnorm((p * m).adjoint() - p * m) <= 1e-11);
    // The oracle squares the condition number, so it cuts at 1e-6; the
    // generated products have an O(1) gap between true and roundoff values.
    CHECK(opnorm(p - oracle::pinv(m, 1e-6)) <= 1e-8 * (1.0 + sp));
  }
}

TEST_CASE("imaginary part of the pseudo-inverse of values") {
  gen::Gen g(82);
  for (int k = 0; k < 50; ++k) {
    const auto p = g.pair();
    const cplx z = g.point_off(excluded_set(p));
    const Mat f = eval(p, z);
    const Mat fp = pinv(f, kRankRtol).pinv;
    // Values are EP: R(F*) = R(F).
    CHECK(opnorm(range_projector(f, kRankRtol) - range_projector(f.adjoint(), kRankRtol)) <= 1e-9);
    CHECK(opnorm(im_part(fp) + fp * im_part(f) * fp.adjoint()) <= 1e-10 * (1.0 + opnorm(fp) * opnorm(fp) * opnorm(f)));
  }
}

TEST_CASE("pinv map examples") {
  const double alpha = 0.5;
  const Evaluator pole(1, SupportSet::right_ray(alpha),
                       [alpha](cplx z) { return Mat::Constant(1, 1, 1.0 / (alpha - z)); });
  const Evaluator g1 = pinv_map(pole, alpha);
  for (cplx z : {cplx(0, 1), cplx(-3, 0), cplx(4, -2)}) CHECK(std::abs(g1(z)(0, 0) - 1.0) < 1e-14);

  const Evaluator g0 = pinv_map(constant(Mat::Zero(2, 2), SupportSet::right_ray(alpha)), alpha);
  CHECK(g0(cplx(1, 1)) == Mat::Zero(2, 2));

  gen::Gen g(83);
  const Mat gamma = g.psd_full(2).mat();
  const Evaluator gc = pinv_map(constant(gamma, SupportSet::right_ray(alpha)), alpha);
  const Mat inv = gamma.inverse();
  for (cplx z : {cplx(0, 1), cplx(-3, 0)}) CHECK(oracle::rel(gc(z), inv / (alpha - z)) < 1e-12);
  CHECK(certify_class(gc, alpha, CertKind::S).pass);
}

TEST_CASE("pinv map output is in S and its constant term inverts the mass") {
  gen::Gen g(84);
  for (int k = 0; k < 30; ++k) {
    const auto p = g.pair();
    const Evaluator out = pinv_map(p);
    CHECK(certify_class(out, p.alpha, CertKind::S).worst().margin >= -1e-9);
  }
  for (int k = 0; k < 20; ++k) {
    const auto s = g.s0();
    const auto as_pair = std::get<StieltjesPair>(convert(s, RepKind::StieltjesPair));
    const Evaluator out = pinv_map(as_pair);
    const LimitEstimate e = limit_at_infinity(out, LimitMode::plain_iy());
    const Mat expect = oracle::pinv(total_mass(s.sigma).mat(), 1e-6);
    CHECK(opnorm(e.value - expect) <= 1e-6 * (1.0 + opnorm(expect)));
    if (!s.sigma.empty()) CHECK_FALSE(certify_class(out, s.alpha, CertKind::S0).pass);
  }
}

TEST_CASE("rank guard refuses functions with a rank jump") {
  const Evaluator jump(2, SupportSet::right_ray(50), [](cplx z) -> Mat {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::abs(z.imag()) > 1.0 ? cplx(1.0) : cplx(0.0);
    return m;
  });
  CHECK(kind_thrown([&] { rank_guard(jump); }) == ErrorKind::RankInstability);
  CHECK(kind_thrown([&] { pinv_map(jump, 50.0); }) == ErrorKind::RankInstability);
}

TEST_CASE("negated pinv examples") {
  const Evaluator minus_one = constant(Mat::Constant(1, 1, -1.0));
  const Evaluator one = neg_pinv_map(minus_one);
  CHECK(one(cplx(2, 3))(0, 0) == cplx(1.0));
  CHECK(certify_class(one, 0.0, CertKind::S).pass);

  const Evaluator zero = neg_pinv_map(constant(Mat::Zero(2, 2)));
  CHECK(certify_class(zero, 0.0, CertKind::S).pass);
  CHECK(certify_class(zero, 0.0, CertKind::SInf).pass);

  gen::Gen g(85);
  const PsdMatrix d = g.psd_full(2), e = g.psd_full(2);
  const auto si = SInfTriple::make(0.0, d, e, MatrixMeasure(2, SupportSet::open_right_ray(0)));
  const Evaluator gi = neg_pinv_map(make_evaluator(si));
  CHECK(oracle::rel(gi(kI), -(eval(si, kI)).inverse()) < 1e-12);
  CHECK(min_eigenvalue(im_part(gi(kI))) >= -1e-12);
  CHECK(min_eigenvalue(gi(cplx(-1.0, 0.0))) >= -1e-12);
  const GridConfig cfg{64, 64, 32};
  CHECK(certify_class(gi, 0.0, CertKind::S, cfg).pass);
}

TEST_CASE("negated pinv maps S-infinity onto S and back") {
  gen::Gen g(86);
  for (int k = 0; k < 20; ++k) {
    const auto si = g.sinf();
    CHECK(certify_class(neg_pinv_map(make_evaluator(si)), si.alpha, CertKind::S).worst().margin >= -1e-9);
    const auto p = g.pair();
    CHECK(certify_class(neg_pinv_map(make_evaluator(p)), p.alpha, CertKind::SInf).worst().margin >= -1e-9);
    const auto ti = g.tinf();
    CHECK(certify_class(neg_pinv_map(make_evaluator(ti)), ti.beta, CertKind::T).worst().margin >= -1e-9);
    const auto tp = g.tpair();
    CHECK(certify_class(neg_pinv_map(make_evaluator(tp)), tp.beta, CertKind::TInf).worst().margin >= -1e-9);
  }
}

TEST_CASE("dual map examples") {
  gen::Gen g(87);
  const double alpha = 0.75;
  const PsdMatrix a = g.psd_full(2), b = g.psd_full(2);
  const auto e = StieltjesPair::make(alpha, a, MatrixMeasure(2, SupportSet::right_ray(alpha), {{alpha, b}}));
  const auto t = std::get<TPair>(dual_map(e, -alpha));
  CHECK(t.beta == -alpha);
  CHECK(t.gamma == a);
  REQUIRE(t.mu.atoms().size() == 1);
  CHECK(t.mu.atoms()[0].t == -alpha);
  CHECK(t.mu.atoms()[0].weight == b);
  for (int j = 0; j < 20; ++j) {
    const cplx z = g.point_off(excluded_set(t));
    CHECK(oracle::rel(eval(t, z), -eval(e, alpha - alpha - std::conj(z)).adjoint()) < 1e-13);
  }

  const auto zero = StieltjesPair::make(0.0, PsdMatrix::zero(2), MatrixMeasure(2, SupportSet::right_ray(0)));
  CHECK(eval(dual_map(zero, 1.0), cplx(3, 1)) == Mat::Zero(2, 2));

  const PsdMatrix w = g.psd_full(2);
  const auto one = StieltjesPair::make(0.0, PsdMatrix::zero(2), MatrixMeasure(2, SupportSet::right_ray(0), {{1.0, w}}));
  const auto d = std::get<TPair>(dual_map(one, 0.0));
  CHECK(d.mu.atoms()[0].t == -1.0);
  // alpha + beta - conj(-i) = -i, and F(-i)* = F(i).
  CHECK(eval(d, -kI) == Mat(-eval(one, -kI).adjoint()));
  CHECK(oracle::rel(eval(d, -kI), -eval(one, kI)) < 1e-15);

  CHECK(kind_thrown([&] { dual_map(convert(one, RepKind::KKPair), 0.0); }) == ErrorKind::UnsupportedKind);
}

TEST_CASE("dual map is an involution and satisfies the reflection identity") {
  gen::Gen g(88);
  for (int k = 0; k < 60; ++k) {
    Representation r;
    switch (k % 3) {
      case 0: r = g.pair(); break;
      case 1: r = g.s0(); break;
      default: r = g.sinf(); break;
    }
    const double alpha = endpoint_of(r), beta = g.endpoint();
    const Representation d = dual_map(r, beta);
    const Representation back = dual_map(d, alpha);
    CHECK(kind_of(back) == kind_of(r));
    CHECK(eval(back, cplx(alpha - 1.5, 0.5)) == eval(r, cplx(alpha - 1.5, 0.5)));
    if (auto* p = std::get_if<StieltjesPair>(&r)) {
      const auto& q = std::get<StieltjesPair>(back);
      CHECK(q.gamma == p->gamma);
      CHECK(same_atoms(q.mu, p->mu));
    } else if (auto* s = std::get_if<S0Measure>(&r)) {
      CHECK(same_atoms(std::get<S0Measure>(back).sigma, s->sigma));
    } else {
      const auto& si = std::get<SInfTriple>(r);
      const auto& sb = std::get<SInfTriple>(back);
      CHECK(sb.D == si.D);
      CHECK(sb.E == si.E);
      CHECK(same_atoms(sb.rho, si.rho));
    }
    const Evaluator lazy = dual_evaluator(make_evaluator(r), alpha, beta);
    for (int j = 0; j < 50; ++j) {
      const cplx z = g.point_off(excluded_set(d));
      const Mat fd = eval(d, z);
      CHECK(oracle::rel(fd, -eval(r, alpha + beta - std::conj(z)).adjoint()) <= 1e-13);
      CHECK(oracle::rel(lazy(z), fd) <= 1e-13);
    }
  }
}

TEST_CASE("congruence sums") {
  gen::Gen g(89);
  const auto p = g.pair(3, 0.25);
  const StieltjesPair same = congruence_sum({{Mat::Identity(3, 3), p}});
  CHECK(same.gamma == p.gamma);
  CHECK(same_atoms(same.mu, p.mu));

  const Mat h = Mat::Identity(3, 3) / std::sqrt(2.0);
  const StieltjesPair halves = congruence_sum({{h, p}, {h, p}});
  CHECK(oracle::rel(halves.gamma.mat(), p.gamma.mat()) < 1e-15);
  for (int j = 0; j < 10; ++j) {
    const cplx z = g.point_off(excluded_set(p));
    CHECK(oracle::rel(eval(halves, z), eval(p, z)) < 1e-14);
  }

  const auto f1 = StieltjesPair::make(0.0, PsdMatrix::zero(1), MatrixMeasure(1, SupportSet::right_ray(0), {{0.0, PsdMatrix::identity(1)}}));
  const auto f2 = StieltjesPair::make(0.0, PsdMatrix::identity(1), MatrixMeasure(1, SupportSet::right_ray(0)));
  const StieltjesPair s = congruence_sum({{Mat::Identity(1, 1), f1}, {Mat::Identity(1, 1), f2}});
  CHECK(s.gamma.mat()(0, 0) == 1.0);
  CHECK(std::abs(eval(s, cplx(2, 1))(0, 0) - (1.0 - 1.0 / cplx(2, 1))) < 1e-15);

  for (int k = 0; k < 50; ++k) {
    const Index q = g.dim();
    const double alpha = g.endpoint();
    std::vector<std::pair<Mat, StieltjesPair>> terms;
    for (int j = 0; j < g.integer(1, 4); ++j) {
      const Index qk = g.dim();
      terms.push_back({g.matrix(qk, q), g.pair(qk, alpha)});
    }
    const StieltjesPair sum = congruence_sum(terms);
    const cplx z = g.point_off(excluded_set(sum));
    Mat expect = Mat::Zero(q, q);
    for (const auto& [a, f] : terms) expect += a.adjoint() * eval(f, z) * a;
    CHECK(oracle::rel(eval(sum, z), expect) <= 1e-13);
  }
  CHECK(kind_thrown([&] { congruence_sum({{Mat::Identity(2, 2), p}}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("direct sums and shifts") {
  gen::Gen g(90);
  const auto a = g.pair(2, 0.0), b = g.pair(1, 0.0);
  const StieltjesPair d = direct_sum({a, b});
  const cplx z(-1, 2);
  const Mat v = eval(d, z);
  CHECK(oracle::rel(v.topLeftCorner(2, 2), eval(a, z)) < 1e-15);
  CHECK(oracle::rel(v.bottomRightCorner(1, 1), eval(b, z)) < 1e-15);
  CHECK(v.topRightCorner(2, 1).norm() == 0.0);

  const StieltjesPair s = shift(a, HermMatrix(Mat(Mat::Identity(2, 2))));
  CHECK(oracle::rel(eval(s, z), eval(a, z) + Mat::Identity(2, 2)) < 1e-15);
  const double c = opnorm(a.gamma.mat()) + 1.0;
  CHECK(kind_thrown([&] { shift(a, HermMatrix(Mat(-c * Mat::Identity(2, 2)))); }) == ErrorKind::ShiftNotPsd);
}

TEST_CASE("transpose map") {
  const auto sym = StieltjesPair::make(0.0, PsdMatrix(diag2(1, 2)),
                                       MatrixMeasure(2, SupportSet::right_ray(0), {{1.0, PsdMatrix(diag2(3, 0))}}));
  const auto st = std::get<StieltjesPair>(transpose_map(sym));
  CHECK(st.gamma == sym.gamma);
  CHECK(same_atoms(st.mu, sym.mu));

  Mat h(2, 2);
  h << 0.0, kI, -kI, 0.0;
  const auto herm = NevanlinnaTriple::make(HermMatrix(h), PsdMatrix::zero(2), MatrixMeasure(2, SupportSet::line()));
  const Representation ht = transpose_map(herm);
  CHECK(eval(ht, cplx(1, 1)) == Mat(eval(herm, cplx(1, 1)).transpose()));

  const auto zero = S0Measure::make(0.0, MatrixMeasure(2, SupportSet::right_ray(0)));
  CHECK(eval(transpose_map(zero), cplx(1, 1)) == Mat::Zero(2, 2));

  gen::Gen g(91);
  for (int k = 0; k < 60; ++k) {
    Representation r;
    switch (k % 4) {
      case 0: r = g.pair(); break;
      case 1: r = g.tpair(); break;
      case 2: r = g.sinf(); break;
      default: r = g.t0(); break;
    }
    const Representation t = transpose_map(r);
    const cplx z = g.point_off(excluded_set(r));
    CHECK(eval(t, z) == Mat(eval(r, z).transpose()));
  }
}
