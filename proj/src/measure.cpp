#include "stieltjes/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace stieltjes {

std::string_view to_string(SupportKind kind) noexcept {
  switch (kind) {
    case SupportKind::RightRay: return "right_ray";
    case SupportKind::OpenRightRay: return "open_right_ray";
    case SupportKind::LeftRay: return "left_ray";
    case SupportKind::OpenLeftRay: return "open_left_ray";
    case SupportKind::Line: return "line";
  }
  return "line";
}

SupportKind support_kind_from_string(std::string_view name) {
  if (name == "right_ray") return SupportKind::RightRay;
  if (name == "open_right_ray") return SupportKind::OpenRightRay;
  if (name == "left_ray") return SupportKind::LeftRay;
  if (name == "open_left_ray") return SupportKind::OpenLeftRay;
  if (name == "line") return SupportKind::Line;
  throw Error(ErrorKind::ParseError, "unknown support kind '" + std::string(name) + "'");
}

bool SupportSet::contains(double t) const noexcept {
  if (!std::isfinite(t)) return false;
  switch (kind) {
    case SupportKind::RightRay: return t >= endpoint;
    case SupportKind::OpenRightRay: return t > endpoint;
    case SupportKind::LeftRay: return t <= endpoint;
    case SupportKind::OpenLeftRay: return t < endpoint;
    case SupportKind::Line: return true;
  }
  return false;
}

double SupportSet::distance(cplx z) const noexcept {
  const double x = z.real();
  const double y = std::abs(z.imag());
  switch (kind) {
    case SupportKind::RightRay:
    case SupportKind::OpenRightRay:
      return x >= endpoint ? y : std::hypot(endpoint - x, y);
    case SupportKind::LeftRay:
    case SupportKind::OpenLeftRay:
      return x <= endpoint ? y : std::hypot(x - endpoint, y);
    case SupportKind::Line:
      return y;
  }
  return y;
}

namespace {

bool is_zero(const Mat& m) {
  for (Index j = 0; j < m.rows(); ++j)
    for (Index k = 0; k < m.cols(); ++k)
      if (m(j, k) != cplx(0.0, 0.0)) return false;
  return true;
}

std::vector<Atom> canonical_atoms(Index q, const SupportSet& support, std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.t))
      throw Error(ErrorKind::InvalidArgument, "measure node is not finite");
    if (a.weight.dim() != q)
      throw Error(ErrorKind::DimensionMismatch, "atom weight has wrong dimension");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.t < b.t; });

  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double anchor = atoms[i].t;
    Mat sum = atoms[i].weight.mat();
    std::size_t j = i + 1;
    bool merged_any = false;
    while (j < atoms.size() && atoms[j].t - anchor <= merge_radius(anchor)) {
      sum += atoms[j].weight.mat();
      merged_any = true;
      ++j;
    }
    if (!is_zero(sum)) {
      if (!support.contains(anchor))
        throw Error(ErrorKind::InvalidArgument,
                    "node " + std::to_string(anchor) + " lies outside the support set");
      merged.push_back(Atom{anchor, merged_any ? PsdMatrix(sum) : atoms[i].weight});
    }
    i = j;
  }
  return merged;
}

}  // namespace

MatrixMeasure::MatrixMeasure(Index q, SupportSet support, std::vector<Atom> atoms)
    : q_(q), support_(support) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "measure dimension must be positive");
  atoms_ = canonical_atoms(q, support_, std::move(atoms));
}

MatrixMeasure MatrixMeasure::with_support(SupportSet support) const {
  return MatrixMeasure(q_, support, atoms_);
}

bool operator==(const MatrixMeasure& a, const MatrixMeasure& b) {
  if (a.q_ != b.q_ || !(a.support_ == b.support_) || a.atoms_.size() != b.atoms_.size())
    return false;
  for (std::size_t k = 0; k < a.atoms_.size(); ++k) {
    if (a.atoms_[k].t != b.atoms_[k].t) return false;
    if (!(a.atoms_[k].weight == b.atoms_[k].weight)) return false;
  }
  return true;
}

MatrixMeasure canonicalize(const MatrixMeasure& mu) {
  return MatrixMeasure(mu.dim(), mu.support(), mu.atoms());
}

double ScalarMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.w;
  return s;
}

cplx ScalarMeasure::integrate(const std::function<cplx(double)>& f) const {
  cplx s = 0.0;
  for (const auto& a : atoms) {
    const cplx v = f(a.t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::NonFiniteKernel, "kernel not finite at node " + std::to_string(a.t));
    s += v * a.w;
  }
  return s;
}

PsdMatrix total_mass(const MatrixMeasure& mu) {
  if (mu.empty()) return PsdMatrix::zero(mu.dim());
  Mat s = Mat::Zero(mu.dim(), mu.dim());
  for (const Atom& a : mu.atoms()) s += a.weight.mat();
  return PsdMatrix(s);
}

Mat integrate(const MatrixMeasure& mu, const std::function<cplx(double)>& f) {
  const Index q = mu.dim();
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(q, q);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(q, q);
  for (const Atom& a : mu.atoms()) {
    const cplx k = f(a.t);
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
      throw Error(ErrorKind::NonFiniteKernel, "kernel not finite at node " + std::to_string(a.t));
    const Mat& w = a.weight.mat();
    for (Index r = 0; r < q; ++r) {
      for (Index c = 0; c < q; ++c) {
        const double wr = w(r, c).real();
        const double wi = w(r, c).imag();
        re(r, c) += k.real() * wr - k.imag() * wi;
        im(r, c) += k.real() * wi + k.imag() * wr;
      }
    }
  }
  Mat out(q, q);
  for (Index r = 0; r < q; ++r)
    for (Index c = 0; c < q; ++c) out(r, c) = cplx(re(r, c), im(r, c));
  return out;
}

SupportSet image_support(const SupportSet& s, const AffineMap& map) {
  if (s.kind == SupportKind::Line) return s;
  const double e = map(s.endpoint);
  if (map.scale > 0.0) return {s.kind, e};
  switch (s.kind) {
    case SupportKind::RightRay: return SupportSet::left_ray(e);
    case SupportKind::OpenRightRay: return SupportSet::open_left_ray(e);
    case SupportKind::LeftRay: return SupportSet::right_ray(e);
    case SupportKind::OpenLeftRay: return SupportSet::open_right_ray(e);
    case SupportKind::Line: break;
  }
  return s;
}

MatrixMeasure image_measure(const MatrixMeasure& mu, const AffineMap& map) {
  if (map.scale == 0.0 || !std::isfinite(map.scale) || !std::isfinite(map.shift))
    throw Error(ErrorKind::DegenerateMap, "affine map must have a finite nonzero slope");
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) atoms.push_back(Atom{map(a.t), a.weight});
  return MatrixMeasure(mu.dim(), image_support(mu.support(), map), std::move(atoms));
}

MatrixMeasure reflect_measure(const MatrixMeasure& mu, double center) {
  SupportSet s = image_support(mu.support(), AffineMap{-1.0, center});
  if (s.kind != SupportKind::Line) s.endpoint = center - mu.support().endpoint;
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) atoms.push_back(Atom{center - a.t, a.weight});
  return MatrixMeasure(mu.dim(), s, std::move(atoms));
}

std::vector<HermMatrix> moments(const MatrixMeasure& mu, int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "moment order must be nonnegative");
  const Index q = mu.dim();
  std::vector<Mat> acc(static_cast<std::size_t>(m) + 1, Mat::Zero(q, q));
  for (const Atom& a : mu.atoms()) {
    double p = 1.0;
    for (int j = 0; j <= m; ++j) {
      acc[j] += p * a.weight.mat();
      p *= a.t;
    }
  }
  std::vector<HermMatrix> out;
  out.reserve(acc.size());
  for (const Mat& s : acc) out.emplace_back(symmetrized(s));
  return out;
}

Mat block_hankel(const std::vector<HermMatrix>& s, int n) {
  if (n < 0 || s.size() < static_cast<std::size_t>(2 * n + 1))
    throw Error(ErrorKind::InvalidArgument, "block_hankel needs s_0 .. s_{2n}");
  const Index q = s.front().dim();
  Mat h(q * (n + 1), q * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) h.block(j * q, k * q, q, q) = s[j + k].mat();
  return h;
}

Mat shifted_block_hankel(const std::vector<HermMatrix>& s, int n, double alpha) {
  if (n < 0 || s.size() < static_cast<std::size_t>(2 * n + 2))
    throw Error(ErrorKind::InvalidArgument, "shifted_block_hankel needs s_0 .. s_{2n+1}");
  const Index q = s.front().dim();
  Mat h(q * (n + 1), q * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      h.block(j * q, k * q, q, q) = s[j + k + 1].mat() - alpha * s[j + k].mat();
  return h;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

MatrixMeasure quadrature_ingest(const std::function<Mat(double)>& density, double a,
                                double b, int n, Index q, SupportSet support) {
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "quadrature interval needs a < b");
  const GaussLegendreRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = mid + half * rule.nodes[i];
    const Mat d = density(t);
    if (d.rows() != q || d.cols() != q)
      throw Error(ErrorKind::DimensionMismatch, "density value has wrong dimension");
    if (!d.allFinite())
      throw Error(ErrorKind::NonPsdDensity, "density is not finite at " + std::to_string(t));
    if (!is_psd(d))
      throw Error(ErrorKind::NonPsdDensity,
                  "density is not nonnegative Hermitian at " + std::to_string(t));
    // Clip the admissible round-off below zero.
    Eigen::SelfAdjointEigenSolver<Mat> es(symmetrized(d));
    RVec lam = es.eigenvalues().cwiseMax(0.0);
    const Mat projected = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    atoms.push_back(Atom{t, PsdMatrix(half * rule.weights[i] * projected)});
  }
  return MatrixMeasure(q, support, std::move(atoms));
}

ScalarMeasure scalar_projection(const MatrixMeasure& mu, const CVec& u) {
  if (u.size() != mu.dim())
    throw Error(ErrorKind::DimensionMismatch, "projection vector has wrong dimension");
  ScalarMeasure nu{mu.support(), {}};
  nu.atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) {
    const double w = std::max(0.0, (u.adjoint() * a.weight.mat() * u)(0, 0).real());
    nu.atoms.push_back(ScalarAtom{a.t, w});
  }
  return nu;
}

MatrixMeasure reweight(const MatrixMeasure& mu, const std::function<double(double)>& f,
                       SupportSet support) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) {
    const double c = f(a.t);
    if (!std::isfinite(c) || c < 0.0)
      throw Error(ErrorKind::NonFiniteKernel,
                  "reweighting density invalid at node " + std::to_string(a.t));
    atoms.push_back(Atom{a.t, PsdMatrix(c * a.weight.mat())});
  }
  return MatrixMeasure(mu.dim(), support, std::move(atoms));
}

MatrixMeasure congruence(const MatrixMeasure& mu, const Mat& a) {
  if (a.rows() != mu.dim())
    throw Error(ErrorKind::DimensionMismatch, "congruence factor has wrong row count");
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& at : mu.atoms())
    atoms.push_back(Atom{at.t, PsdMatrix(a.adjoint() * at.weight.mat() * a)});
  return MatrixMeasure(a.cols(), mu.support(), std::move(atoms));
}

MatrixMeasure transpose(const MatrixMeasure& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms())
    atoms.push_back(Atom{a.t, PsdMatrix(Mat(a.weight.mat().transpose()))});
  return MatrixMeasure(mu.dim(), mu.support(), std::move(atoms));
}

MatrixMeasure add(const MatrixMeasure& a, const MatrixMeasure& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "measure dimensions differ");
  if (!(a.support() == b.support()))
    throw Error(ErrorKind::InvalidArgument, "measure supports differ");
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return MatrixMeasure(a.dim(), a.support(), std::move(atoms));
}

MatrixMeasure direct_sum(const std::vector<MatrixMeasure>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum of no measures");
  Index total = 0;
  for (const auto& p : parts) {
    if (!(p.support() == parts.front().support()))
      throw Error(ErrorKind::InvalidArgument, "direct sum needs a common support");
    total += p.dim();
  }
  std::vector<Atom> atoms;
  Index offset = 0;
  for (const auto& p : parts) {
    for (const Atom& a : p.atoms()) {
      Mat w = Mat::Zero(total, total);
      w.block(offset, offset, p.dim(), p.dim()) = a.weight.mat();
      atoms.push_back(Atom{a.t, PsdMatrix(w)});
    }
    offset += p.dim();
  }
  return MatrixMeasure(total, parts.front().support(), std::move(atoms));
}

}  // namespace stieltjes
