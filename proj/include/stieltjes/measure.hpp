#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stieltjes/linalg.hpp"

namespace stieltjes {

enum class SupportKind { RightRay, OpenRightRay, LeftRay, OpenLeftRay, Line };

std::string_view to_string(SupportKind kind) noexcept;
SupportKind support_kind_from_string(std::string_view name);

/// One of [a, +inf), (a, +inf), (-inf, b], (-inf, b), or the whole real line.
struct SupportSet {
  SupportKind kind = SupportKind::Line;
  double endpoint = 0.0;

  static SupportSet right_ray(double a) { return {SupportKind::RightRay, a}; }
  static SupportSet open_right_ray(double a) { return {SupportKind::OpenRightRay, a}; }
  static SupportSet left_ray(double b) { return {SupportKind::LeftRay, b}; }
  static SupportSet open_left_ray(double b) { return {SupportKind::OpenLeftRay, b}; }
  static SupportSet line() { return {SupportKind::Line, 0.0}; }

  bool contains(double t) const noexcept;
  /// Euclidean distance from z to the closure of the set.
  double distance(cplx z) const noexcept;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

/// Node-merge radius for canonicalization: 1e-12 (1 + |t|).
inline double merge_radius(double t) { return 1e-12 * (1.0 + std::abs(t)); }

struct Atom {
  double t = 0.0;
  PsdMatrix weight;
};

/// Finite atomic nonnegative Hermitian q x q measure. Construction
/// canonicalizes: nodes sorted ascending, nodes within merge_radius of the
/// cluster's first node merged by weight addition, zero weights dropped.
class MatrixMeasure {
 public:
  MatrixMeasure() = default;
  MatrixMeasure(Index q, SupportSet support, std::vector<Atom> atoms = {});

  static MatrixMeasure zero(Index q, SupportSet support) { return MatrixMeasure(q, support); }

  Index dim() const noexcept { return q_; }
  const SupportSet& support() const noexcept { return support_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }

  /// Same atoms declared on a different support set (re-validated).
  MatrixMeasure with_support(SupportSet support) const;

  friend bool operator==(const MatrixMeasure& a, const MatrixMeasure& b);

 private:
  Index q_ = 0;
  SupportSet support_;
  std::vector<Atom> atoms_;
};

/// Runs the canonicalization pass again; idempotent bit for bit.
MatrixMeasure canonicalize(const MatrixMeasure& mu);

struct ScalarAtom {
  double t = 0.0;
  double w = 0.0;
};

struct ScalarMeasure {
  SupportSet support;
  std::vector<ScalarAtom> atoms;

  double total_mass() const;
  cplx integrate(const std::function<cplx(double)>& f) const;
};

/// mu(Omega) = sum of the atom weights.
PsdMatrix total_mass(const MatrixMeasure& mu);

/// sum_k f(t_k) W_k. Throws NonFiniteKernel when f(t_k) is not finite.
/// Real and imaginary parts are accumulated separately, so conjugating the
/// kernel conjugate-transposes the result bit for bit.
Mat integrate(const MatrixMeasure& mu, const std::function<cplx(double)>& f);

struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;

  double operator()(double t) const noexcept { return scale * t + shift; }
};

/// Image (push-forward) measure under t -> a t + b, a != 0.
MatrixMeasure image_measure(const MatrixMeasure& mu, const AffineMap& map);

/// Image measure under t -> c - t. Kept separate from the affine form so that
/// applying it twice with the same c is exact whenever c - t is.
MatrixMeasure reflect_measure(const MatrixMeasure& mu, double center);

SupportSet image_support(const SupportSet& s, const AffineMap& map);

/// s_0 .. s_m with s_j = sum_k t_k^j W_k.
std::vector<HermMatrix> moments(const MatrixMeasure& mu, int m);

/// Block Hankel matrix [s_{j+k}]_{j,k=0}^{n}; needs s_0 .. s_{2n}.
Mat block_hankel(const std::vector<HermMatrix>& s, int n);

/// Block matrix [s_{j+k+1} - alpha s_{j+k}]_{j,k=0}^{n}; needs s_0 .. s_{2n+1}.
Mat shifted_block_hankel(const std::vector<HermMatrix>& s, int n, double alpha);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

/// Discretizes density(t) dt on [a, b] by an n-point Gauss-Legendre rule.
/// Throws NonPsdDensity when a sampled value is not nonnegative Hermitian.
MatrixMeasure quadrature_ingest(const std::function<Mat(double)>& density, double a,
                                double b, int n, Index q, SupportSet support);

/// nu = u* mu u.
ScalarMeasure scalar_projection(const MatrixMeasure& mu, const CVec& u);

/// Atom-wise reweighting W_k -> f(t_k) W_k, f(t_k) >= 0.
MatrixMeasure reweight(const MatrixMeasure& mu, const std::function<double(double)>& f,
                       SupportSet support);

/// A* mu A for a p x q matrix A (result is q x q).
MatrixMeasure congruence(const MatrixMeasure& mu, const Mat& a);

/// Transposes every atom weight.
MatrixMeasure transpose(const MatrixMeasure& mu);

/// Sum of measures on a common support with equal dimensions.
MatrixMeasure add(const MatrixMeasure& a, const MatrixMeasure& b);

/// Block-diagonal direct sum diag(mu_1, ..., mu_n) on a common support.
MatrixMeasure direct_sum(const std::vector<MatrixMeasure>& parts);

}  // namespace stieltjes
