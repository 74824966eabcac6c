#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stieltjes/representation.hpp"

namespace stieltjes {

inline constexpr double kTolCert = 1e-9;
inline constexpr double kTolCr = 1e-6;
inline constexpr double kRankRtol = 1e-10;
inline constexpr double kProjectorTol = 1e-9;

/// Sample layout around an endpoint e (alpha or beta):
///   upper: e + offset + i y, y log-spaced over [im_min, im_max], offsets
///          drawn uniformly from [-re_span, re_span]
///   lower: e + offset - i y with independent offsets
///   gap:   e -/+ d (S side / T side), d log-spaced over [im_min, im_max]
struct GridConfig {
  int n_upper = 64;
  int n_lower = 64;
  int n_gap = 32;
  double im_min = 1e-3;
  double im_max = 1e3;
  double re_span = 10.0;
  std::uint64_t seed = 42;
};

struct GridPoints {
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  std::vector<cplx> gap;
};

/// dual_side places the gap on (e, inf) instead of (-inf, e).
GridPoints make_grid(double endpoint, bool dual_side, const GridConfig& cfg);

enum class CertKind { S, SViaPair, S0, Sdot, SInf, T, TViaPair, T0, Tdot, TInf, R };

/// CLI names: s, s_via_pair, s0, sdot, sinf, t, t_via_pair, t0, tdot, tinf, r.
std::string_view to_string(CertKind kind) noexcept;
CertKind cert_kind_from_string(std::string_view name);
bool is_dual_side(CertKind kind) noexcept;

struct ConditionResult {
  std::string name;
  double margin = 0.0;  // worst signed margin over the samples
  cplx witness;         // sample where the worst margin occurred
  int samples = 0;
};

struct Certificate {
  CertKind kind = CertKind::S;
  double endpoint = 0.0;
  bool pass = false;
  double tol = kTolCert;
  GridConfig grid;
  std::vector<ConditionResult> conditions;

  /// Worst margin over all conditions.
  const ConditionResult& worst() const;
};

/// Samples every condition of the class on the grid. Margins:
///   holomorphy:       (tol_cr - r)/tol_cr with r the scaled Cauchy-Riemann residual
///   PSD conditions:   lambda_min / (1 + ||F(z)||)
///   real-axis values: min(lambda_min(herm part), -||anti-herm part||) / (1 + ||F(x)||)
///   gap_monotone:     the same margin for F(x_{k+1}) - F(x_k) over the sorted gap points
/// The verdict is pass iff every margin is >= -tol.
/// Throws EvaluationFailed (with the point) when F cannot be evaluated.
Certificate certify_class(const Evaluator& f, double endpoint, CertKind kind,
                          const GridConfig& grid = {}, double tol = kTolCert);

/// Scaled Cauchy-Riemann residual at z: symmetric difference quotients along
/// the real and imaginary axes, r = (||Dy - i Dx|| - roundoff)/(1 + ||Dx||).
/// The step is min(1e-5 (1 + |z|), 1e-4 dist(z, excluded)).
double cauchy_riemann_residual(const Evaluator& f, cplx z);

/// Worst margin of an ordered chain x_1 < ... < x_n on the gap:
///   S:    0 <= F(x_1) <= F(x_2) <= ...         (increasing_from_zero)
///   SInf: F(x_1) <= F(x_2) <= ... <= 0
///   T:    G(x_1) <= G(x_2) <= ... <= 0         (points beyond beta)
///   TInf: 0 <= G(x_1) <= G(x_2) <= ...
/// Each step contributes lambda_min(difference)/(1 + ||F||).
ConditionResult monotone_chain_margin(const Evaluator& f, CertKind kind,
                                      const std::vector<double>& xs);

struct SubspaceReport {
  Mat null_expected;   // projector onto the intersection of parameter null spaces
  Mat range_expected;  // projector onto the sum of parameter ranges
  std::vector<cplx> samples;
  std::vector<int> ranks;
  int rank = 0;
  double max_null_dev = 0.0;
  double max_range_dev = 0.0;
  bool pass = false;
};

/// Compares N(F(z)) and R(F(z)) at 10 sampled z with the spaces predicted
/// by the parameters (gamma and mu(Omega); sigma(Omega); D, E and rho(Omega);
/// A, B and nu(Omega); and the dual analogues).
SubspaceReport kernel_range_report(const Representation& rep, double tol = kProjectorTol);

/// Ten points off the excluded set of `rep`, mixing both half-planes and the gap.
std::vector<cplx> structure_samples(const Representation& rep);
std::vector<cplx> structure_samples(const SupportSet& excluded, std::size_t n = 10);

struct RankReport {
  std::vector<int> ranks;
  int rank = 0;
  bool pass = false;
};

/// Numerical rank (singular values > rtol sigma_1) at every sample; pass iff all agree.
RankReport rank_constancy(const Evaluator& f, const std::vector<cplx>& samples,
                          double rtol = kRankRtol);

struct EigenReport {
  int dimension = 0;
  double max_dev = 0.0;
  bool pass = false;
};

/// Checks that N(F(z) - lambda I) does not depend on z. Preconditions:
/// pair/KK/S0 gamma - lambda I >= 0, SInf D + lambda I >= 0,
/// TPair/T0 gamma + lambda I >= 0, TInf D - lambda I >= 0 (PreconditionUnmet otherwise).
EigenReport eigen_invariance(const Representation& rep, double lambda,
                             double tol = kProjectorTol);

struct DominationReport {
  std::vector<std::pair<std::string, bool>> conditions;
  bool all_true = false;
};

/// The equivalent statements (i), (i'), (ii), (iii), (iv), (iv'), (v), (vi)
/// relating N(A) to the values and parameters of a pair. Throws
/// InconsistentEquivalence when they disagree.
DominationReport null_domination(const StieltjesPair& pair, const Mat& a,
                                 double tol = kProjectorTol);

/// Worker count from STIELTJES_KIT_THREADS (default: hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. The first
/// exception in index order is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stieltjes
