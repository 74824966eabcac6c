#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "stieltjes/measure.hpp"

namespace stieltjes {

/// F(z) = gamma + sum (1 + t - alpha)/(t - z) W over [alpha, inf).
struct StieltjesPair {
  double alpha = 0.0;
  PsdMatrix gamma;
  MatrixMeasure mu;

  static StieltjesPair make(double alpha, PsdMatrix gamma, const MatrixMeasure& mu);
  Index dim() const noexcept { return gamma.dim(); }
};

/// F(z) = C + sum (1 + t^2)/(t - z) W over [alpha, inf).
struct KKPair {
  double alpha = 0.0;
  PsdMatrix C;
  MatrixMeasure eta;

  static KKPair make(double alpha, PsdMatrix C, const MatrixMeasure& eta);
  Index dim() const noexcept { return C.dim(); }
};

/// F(z) = A + z B + sum (1 + t z)/(t - z) W over the real line.
struct NevanlinnaTriple {
  HermMatrix A;
  PsdMatrix B;
  MatrixMeasure nu;

  static NevanlinnaTriple make(HermMatrix A, PsdMatrix B, const MatrixMeasure& nu);
  Index dim() const noexcept { return A.dim(); }
};

/// F(z) = sum W/(t - z) over [alpha, inf).
struct S0Measure {
  double alpha = 0.0;
  MatrixMeasure sigma;

  static S0Measure make(double alpha, const MatrixMeasure& sigma);
  Index dim() const noexcept { return sigma.dim(); }
};

/// F(z) = -D + (z - alpha)[E + sum (1 + t - alpha)/(t - z) W] over (alpha, inf).
struct SInfTriple {
  double alpha = 0.0;
  PsdMatrix D;
  PsdMatrix E;
  MatrixMeasure rho;

  static SInfTriple make(double alpha, PsdMatrix D, PsdMatrix E, const MatrixMeasure& rho);
  Index dim() const noexcept { return D.dim(); }
};

/// G(z) = -gamma + sum (1 + beta - t)/(t - z) W over (-inf, beta].
struct TPair {
  double beta = 0.0;
  PsdMatrix gamma;
  MatrixMeasure mu;

  static TPair make(double beta, PsdMatrix gamma, const MatrixMeasure& mu);
  Index dim() const noexcept { return gamma.dim(); }
};

/// G(z) = sum W/(t - z) over (-inf, beta].
struct T0Measure {
  double beta = 0.0;
  MatrixMeasure sigma;

  static T0Measure make(double beta, const MatrixMeasure& sigma);
  Index dim() const noexcept { return sigma.dim(); }
};

/// G(z) = D + (beta - z)[-E + sum (1 + beta - t)/(t - z) W] over (-inf, beta).
struct TInfTriple {
  double beta = 0.0;
  PsdMatrix D;
  PsdMatrix E;
  MatrixMeasure rho;

  static TInfTriple make(double beta, PsdMatrix D, PsdMatrix E, const MatrixMeasure& rho);
  Index dim() const noexcept { return D.dim(); }
};

using Representation = std::variant<StieltjesPair, KKPair, NevanlinnaTriple, S0Measure,
                                    SInfTriple, TPair, T0Measure, TInfTriple>;

enum class RepKind { StieltjesPair, KKPair, Nevanlinna, S0, SInf, TPair, T0, TInf };

/// JSON names: stieltjes_pair, kk_pair, nevanlinna, s0, sinf_triple, t_pair, t0, tinf_triple.
std::string_view to_string(RepKind kind) noexcept;
RepKind rep_kind_from_string(std::string_view name);

RepKind kind_of(const Representation& rep) noexcept;
Index dim_of(const Representation& rep) noexcept;
/// True for the classes living on (-inf, beta].
bool is_dual_side(RepKind kind) noexcept;
/// alpha or beta; throws UnsupportedKind for a Nevanlinna triple.
double endpoint_of(const Representation& rep);
/// Support of the representing measure (the set where evaluation is refused).
SupportSet excluded_set(const Representation& rep);

/// Pole-proximity radius 1e-9 (1 + |z|).
inline double near_radius(cplx z) { return 1e-9 * (1.0 + std::abs(z)); }

/// Black-box matrix function with a declared excluded set.
class Evaluator {
 public:
  using Fn = std::function<Mat(cplx)>;

  Evaluator() = default;
  Evaluator(Index q, SupportSet excluded, Fn fn);

  /// Throws PoleProximity within near_radius(z) of the excluded set and
  /// EvaluationFailed when the closure returns non-finite entries.
  Mat operator()(cplx z) const;

  Index dim() const noexcept { return q_; }
  const SupportSet& excluded() const noexcept { return excluded_; }

 private:
  Index q_ = 0;
  SupportSet excluded_;
  Fn fn_;
};

Evaluator make_evaluator(const Representation& rep);

Mat eval(const Representation& rep, cplx z);

/// (z - alpha) F(z) for S-side kinds, (beta - z) G(z) for T-side kinds.
Mat eval_mulz(const Representation& rep, cplx z);
Evaluator make_mulz_evaluator(const Representation& rep);

struct ReImParts {
  HermMatrix re;
  HermMatrix im;
};

/// Closed-form real and imaginary parts of a pair's value:
/// im F(z) = Im z sum (1+t-alpha)/|t-z|^2 W, re F(z) = gamma + sum (1+t-alpha)(t-Re z)/|t-z|^2 W.
ReImParts im_re_parts(const StieltjesPair& pair, cplx z);

/// Im[(z - alpha) F(z)] = Im z [gamma + sum (1+t-alpha)(t-alpha)/|t-z|^2 W].
HermMatrix im_mulz_closed_form(const StieltjesPair& pair, cplx z);

/// Exact atom-wise conversions. Within {StieltjesPair, KKPair, Nevanlinna, S0}
/// and within {TPair, T0} every target is reached through the pair. SInfTriple
/// converts only to and from the StieltjesPair of (z - alpha)^{-1} F(z);
/// TInfTriple likewise with the TPair of (beta - z)^{-1} G(z).
/// `alpha` is required when the source is a Nevanlinna triple.
Representation convert(const Representation& rep, RepKind target,
                       std::optional<double> alpha = std::nullopt);

struct ResidueEstimate {
  PsdMatrix weight;        // analytic: kernel factor times the atom weight
  Mat numeric;             // extrapolated lim (t0 - z) F(z) along z = t0 + i eps
  double discrepancy = 0;  // ||weight - numeric||
  double error_bound = 0;
};

/// Residue at an isolated node of a pair, S0 measure, T pair or T0 measure.
/// Throws NotAnAtom when t0 is not a node or sits within 10 merge radii of another.
ResidueEstimate residue_weight(const Representation& rep, double t0);

}  // namespace stieltjes
