#pragma once

#include <utility>
#include <vector>

#include "stieltjes/representation.hpp"

namespace stieltjes {

struct PinvResult {
  Mat pinv;
  int rank = 0;
  RVec singular_values;
};

/// Default cutoff 1e-12 q, relative to the largest singular value.
inline double default_pinv_rtol(Index q) { return 1e-12 * static_cast<double>(q); }

/// SVD-based Moore-Penrose inverse; rtol < 0 selects default_pinv_rtol.
PinvResult pinv(const Mat& m, double rtol = -1.0);

/// z -> -(z - alpha)^{-1} F(z)^+. Runs the rank guard first.
Evaluator pinv_map(const Evaluator& f, double alpha);
Evaluator pinv_map(const StieltjesPair& pair);

/// z -> -(beta - z)^{-1} G(z)^+. Runs the rank guard first.
Evaluator dual_pinv_map(const Evaluator& g, double beta);

/// z -> -F(z)^+. Runs the rank guard first.
Evaluator neg_pinv_map(const Evaluator& f);

/// Numerical rank at 8 probe points off the excluded set; throws
/// RankInstability if the ranks differ.
void rank_guard(const Evaluator& f);

/// T-side representation of G(z) = -[F(alpha + beta - conj z)]^* for pairs,
/// S0 measures and SInf triples, and the S-side one for the dual kinds
/// (with `target` then playing the role of alpha). Measures are reflected
/// through t -> alpha + beta - t; matrices are kept.
Representation dual_map(const Representation& rep, double target);

/// z -> -[F(alpha + beta - conj z)]^*, declared on the reflected excluded set.
Evaluator dual_evaluator(const Evaluator& f, double alpha, double beta);

/// (sum A_k* gamma_k A_k, sum A_k* mu_k A_k) for pairs sharing alpha; A_k is q_k x q.
StieltjesPair congruence_sum(const std::vector<std::pair<Mat, StieltjesPair>>& terms);
S0Measure congruence_sum(const std::vector<std::pair<Mat, S0Measure>>& terms);

/// Block-diagonal direct sum of pairs sharing alpha.
StieltjesPair direct_sum(const std::vector<StieltjesPair>& parts);

/// F + A as a pair; throws ShiftNotPsd when gamma + A is not nonnegative Hermitian.
StieltjesPair shift(const StieltjesPair& pair, const HermMatrix& a);

/// Transposes every matrix parameter and atom weight.
Representation transpose_map(const Representation& rep);

}  // namespace stieltjes
