#include "stieltjes/transforms.hpp"

#include <memory>

#include <Eigen/SVD>

#include "stieltjes/classifier.hpp"

namespace stieltjes {

PinvResult pinv(const Mat& m, double rtol) {
  PinvResult out;
  if (rtol < 0.0) rtol = default_pinv_rtol(std::max(m.rows(), m.cols()));
  if (m.size() == 0) {
    out.pinv = Mat::Zero(m.cols(), m.rows());
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.singular_values = svd.singularValues();
  const RVec& s = out.singular_values;
  const double cut = rtol * s(0);
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cut && s(i) > 0.0) ++out.rank;
  const Index r = out.rank;
  out.pinv = svd.matrixV().leftCols(r) * s.head(r).cwiseInverse().asDiagonal() *
             svd.matrixU().leftCols(r).adjoint();
  return out;
}

void rank_guard(const Evaluator& f) {
  const RankReport rep = rank_constancy(f, structure_samples(f.excluded(), 8));
  if (!rep.pass) {
    std::string ranks;
    for (int r : rep.ranks) ranks += " " + std::to_string(r);
    throw Error(ErrorKind::RankInstability, "rank changes across probe points:" + ranks);
  }
}

Evaluator pinv_map(const Evaluator& f, double alpha) {
  rank_guard(f);
  return Evaluator(f.dim(), f.excluded(), [f, alpha](cplx z) -> Mat {
    return (-1.0 / (z - alpha)) * pinv(f(z), kRankRtol).pinv;
  });
}

Evaluator pinv_map(const StieltjesPair& pair) { return pinv_map(make_evaluator(pair), pair.alpha); }

Evaluator dual_pinv_map(const Evaluator& g, double beta) {
  rank_guard(g);
  return Evaluator(g.dim(), g.excluded(), [g, beta](cplx z) -> Mat {
    return (-1.0 / (beta - z)) * pinv(g(z), kRankRtol).pinv;
  });
}

Evaluator neg_pinv_map(const Evaluator& f) {
  rank_guard(f);
  return Evaluator(f.dim(), f.excluded(),
                   [f](cplx z) -> Mat { return -pinv(f(z), kRankRtol).pinv; });
}

Evaluator dual_evaluator(const Evaluator& f, double alpha, double beta) {
  const double c = alpha + beta;
  SupportSet ex = image_support(f.excluded(), AffineMap{-1.0, c});
  if (ex.kind != SupportKind::Line) ex.endpoint = c - f.excluded().endpoint;
  return Evaluator(f.dim(), ex, [f, c](cplx z) -> Mat {
    return -f(cplx(c - z.real(), z.imag())).adjoint();
  });
}

namespace {

// Reflection through c onto the given support; a node that lands on the wrong
// side of a closed endpoint by less than the merge radius is snapped onto it.
MatrixMeasure reflect_onto(const MatrixMeasure& m, double c, SupportSet target) {
  std::vector<Atom> atoms;
  atoms.reserve(m.atoms().size());
  for (const Atom& a : m.atoms()) {
    double t = c - a.t;
    const bool closed = target.kind == SupportKind::RightRay || target.kind == SupportKind::LeftRay;
    if (closed && !target.contains(t) && std::abs(t - target.endpoint) <= merge_radius(t))
      t = target.endpoint;
    atoms.push_back(Atom{t, a.weight});
  }
  return MatrixMeasure(m.dim(), target, std::move(atoms));
}

}  // namespace

Representation dual_map(const Representation& rep, double target) {
  switch (kind_of(rep)) {
    case RepKind::StieltjesPair: {
      const auto& r = std::get<StieltjesPair>(rep);
      return TPair::make(target, r.gamma,
                         reflect_onto(r.mu, r.alpha + target, SupportSet::left_ray(target)));
    }
    case RepKind::S0: {
      const auto& r = std::get<S0Measure>(rep);
      return T0Measure::make(target,
                             reflect_onto(r.sigma, r.alpha + target, SupportSet::left_ray(target)));
    }
    case RepKind::SInf: {
      const auto& r = std::get<SInfTriple>(rep);
      return TInfTriple::make(
          target, r.D, r.E,
          reflect_onto(r.rho, r.alpha + target, SupportSet::open_left_ray(target)));
    }
    case RepKind::TPair: {
      const auto& r = std::get<TPair>(rep);
      return StieltjesPair::make(target, r.gamma,
                                 reflect_onto(r.mu, target + r.beta, SupportSet::right_ray(target)));
    }
    case RepKind::T0: {
      const auto& r = std::get<T0Measure>(rep);
      return S0Measure::make(target,
                             reflect_onto(r.sigma, target + r.beta, SupportSet::right_ray(target)));
    }
    case RepKind::TInf: {
      const auto& r = std::get<TInfTriple>(rep);
      return SInfTriple::make(
          target, r.D, r.E,
          reflect_onto(r.rho, target + r.beta, SupportSet::open_right_ray(target)));
    }
    case RepKind::KKPair:
    case RepKind::Nevanlinna: break;
  }
  throw Error(ErrorKind::UnsupportedKind,
              "no dual for " + std::string(to_string(kind_of(rep))) + "; convert to a pair first");
}

namespace {

template <class Rep>
void check_terms(const std::vector<std::pair<Mat, Rep>>& terms, Index& q) {
  if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "congruence sum of no terms");
  q = terms.front().first.cols();
  for (const auto& [a, f] : terms) {
    if (a.cols() != q)
      throw Error(ErrorKind::DimensionMismatch, "all factors need the same column count");
    if (a.rows() != f.dim())
      throw Error(ErrorKind::DimensionMismatch, "factor rows must match the term dimension");
    if (f.alpha != terms.front().second.alpha)
      throw Error(ErrorKind::InvalidArgument, "all terms must share alpha");
  }
}

}  // namespace

StieltjesPair congruence_sum(const std::vector<std::pair<Mat, StieltjesPair>>& terms) {
  Index q = 0;
  check_terms(terms, q);
  const double alpha = terms.front().second.alpha;
  Mat gamma = Mat::Zero(q, q);
  std::vector<Atom> atoms;
  for (const auto& [a, f] : terms) {
    gamma += a.adjoint() * f.gamma.mat() * a;
    const MatrixMeasure part = congruence(f.mu, a);
    atoms.insert(atoms.end(), part.atoms().begin(), part.atoms().end());
  }
  return StieltjesPair::make(alpha, PsdMatrix(gamma),
                             MatrixMeasure(q, SupportSet::right_ray(alpha), std::move(atoms)));
}

S0Measure congruence_sum(const std::vector<std::pair<Mat, S0Measure>>& terms) {
  Index q = 0;
  check_terms(terms, q);
  const double alpha = terms.front().second.alpha;
  std::vector<Atom> atoms;
  for (const auto& [a, f] : terms) {
    const MatrixMeasure part = congruence(f.sigma, a);
    atoms.insert(atoms.end(), part.atoms().begin(), part.atoms().end());
  }
  return S0Measure::make(alpha, MatrixMeasure(q, SupportSet::right_ray(alpha), std::move(atoms)));
}

StieltjesPair direct_sum(const std::vector<StieltjesPair>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum of no pairs");
  const double alpha = parts.front().alpha;
  Index total = 0;
  std::vector<MatrixMeasure> measures;
  for (const auto& p : parts) {
    if (p.alpha != alpha) throw Error(ErrorKind::InvalidArgument, "all pairs must share alpha");
    total += p.dim();
    measures.push_back(p.mu);
  }
  Mat gamma = Mat::Zero(total, total);
  Index off = 0;
  for (const auto& p : parts) {
    gamma.block(off, off, p.dim(), p.dim()) = p.gamma.mat();
    off += p.dim();
  }
  return StieltjesPair::make(alpha, PsdMatrix(gamma), direct_sum(measures));
}

StieltjesPair shift(const StieltjesPair& pair, const HermMatrix& a) {
  if (a.dim() != pair.dim()) throw Error(ErrorKind::DimensionMismatch, "shift has wrong dimension");
  PsdMatrix gamma;
  try {
    gamma = PsdMatrix(pair.gamma.mat() + a.mat());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPsd) throw;
    throw Error(ErrorKind::ShiftNotPsd, "gamma + A is not nonnegative Hermitian");
  }
  return StieltjesPair::make(pair.alpha, std::move(gamma), pair.mu);
}

namespace {

PsdMatrix tr(const PsdMatrix& m) { return PsdMatrix(Mat(m.mat().transpose())); }
HermMatrix tr(const HermMatrix& m) { return HermMatrix(Mat(m.mat().transpose())); }

}  // namespace

Representation transpose_map(const Representation& rep) {
  switch (kind_of(rep)) {
    case RepKind::StieltjesPair: {
      const auto& r = std::get<StieltjesPair>(rep);
      return StieltjesPair::make(r.alpha, tr(r.gamma), transpose(r.mu));
    }
    case RepKind::KKPair: {
      const auto& r = std::get<KKPair>(rep);
      return KKPair::make(r.alpha, tr(r.C), transpose(r.eta));
    }
    case RepKind::Nevanlinna: {
      const auto& r = std::get<NevanlinnaTriple>(rep);
      return NevanlinnaTriple::make(tr(r.A), tr(r.B), transpose(r.nu));
    }
    case RepKind::S0: {
      const auto& r = std::get<S0Measure>(rep);
      return S0Measure::make(r.alpha, transpose(r.sigma));
    }
    case RepKind::SInf: {
      const auto& r = std::get<SInfTriple>(rep);
      return SInfTriple::make(r.alpha, tr(r.D), tr(r.E), transpose(r.rho));
    }
    case RepKind::TPair: {
      const auto& r = std::get<TPair>(rep);
      return TPair::make(r.beta, tr(r.gamma), transpose(r.mu));
    }
    case RepKind::T0: {
      const auto& r = std::get<T0Measure>(rep);
      return T0Measure::make(r.beta, transpose(r.sigma));
    }
    case RepKind::TInf: {
      const auto& r = std::get<TInfTriple>(rep);
      return TInfTriple::make(r.beta, tr(r.D), tr(r.E), transpose(r.rho));
    }
  }
  return rep;
}

}  // namespace stieltjes
