#include "stieltjes/representation.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "stieltjes/richardson.hpp"

namespace stieltjes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 1/(t - z), written out so that z -> conj(z) conjugates the result bit for bit.
cplx inv_shift(double t, cplx z) {
  const double c = t - z.real();
  const double d = z.imag();
  const double n = c * c + d * d;
  return {c / n, d / n};
}

cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Entrywise s * m with the same explicit product as cmul.
Mat scale(cplx s, const Mat& m) {
  Mat out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = cmul(s, m(r, c));
  return out;
}

void require_dim(Index expected, Index got, const char* what) {
  if (expected != got)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(got) + ", expected " +
                                                  std::to_string(expected));
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
}

MatrixMeasure on_support(const MatrixMeasure& m, SupportSet s) {
  if (m.support() == s) return m;
  return m.with_support(s);
}

PsdMatrix as_psd(const Mat& m) { return PsdMatrix(m); }

bool at_node(double t, double t0) { return std::abs(t - t0) <= merge_radius(t0); }

}  // namespace

StieltjesPair StieltjesPair::make(double alpha, PsdMatrix gamma, const MatrixMeasure& mu) {
  require_finite(alpha, "alpha");
  require_dim(gamma.dim(), mu.dim(), "measure");
  return {alpha, std::move(gamma), on_support(mu, SupportSet::right_ray(alpha))};
}

KKPair KKPair::make(double alpha, PsdMatrix C, const MatrixMeasure& eta) {
  require_finite(alpha, "alpha");
  require_dim(C.dim(), eta.dim(), "measure");
  return {alpha, std::move(C), on_support(eta, SupportSet::right_ray(alpha))};
}

NevanlinnaTriple NevanlinnaTriple::make(HermMatrix A, PsdMatrix B, const MatrixMeasure& nu) {
  require_dim(A.dim(), B.dim(), "B");
  require_dim(A.dim(), nu.dim(), "measure");
  return {std::move(A), std::move(B), on_support(nu, SupportSet::line())};
}

S0Measure S0Measure::make(double alpha, const MatrixMeasure& sigma) {
  require_finite(alpha, "alpha");
  return {alpha, on_support(sigma, SupportSet::right_ray(alpha))};
}

SInfTriple SInfTriple::make(double alpha, PsdMatrix D, PsdMatrix E, const MatrixMeasure& rho) {
  require_finite(alpha, "alpha");
  require_dim(D.dim(), E.dim(), "E");
  require_dim(D.dim(), rho.dim(), "measure");
  return {alpha, std::move(D), std::move(E), on_support(rho, SupportSet::open_right_ray(alpha))};
}

TPair TPair::make(double beta, PsdMatrix gamma, const MatrixMeasure& mu) {
  require_finite(beta, "beta");
  require_dim(gamma.dim(), mu.dim(), "measure");
  return {beta, std::move(gamma), on_support(mu, SupportSet::left_ray(beta))};
}

T0Measure T0Measure::make(double beta, const MatrixMeasure& sigma) {
  require_finite(beta, "beta");
  return {beta, on_support(sigma, SupportSet::left_ray(beta))};
}

TInfTriple TInfTriple::make(double beta, PsdMatrix D, PsdMatrix E, const MatrixMeasure& rho) {
  require_finite(beta, "beta");
  require_dim(D.dim(), E.dim(), "E");
  require_dim(D.dim(), rho.dim(), "measure");
  return {beta, std::move(D), std::move(E), on_support(rho, SupportSet::open_left_ray(beta))};
}

std::string_view to_string(RepKind kind) noexcept {
  switch (kind) {
    case RepKind::StieltjesPair: return "stieltjes_pair";
    case RepKind::KKPair: return "kk_pair";
    case RepKind::Nevanlinna: return "nevanlinna";
    case RepKind::S0: return "s0";
    case RepKind::SInf: return "sinf_triple";
    case RepKind::TPair: return "t_pair";
    case RepKind::T0: return "t0";
    case RepKind::TInf: return "tinf_triple";
  }
  return "stieltjes_pair";
}

RepKind rep_kind_from_string(std::string_view name) {
  for (RepKind k : {RepKind::StieltjesPair, RepKind::KKPair, RepKind::Nevanlinna, RepKind::S0,
                    RepKind::SInf, RepKind::TPair, RepKind::T0, RepKind::TInf})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::UnsupportedKind, "unknown representation kind '" + std::string(name) + "'");
}

RepKind kind_of(const Representation& rep) noexcept {
  return static_cast<RepKind>(rep.index());
}

Index dim_of(const Representation& rep) noexcept {
  return std::visit([](const auto& r) { return r.dim(); }, rep);
}

bool is_dual_side(RepKind kind) noexcept {
  return kind == RepKind::TPair || kind == RepKind::T0 || kind == RepKind::TInf;
}

double endpoint_of(const Representation& rep) {
  return std::visit(
      overloaded{
          [](const NevanlinnaTriple&) -> double {
            throw Error(ErrorKind::UnsupportedKind, "a Nevanlinna triple has no endpoint");
          },
          [](const TPair& r) { return r.beta; },
          [](const T0Measure& r) { return r.beta; },
          [](const TInfTriple& r) { return r.beta; },
          [](const auto& r) { return r.alpha; },
      },
      rep);
}

SupportSet excluded_set(const Representation& rep) {
  if (std::holds_alternative<NevanlinnaTriple>(rep)) return SupportSet::line();
  const double e = endpoint_of(rep);
  return is_dual_side(kind_of(rep)) ? SupportSet::left_ray(e) : SupportSet::right_ray(e);
}

Evaluator::Evaluator(Index q, SupportSet excluded, Fn fn)
    : q_(q), excluded_(excluded), fn_(std::move(fn)) {}

Mat Evaluator::operator()(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidArgument, "evaluation point is not finite");
  if (excluded_.distance(z) < near_radius(z))
    throw Error(ErrorKind::PoleProximity, "z = (" + std::to_string(z.real()) + ", " +
                                              std::to_string(z.imag()) +
                                              ") is too close to the excluded set");
  Mat v = fn_(z);
  if (v.rows() != q_ || v.cols() != q_)
    throw Error(ErrorKind::DimensionMismatch, "evaluator returned a matrix of the wrong size");
  if (!v.allFinite())
    throw Error(ErrorKind::EvaluationFailed, "evaluator returned non-finite entries at z = (" +
                                                 std::to_string(z.real()) + ", " +
                                                 std::to_string(z.imag()) + ")");
  return v;
}

namespace {

Mat eval_raw(const Representation& rep, cplx z) {
  return std::visit(
      overloaded{
          [z](const StieltjesPair& r) -> Mat {
            const double a = r.alpha;
            return r.gamma.mat() +
                   integrate(r.mu, [a, z](double t) { return (1.0 + t - a) * inv_shift(t, z); });
          },
          [z](const KKPair& r) -> Mat {
            return r.C.mat() +
                   integrate(r.eta, [z](double t) { return (1.0 + t * t) * inv_shift(t, z); });
          },
          [z](const NevanlinnaTriple& r) -> Mat {
            return r.A.mat() + scale(z, r.B.mat()) +
                   integrate(r.nu, [z](double t) {
                     return cmul(cplx(1.0 + t * z.real(), t * z.imag()), inv_shift(t, z));
                   });
          },
          [z](const S0Measure& r) -> Mat {
            return integrate(r.sigma, [z](double t) { return inv_shift(t, z); });
          },
          [z](const SInfTriple& r) -> Mat {
            const double a = r.alpha;
            const Mat inner =
                r.E.mat() +
                integrate(r.rho, [a, z](double t) { return (1.0 + t - a) * inv_shift(t, z); });
            return scale(cplx(z.real() - a, z.imag()), inner) - r.D.mat();
          },
          [z](const TPair& r) -> Mat {
            const double b = r.beta;
            return integrate(r.mu, [b, z](double t) { return (1.0 + b - t) * inv_shift(t, z); }) -
                   r.gamma.mat();
          },
          [z](const T0Measure& r) -> Mat {
            return integrate(r.sigma, [z](double t) { return inv_shift(t, z); });
          },
          [z](const TInfTriple& r) -> Mat {
            const double b = r.beta;
            const Mat inner =
                integrate(r.rho, [b, z](double t) { return (1.0 + b - t) * inv_shift(t, z); }) -
                r.E.mat();
            return r.D.mat() + scale(cplx(b - z.real(), -z.imag()), inner);
          },
      },
      rep);
}

cplx mulz_factor(const Representation& rep, cplx z) {
  const double e = endpoint_of(rep);
  if (is_dual_side(kind_of(rep))) return {e - z.real(), -z.imag()};
  return {z.real() - e, z.imag()};
}

}  // namespace

Evaluator make_evaluator(const Representation& rep) {
  auto shared = std::make_shared<const Representation>(rep);
  return Evaluator(dim_of(rep), excluded_set(rep),
                   [shared](cplx z) { return eval_raw(*shared, z); });
}

Mat eval(const Representation& rep, cplx z) {
  const SupportSet ex = excluded_set(rep);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidArgument, "evaluation point is not finite");
  if (ex.distance(z) < near_radius(z))
    throw Error(ErrorKind::PoleProximity, "z is too close to the support of the measure");
  return eval_raw(rep, z);
}

Mat eval_mulz(const Representation& rep, cplx z) {
  return scale(mulz_factor(rep, z), eval(rep, z));
}

Evaluator make_mulz_evaluator(const Representation& rep) {
  auto shared = std::make_shared<const Representation>(rep);
  return Evaluator(dim_of(rep), excluded_set(rep), [shared](cplx z) {
    return scale(mulz_factor(*shared, z), eval_raw(*shared, z));
  });
}

namespace {

void check_pair_point(const StieltjesPair& pair, cplx z) {
  if (SupportSet::right_ray(pair.alpha).distance(z) < near_radius(z))
    throw Error(ErrorKind::PoleProximity, "z is too close to the support of the measure");
}

double abs2_shift(double t, cplx z) {
  const double c = t - z.real();
  return c * c + z.imag() * z.imag();
}

}  // namespace

ReImParts im_re_parts(const StieltjesPair& pair, cplx z) {
  check_pair_point(pair, z);
  const double a = pair.alpha;
  const double x = z.real();
  const double y = z.imag();
  const Mat im = integrate(pair.mu, [a, z, y](double t) {
    return cplx(y * (1.0 + t - a) / abs2_shift(t, z), 0.0);
  });
  const Mat re = pair.gamma.mat() + integrate(pair.mu, [a, z, x](double t) {
                   return cplx((1.0 + t - a) * (t - x) / abs2_shift(t, z), 0.0);
                 });
  return {HermMatrix(re), HermMatrix(im)};
}

HermMatrix im_mulz_closed_form(const StieltjesPair& pair, cplx z) {
  check_pair_point(pair, z);
  const double a = pair.alpha;
  const Mat inner = pair.gamma.mat() + integrate(pair.mu, [a, z](double t) {
                      return cplx((1.0 + t - a) * (t - a) / abs2_shift(t, z), 0.0);
                    });
  return HermMatrix(z.imag() * inner);
}

namespace {

bool is_s_group(RepKind k) {
  return k == RepKind::StieltjesPair || k == RepKind::KKPair || k == RepKind::Nevanlinna ||
         k == RepKind::S0;
}

bool is_t_group(RepKind k) { return k == RepKind::TPair || k == RepKind::T0; }

Error unsupported(RepKind from, RepKind to) {
  return Error(ErrorKind::UnsupportedPath, "no conversion from " + std::string(to_string(from)) +
                                               " to " + std::string(to_string(to)));
}

bool negligible(const HermMatrix& m, const Mat& scale_ref) {
  return opnorm(m.mat()) <= kPsdTol * (1.0 + opnorm(scale_ref));
}

StieltjesPair kk_to_pair(const KKPair& kk) {
  const double a = kk.alpha;
  return StieltjesPair::make(
      a, kk.C,
      reweight(kk.eta, [a](double t) { return (1.0 + t * t) / (1.0 + t - a); },
               SupportSet::right_ray(a)));
}

KKPair pair_to_kk(const StieltjesPair& p) {
  const double a = p.alpha;
  return KKPair::make(
      a, p.gamma,
      reweight(p.mu, [a](double t) { return (1.0 + t - a) / (1.0 + t * t); },
               SupportSet::right_ray(a)));
}

NevanlinnaTriple kk_to_nevanlinna(const KKPair& kk) {
  const Mat first = integrate(kk.eta, [](double t) { return cplx(t, 0.0); });
  return NevanlinnaTriple::make(HermMatrix(symmetrized(kk.C.mat() + first)),
                                PsdMatrix::zero(kk.dim()), kk.eta.with_support(SupportSet::line()));
}

KKPair nevanlinna_to_kk(const NevanlinnaTriple& n, std::optional<double> alpha) {
  if (!alpha)
    throw Error(ErrorKind::InvalidArgument, "converting a Nevanlinna triple needs alpha");
  const double a = *alpha;
  if (!negligible(n.B, n.A.mat()))
    throw Error(ErrorKind::IllegalConversion, "linear term B is nonzero");
  for (const Atom& at : n.nu.atoms())
    if (at.t < a)
      throw Error(ErrorKind::IllegalConversion,
                  "measure has mass at " + std::to_string(at.t) + " below alpha");
  const Mat first = integrate(n.nu, [](double t) { return cplx(t, 0.0); });
  PsdMatrix C;
  try {
    C = PsdMatrix(n.A.mat() - first);
  } catch (const Error&) {
    throw Error(ErrorKind::IllegalConversion, "A - int t nu(dt) is not nonnegative Hermitian");
  }
  return KKPair::make(a, std::move(C), n.nu.with_support(SupportSet::right_ray(a)));
}

S0Measure pair_to_s0(const StieltjesPair& p) {
  if (!negligible(p.gamma, total_mass(p.mu).mat()))
    throw Error(ErrorKind::IllegalConversion, "gamma is nonzero, so F(iy) does not vanish");
  const double a = p.alpha;
  return S0Measure::make(
      a, reweight(p.mu, [a](double t) { return 1.0 + t - a; }, SupportSet::right_ray(a)));
}

StieltjesPair s0_to_pair(const S0Measure& s) {
  const double a = s.alpha;
  return StieltjesPair::make(
      a, PsdMatrix::zero(s.dim()),
      reweight(s.sigma, [a](double t) { return 1.0 / (1.0 + t - a); }, SupportSet::right_ray(a)));
}

StieltjesPair to_pair(const Representation& rep, std::optional<double> alpha) {
  switch (kind_of(rep)) {
    case RepKind::StieltjesPair: return std::get<StieltjesPair>(rep);
    case RepKind::KKPair: return kk_to_pair(std::get<KKPair>(rep));
    case RepKind::Nevanlinna:
      return kk_to_pair(nevanlinna_to_kk(std::get<NevanlinnaTriple>(rep), alpha));
    case RepKind::S0: return s0_to_pair(std::get<S0Measure>(rep));
    default: break;
  }
  throw unsupported(kind_of(rep), RepKind::StieltjesPair);
}

Representation from_pair(const StieltjesPair& p, RepKind target) {
  switch (target) {
    case RepKind::StieltjesPair: return p;
    case RepKind::KKPair: return pair_to_kk(p);
    case RepKind::Nevanlinna: return kk_to_nevanlinna(pair_to_kk(p));
    case RepKind::S0: return pair_to_s0(p);
    default: break;
  }
  throw unsupported(RepKind::StieltjesPair, target);
}

// The measure's mass at the endpoint and the rest of it on the open ray.
std::pair<Mat, std::vector<Atom>> split_endpoint(const MatrixMeasure& m, double e) {
  Mat d = Mat::Zero(m.dim(), m.dim());
  std::vector<Atom> rest;
  for (const Atom& at : m.atoms()) {
    if (at_node(at.t, e))
      d += at.weight.mat();
    else
      rest.push_back(at);
  }
  return {d, rest};
}

StieltjesPair sinf_to_pair(const SInfTriple& s) {
  std::vector<Atom> atoms = s.rho.atoms();
  atoms.push_back(Atom{s.alpha, s.D});
  return StieltjesPair::make(s.alpha, s.E,
                             MatrixMeasure(s.dim(), SupportSet::right_ray(s.alpha), atoms));
}

SInfTriple pair_to_sinf(const StieltjesPair& p) {
  auto [d, rest] = split_endpoint(p.mu, p.alpha);
  return SInfTriple::make(p.alpha, as_psd(d), p.gamma,
                          MatrixMeasure(p.dim(), SupportSet::open_right_ray(p.alpha), rest));
}

T0Measure tpair_to_t0(const TPair& p) {
  if (!negligible(p.gamma, total_mass(p.mu).mat()))
    throw Error(ErrorKind::IllegalConversion, "gamma is nonzero, so G(iy) does not vanish");
  const double b = p.beta;
  return T0Measure::make(
      b, reweight(p.mu, [b](double t) { return 1.0 + b - t; }, SupportSet::left_ray(b)));
}

TPair t0_to_tpair(const T0Measure& s) {
  const double b = s.beta;
  return TPair::make(
      b, PsdMatrix::zero(s.dim()),
      reweight(s.sigma, [b](double t) { return 1.0 / (1.0 + b - t); }, SupportSet::left_ray(b)));
}

TPair tinf_to_tpair(const TInfTriple& s) {
  std::vector<Atom> atoms = s.rho.atoms();
  atoms.push_back(Atom{s.beta, s.D});
  return TPair::make(s.beta, s.E, MatrixMeasure(s.dim(), SupportSet::left_ray(s.beta), atoms));
}

TInfTriple tpair_to_tinf(const TPair& p) {
  auto [d, rest] = split_endpoint(p.mu, p.beta);
  return TInfTriple::make(p.beta, as_psd(d), p.gamma,
                          MatrixMeasure(p.dim(), SupportSet::open_left_ray(p.beta), rest));
}

}  // namespace

Representation convert(const Representation& rep, RepKind target, std::optional<double> alpha) {
  const RepKind from = kind_of(rep);
  if (from == target) return rep;

  if (is_s_group(from) && is_s_group(target)) return from_pair(to_pair(rep, alpha), target);

  if (from == RepKind::SInf && target == RepKind::StieltjesPair)
    return sinf_to_pair(std::get<SInfTriple>(rep));
  if (from == RepKind::StieltjesPair && target == RepKind::SInf)
    return pair_to_sinf(std::get<StieltjesPair>(rep));

  if (is_t_group(from) && is_t_group(target)) {
    if (from == RepKind::TPair) return tpair_to_t0(std::get<TPair>(rep));
    return t0_to_tpair(std::get<T0Measure>(rep));
  }
  if (from == RepKind::TInf && target == RepKind::TPair)
    return tinf_to_tpair(std::get<TInfTriple>(rep));
  if (from == RepKind::TPair && target == RepKind::TInf)
    return tpair_to_tinf(std::get<TPair>(rep));

  throw unsupported(from, target);
}

ResidueEstimate residue_weight(const Representation& rep, double t0) {
  const MatrixMeasure* measure = nullptr;
  double factor = 1.0;
  std::visit(overloaded{
                 [&](const StieltjesPair& r) {
                   measure = &r.mu;
                   factor = 1.0 + t0 - r.alpha;
                 },
                 [&](const S0Measure& r) { measure = &r.sigma; },
                 [&](const TPair& r) {
                   measure = &r.mu;
                   factor = 1.0 + r.beta - t0;
                 },
                 [&](const T0Measure& r) { measure = &r.sigma; },
                 [](const auto&) {},
             },
             rep);
  if (measure == nullptr)
    throw Error(ErrorKind::UnsupportedKind, "residues are defined for pairs and S0/T0 measures");

  const Atom* hit = nullptr;
  double gap = std::numeric_limits<double>::infinity();
  for (const Atom& at : measure->atoms()) {
    if (at_node(at.t, t0))
      hit = &at;
    else
      gap = std::min(gap, std::abs(at.t - t0));
  }
  if (hit == nullptr)
    throw Error(ErrorKind::NotAnAtom, "no atom at t = " + std::to_string(t0));
  if (gap < 10.0 * merge_radius(t0))
    throw Error(ErrorKind::NotAnAtom, "atom at t = " + std::to_string(t0) + " is not isolated");

  ResidueEstimate out;
  out.weight = PsdMatrix(factor * hit->weight.mat());

  const double eps0 = std::min(1.0, 0.25 * gap);
  RichardsonTableau tab(2);
  double eps = eps0;
  for (int k = 0; k <= 40; ++k, eps *= 0.5) {
    const cplx z(hit->t, eps);
    if (excluded_set(rep).distance(z) < 2.0 * near_radius(z)) break;
    tab.push(scale(cplx(0.0, -eps), eval(rep, z)));
    if (tab.count() >= 2 && tab.increment() < 1e-10 * (1.0 + opnorm(tab.current()))) break;
  }
  out.numeric = tab.current();
  out.error_bound = tab.increment();
  out.discrepancy = opnorm(out.weight.mat() - out.numeric);
  return out;
}

}  // namespace stieltjes
