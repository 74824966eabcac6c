#include "stieltjes/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/QR>

#include "stieltjes/limits.hpp"

namespace stieltjes {

unsigned worker_count() {
  if (const char* env = std::getenv("STIELTJES_KIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  std::vector<std::exception_ptr> errors(n);
  auto run_one = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run_one(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string_view to_string(CertKind kind) noexcept {
  switch (kind) {
    case CertKind::S: return "s";
    case CertKind::SViaPair: return "s_via_pair";
    case CertKind::S0: return "s0";
    case CertKind::Sdot: return "sdot";
    case CertKind::SInf: return "sinf";
    case CertKind::T: return "t";
    case CertKind::TViaPair: return "t_via_pair";
    case CertKind::T0: return "t0";
    case CertKind::Tdot: return "tdot";
    case CertKind::TInf: return "tinf";
    case CertKind::R: return "r";
  }
  return "s";
}

CertKind cert_kind_from_string(std::string_view name) {
  for (CertKind k : {CertKind::S, CertKind::SViaPair, CertKind::S0, CertKind::Sdot, CertKind::SInf,
                     CertKind::T, CertKind::TViaPair, CertKind::T0, CertKind::Tdot,
                     CertKind::TInf, CertKind::R})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::UnsupportedKind, "unknown class kind '" + std::string(name) + "'");
}

bool is_dual_side(CertKind kind) noexcept {
  return kind == CertKind::T || kind == CertKind::TViaPair || kind == CertKind::T0 ||
         kind == CertKind::Tdot || kind == CertKind::TInf;
}

GridPoints make_grid(double endpoint, bool dual_side, const GridConfig& cfg) {
  if (cfg.n_upper < 1 || cfg.n_lower < 1 || cfg.n_gap < 1)
    throw Error(ErrorKind::InvalidArgument, "grid counts must be positive");
  if (!(cfg.im_min > 0.0) || !(cfg.im_max >= cfg.im_min) || !(cfg.re_span >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "invalid grid ranges");

  auto log_spaced = [&](int n) {
    std::vector<double> v(n);
    if (n == 1) {
      v[0] = std::sqrt(cfg.im_min * cfg.im_max);
      return v;
    }
    const double l0 = std::log10(cfg.im_min);
    const double l1 = std::log10(cfg.im_max);
    for (int j = 0; j < n; ++j) v[j] = std::pow(10.0, l0 + (l1 - l0) * j / (n - 1));
    return v;
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> offset(-cfg.re_span, cfg.re_span);

  GridPoints g;
  for (double y : log_spaced(cfg.n_upper)) g.upper.emplace_back(endpoint + offset(rng), y);
  for (double y : log_spaced(cfg.n_lower)) g.lower.emplace_back(endpoint + offset(rng), -y);
  for (double d : log_spaced(cfg.n_gap))
    g.gap.emplace_back(dual_side ? endpoint + d : endpoint - d, 0.0);
  return g;
}

const ConditionResult& Certificate::worst() const {
  if (conditions.empty()) throw Error(ErrorKind::InvalidArgument, "certificate has no conditions");
  return *std::min_element(conditions.begin(), conditions.end(),
                           [](const auto& a, const auto& b) { return a.margin < b.margin; });
}

namespace {

std::string point_string(cplx z) {
  std::ostringstream s;
  s.precision(17);
  s << "(" << z.real() << ", " << z.imag() << ")";
  return s.str();
}

Mat eval_at(const Evaluator& f, cplx z) {
  try {
    return f(z);
  } catch (const Error& e) {
    throw Error(ErrorKind::EvaluationFailed, "at z = " + point_string(z) + ": " + e.what());
  }
}

double herm_psd_margin(const Mat& herm, double scale) {
  return min_eigenvalue(herm) / (1.0 + scale);
}

// For values on the real axis: the matrix must be Hermitian and PSD.
double real_value_margin(const Mat& m, double scale) {
  const Mat anti = 0.5 * (m - m.adjoint());
  return std::min(min_eigenvalue(m), -opnorm(anti)) / (1.0 + scale);
}

struct Sample {
  cplx z;
  Mat value;
  double norm = 0.0;
  double cr = 0.0;
};

class Accumulator {
 public:
  explicit Accumulator(std::string name) { r_.name = std::move(name); }
  void add(double margin, cplx z) {
    if (r_.samples == 0 || margin < r_.margin) {
      r_.margin = margin;
      r_.witness = z;
    }
    ++r_.samples;
  }
  ConditionResult result() const { return r_; }

 private:
  ConditionResult r_;
};

std::vector<Sample> sample_all(const Evaluator& f, const std::vector<cplx>& pts) {
  std::vector<Sample> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    Sample s;
    s.z = pts[i];
    s.value = eval_at(f, pts[i]);
    s.norm = opnorm(s.value);
    try {
      s.cr = cauchy_riemann_residual(f, pts[i]);
    } catch (const Error& e) {
      throw Error(ErrorKind::EvaluationFailed, "near z = " + point_string(pts[i]) + ": " + e.what());
    }
    out[i] = std::move(s);
  });
  return out;
}

ConditionResult holomorphy(const std::vector<const std::vector<Sample>*>& sets) {
  Accumulator acc("holomorphy");
  for (const auto* set : sets)
    for (const Sample& s : *set) acc.add((kTolCr - s.cr) / kTolCr, s.z);
  return acc.result();
}

// sign = +1: Im F >= 0; sign = -1: -Im F >= 0.
ConditionResult herglotz(const std::string& name, const std::vector<Sample>& set, double sign) {
  Accumulator acc(name);
  for (const Sample& s : set) acc.add(herm_psd_margin(sign * im_part(s.value), s.norm), s.z);
  return acc.result();
}

ConditionResult mulz_herglotz(const std::string& name, const std::vector<Sample>& set,
                              double endpoint, bool dual) {
  Accumulator acc(name);
  for (const Sample& s : set) {
    const cplx factor = dual ? cplx(endpoint, 0.0) - s.z : s.z - cplx(endpoint, 0.0);
    const Mat v = factor * s.value;
    acc.add(herm_psd_margin(im_part(v), opnorm(v)), s.z);
  }
  return acc.result();
}

ConditionResult gap_sign(const std::string& name, const std::vector<Sample>& set, double sign) {
  Accumulator acc(name);
  for (const Sample& s : set) acc.add(real_value_margin(sign * s.value, s.norm), s.z);
  return acc.result();
}

// Values on the gap must increase with x for every class with a gap. This is
// what catches a pole hiding between two gap samples: the jump across it is
// always downward.
ConditionResult gap_monotone(const std::vector<Sample>& set) {
  std::vector<const Sample*> order;
  for (const Sample& s : set) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const Sample* a, const Sample* b) { return a->z.real() < b->z.real(); });
  Accumulator acc("gap_monotone");
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double scale = std::max(order[k]->norm, order[k - 1]->norm);
    acc.add(real_value_margin(order[k]->value - order[k - 1]->value, scale), order[k]->z);
  }
  ConditionResult r = acc.result();
  if (r.samples == 0) r.margin = 1.0;
  return r;
}

// Re F >= 0 where Re z < endpoint (S side) or -Re G >= 0 where Re z > endpoint.
ConditionResult half_plane_real(const std::string& name,
                                const std::vector<const std::vector<Sample>*>& sets,
                                double endpoint, bool dual) {
  Accumulator acc(name);
  for (const auto* set : sets)
    for (const Sample& s : *set) {
      const bool inside = dual ? s.z.real() > endpoint : s.z.real() < endpoint;
      if (!inside) continue;
      acc.add(herm_psd_margin((dual ? -1.0 : 1.0) * re_part(s.value), s.norm), s.z);
    }
  ConditionResult r = acc.result();
  if (r.samples == 0) r.margin = 1.0;
  return r;
}

ConditionResult bounded_y_norm(const Evaluator& f) {
  auto b = [&](double y) { return y * eval_at(f, cplx(0.0, y)).norm(); };
  const double lo = b(1e4);
  const double hi = b(1e8);
  ConditionResult r;
  r.name = "bounded_y_norm";
  r.margin = (2.0 * lo + 1e-12 - hi) / (1.0 + hi);
  r.witness = cplx(0.0, 1e8);
  r.samples = 2;
  return r;
}

ConditionResult vanishing_at_infinity(const Evaluator& f) {
  ConditionResult r;
  r.name = "vanishing_at_infinity";
  r.samples = 1;
  const double ref = opnorm(eval_at(f, cplx(0.0, 1.0)));
  try {
    const LimitEstimate lim = limit_at_infinity(f, LimitMode::plain_iy());
    r.margin = -opnorm(lim.value) / (1.0 + ref);
    r.witness = cplx(0.0, std::ldexp(1.0, lim.ladder_depth));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoConvergence) throw;
    r.margin = -1.0;
    r.witness = cplx(0.0, std::ldexp(1.0, 48));
  }
  return r;
}

}  // namespace

double cauchy_riemann_residual(const Evaluator& f, cplx z) {
  const double dist = f.excluded().distance(z);
  const double h = std::min(1e-5 * (1.0 + std::abs(z)), 1e-4 * dist);
  const cplx i(0.0, 1.0);
  const Mat xp = f(z + h);
  const Mat xm = f(z - h);
  const Mat yp = f(z + i * h);
  const Mat ym = f(z - i * h);
  const Mat dx = (xp - xm) / (2.0 * h);
  const Mat dy = (yp - ym) / (2.0 * h);
  const double mag = std::max({opnorm(xp), opnorm(xm), opnorm(yp), opnorm(ym)});
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * mag / h;
  const double raw = opnorm(dy - i * dx);
  return std::max(0.0, raw - roundoff) / (1.0 + opnorm(dx));
}

Certificate certify_class(const Evaluator& f, double endpoint, CertKind kind,
                          const GridConfig& grid, double tol) {
  const bool dual = is_dual_side(kind);
  const GridPoints pts = make_grid(endpoint, dual, grid);

  Certificate cert;
  cert.kind = kind;
  cert.endpoint = endpoint;
  cert.tol = tol;
  cert.grid = grid;

  const std::vector<Sample> upper = sample_all(f, pts.upper);
  if (kind == CertKind::R) {
    cert.conditions.push_back(holomorphy({&upper}));
    cert.conditions.push_back(herglotz("herglotz_upper", upper, 1.0));
  } else {
    const std::vector<Sample> lower = sample_all(f, pts.lower);
    const std::vector<Sample> gap = sample_all(f, pts.gap);
    cert.conditions.push_back(holomorphy({&upper, &lower, &gap}));
    cert.conditions.push_back(herglotz("herglotz_upper", upper, 1.0));

    switch (kind) {
      case CertKind::S:
      case CertKind::S0:
      case CertKind::Sdot:
      case CertKind::T:
      case CertKind::T0:
      case CertKind::Tdot:
        cert.conditions.push_back(herglotz("antiherglotz_lower", lower, -1.0));
        cert.conditions.push_back(gap_sign(dual ? "gap_nsd" : "gap_psd", gap, dual ? -1.0 : 1.0));
        cert.conditions.push_back(half_plane_real(
            dual ? "real_part_right_half_plane" : "real_part_left_half_plane", {&upper, &lower},
            endpoint, dual));
        cert.conditions.push_back(gap_monotone(gap));
        break;
      case CertKind::SViaPair:
      case CertKind::TViaPair:
        cert.conditions.push_back(mulz_herglotz("mulz_herglotz_upper", upper, endpoint, dual));
        break;
      case CertKind::SInf:
        cert.conditions.push_back(gap_sign("gap_nsd", gap, -1.0));
        cert.conditions.push_back(gap_monotone(gap));
        break;
      case CertKind::TInf:
        cert.conditions.push_back(gap_sign("gap_psd", gap, 1.0));
        cert.conditions.push_back(gap_monotone(gap));
        break;
      case CertKind::R:
        break;
    }
    if (kind == CertKind::S0 || kind == CertKind::T0)
      cert.conditions.push_back(bounded_y_norm(f));
    if (kind == CertKind::Sdot || kind == CertKind::Tdot)
      cert.conditions.push_back(vanishing_at_infinity(f));
  }

  cert.pass = std::all_of(cert.conditions.begin(), cert.conditions.end(),
                          [tol](const ConditionResult& c) { return c.margin >= -tol; });
  return cert;
}

ConditionResult monotone_chain_margin(const Evaluator& f, CertKind kind,
                                      const std::vector<double>& xs) {
  bool from_zero = false;
  switch (kind) {
    case CertKind::S:
    case CertKind::TInf: from_zero = true; break;
    case CertKind::SInf:
    case CertKind::T: from_zero = false; break;
    default:
      throw Error(ErrorKind::UnsupportedKind, "monotone chains are defined for s, sinf, t, tinf");
  }
  if (xs.empty()) throw Error(ErrorKind::InvalidArgument, "empty chain");
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (!(xs[k - 1] <= xs[k])) throw Error(ErrorKind::InvalidArgument, "chain must be ascending");

  std::vector<Mat> v;
  v.reserve(xs.size());
  for (double x : xs) v.push_back(eval_at(f, cplx(x, 0.0)));

  Accumulator acc("monotone_chain");
  if (from_zero) acc.add(real_value_margin(v.front(), opnorm(v.front())), xs.front());
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double scale = std::max(opnorm(v[k]), opnorm(v[k - 1]));
    acc.add(real_value_margin(v[k] - v[k - 1], scale), xs[k]);
  }
  if (!from_zero) acc.add(real_value_margin(-v.back(), opnorm(v.back())), xs.back());
  return acc.result();
}

std::vector<cplx> structure_samples(const SupportSet& excluded, std::size_t n) {
  static const double offsets[][2] = {{-1.0, 0.0}, {-0.25, 0.0}, {-4.0, 0.0},  {0.0, 1.0},
                                      {2.0, 0.5},  {-1.0, 2.0},  {1.0, -1.0},  {3.0, -0.25},
                                      {0.5, 3.0},  {-2.0, -2.0}, {6.0, 1.5},   {-0.5, -0.75}};
  const std::size_t available = sizeof(offsets) / sizeof(offsets[0]);
  std::vector<cplx> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double* o = offsets[k % available];
    double dx = o[0];
    double dy = o[1] * (1.0 + static_cast<double>(k / available));
    switch (excluded.kind) {
      case SupportKind::LeftRay:
      case SupportKind::OpenLeftRay:
        dx = -dx;
        break;
      case SupportKind::Line:
        if (dy == 0.0) dy = 1.0 + std::abs(dx);
        break;
      default: break;
    }
    out.emplace_back(excluded.endpoint + dx, dy);
  }
  return out;
}

std::vector<cplx> structure_samples(const Representation& rep) {
  return structure_samples(excluded_set(rep), 10);
}

namespace {

Mat vstack(const std::vector<Mat>& ms) {
  Index rows = 0;
  for (const auto& m : ms) rows += m.rows();
  Mat out(rows, ms.front().cols());
  Index r = 0;
  for (const auto& m : ms) {
    out.middleRows(r, m.rows()) = m;
    r += m.rows();
  }
  return out;
}

Mat hstack(const std::vector<Mat>& ms) {
  Mat out = ms.front();
  for (std::size_t k = 1; k < ms.size(); ++k) out = hcat(out, ms[k]);
  return out;
}

struct Overloaded {
  std::vector<Mat> operator()(const StieltjesPair& r) const {
    return {r.gamma.mat(), total_mass(r.mu).mat()};
  }
  std::vector<Mat> operator()(const KKPair& r) const { return {r.C.mat(), total_mass(r.eta).mat()}; }
  std::vector<Mat> operator()(const NevanlinnaTriple& r) const {
    return {r.A.mat(), r.B.mat(), total_mass(r.nu).mat()};
  }
  std::vector<Mat> operator()(const S0Measure& r) const { return {total_mass(r.sigma).mat()}; }
  std::vector<Mat> operator()(const SInfTriple& r) const {
    return {r.D.mat(), r.E.mat(), total_mass(r.rho).mat()};
  }
  std::vector<Mat> operator()(const TPair& r) const {
    return {r.gamma.mat(), total_mass(r.mu).mat()};
  }
  std::vector<Mat> operator()(const T0Measure& r) const { return {total_mass(r.sigma).mat()}; }
  std::vector<Mat> operator()(const TInfTriple& r) const {
    return {r.D.mat(), r.E.mat(), total_mass(r.rho).mat()};
  }
};

}  // namespace

SubspaceReport kernel_range_report(const Representation& rep, double tol) {
  const std::vector<Mat> params = std::visit(Overloaded{}, rep);
  SubspaceReport out;
  out.null_expected = null_projector(vstack(params), kRankRtol);
  out.range_expected = range_projector(hstack(params), kRankRtol);
  out.samples = structure_samples(rep);
  out.ranks.resize(out.samples.size());
  std::vector<double> null_dev(out.samples.size());
  std::vector<double> range_dev(out.samples.size());
  parallel_for(out.samples.size(), [&](std::size_t k) {
    const Mat v = eval(rep, out.samples[k]);
    out.ranks[k] = numerical_rank(v, kRankRtol);
    null_dev[k] = opnorm(null_projector(v, kRankRtol) - out.null_expected);
    range_dev[k] = opnorm(range_projector(v, kRankRtol) - out.range_expected);
  });
  for (std::size_t k = 0; k < out.samples.size(); ++k) {
    out.max_null_dev = std::max(out.max_null_dev, null_dev[k]);
    out.max_range_dev = std::max(out.max_range_dev, range_dev[k]);
  }
  out.rank = out.ranks.front();
  const bool ranks_equal =
      std::all_of(out.ranks.begin(), out.ranks.end(), [&](int r) { return r == out.rank; });
  out.pass = ranks_equal && out.max_null_dev <= tol && out.max_range_dev <= tol;
  return out;
}

RankReport rank_constancy(const Evaluator& f, const std::vector<cplx>& samples, double rtol) {
  if (samples.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "rank constancy needs at least two samples");
  RankReport out;
  out.ranks.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    out.ranks[k] = numerical_rank(eval_at(f, samples[k]), rtol);
  });
  out.rank = out.ranks.front();
  out.pass = std::all_of(out.ranks.begin(), out.ranks.end(), [&](int r) { return r == out.rank; });
  return out;
}

EigenReport eigen_invariance(const Representation& rep, double lambda, double tol) {
  const Index q = dim_of(rep);
  const Mat id = Mat::Identity(q, q);
  Mat shifted;
  std::string what;
  switch (kind_of(rep)) {
    case RepKind::StieltjesPair:
      shifted = std::get<StieltjesPair>(rep).gamma.mat() - lambda * id;
      what = "gamma - lambda I";
      break;
    case RepKind::KKPair:
      shifted = std::get<KKPair>(rep).C.mat() - lambda * id;
      what = "C - lambda I";
      break;
    case RepKind::S0:
      shifted = -lambda * id;
      what = "-lambda I";
      break;
    case RepKind::SInf:
      shifted = std::get<SInfTriple>(rep).D.mat() + lambda * id;
      what = "D + lambda I";
      break;
    case RepKind::TPair:
      shifted = std::get<TPair>(rep).gamma.mat() + lambda * id;
      what = "gamma + lambda I";
      break;
    case RepKind::T0:
      shifted = lambda * id;
      what = "lambda I";
      break;
    case RepKind::TInf:
      shifted = std::get<TInfTriple>(rep).D.mat() - lambda * id;
      what = "D - lambda I";
      break;
    case RepKind::Nevanlinna:
      throw Error(ErrorKind::UnsupportedKind, "eigenspace invariance is not stated for this kind");
  }
  if (min_eigenvalue(shifted) < -kPsdTol * (1.0 + opnorm(shifted)))
    throw Error(ErrorKind::PreconditionUnmet, what + " is not nonnegative Hermitian");

  const std::vector<cplx> samples = structure_samples(rep);
  std::vector<Mat> proj(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    proj[k] = null_projector(eval(rep, samples[k]) - lambda * id, kRankRtol);
  });
  EigenReport out;
  out.dimension = static_cast<int>(std::lround(proj.front().trace().real()));
  for (std::size_t a = 0; a < proj.size(); ++a)
    for (std::size_t b = a + 1; b < proj.size(); ++b)
      out.max_dev = std::max(out.max_dev, opnorm(proj[a] - proj[b]));
  out.pass = out.max_dev <= tol;
  return out;
}

DominationReport null_domination(const StieltjesPair& pair, const Mat& a, double tol) {
  const Index q = pair.dim();
  if (a.cols() != q)
    throw Error(ErrorKind::DimensionMismatch, "A must have q columns");
  const Mat id = Mat::Identity(q, q);
  // Two routes to the projector onto N(A)^perp: the SVD range of A* and A^+ A.
  const Mat onto_perp = range_projector(a.adjoint(), kRankRtol);
  const Mat onto_null = id - onto_perp;
  Mat a_pinv_a = Mat::Zero(q, q);
  if (a.rows() > 0 && opnorm(a) > 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
    cod.setThreshold(kRankRtol);
    a_pinv_a = cod.pseudoInverse() * a;
  }

  auto small = [tol](const Mat& x, const Mat& ref) { return opnorm(x) <= tol * (1.0 + opnorm(ref)); };

  const Mat& g = pair.gamma.mat();
  const Mat m = total_mass(pair.mu).mat();
  const Representation rep = pair;
  const std::vector<cplx> samples = structure_samples(rep);
  std::vector<Mat> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) { values[k] = eval(rep, samples[k]); });

  auto all_z = [&](auto pred) {
    return std::all_of(values.begin(), values.end(), pred);
  };

  DominationReport out;
  out.conditions = {
      {"(i) N(A) in N(F(z)) for all z",
       all_z([&](const Mat& v) { return small(v * onto_null, v); })},
      {"(i') N(A) in N(F(z0))", small(values.front() * onto_null, values.front())},
      {"(ii) N(A) in N(gamma) and N(mu(Omega))",
       small(g * onto_null, g) && small(m * onto_null, m)},
      {"(iii) F A^+ A = F", all_z([&](const Mat& v) { return small(v * a_pinv_a - v, v); })},
      {"(iv) R(F(z)) in N(A)^perp for all z",
       all_z([&](const Mat& v) { return small(onto_null * v, v); })},
      {"(iv') R(F(z0)) in N(A)^perp", small(onto_null * values.front(), values.front())},
      {"(v) R(gamma) + R(mu(Omega)) in N(A)^perp",
       small(onto_null * g, g) && small(onto_null * m, m)},
      {"(vi) A^+ A F = F", all_z([&](const Mat& v) { return small(a_pinv_a * v - v, v); })},
  };
  const bool first = out.conditions.front().second;
  const bool consistent = std::all_of(out.conditions.begin(), out.conditions.end(),
                                      [first](const auto& c) { return c.second == first; });
  if (!consistent) {
    std::string detail;
    for (const auto& c : out.conditions) detail += "\n  " + c.first + ": " + (c.second ? "true" : "false");
    throw Error(ErrorKind::InconsistentEquivalence, "equivalent statements disagree:" + detail);
  }
  out.all_true = first;
  return out;
}

}  // namespace stieltjes
