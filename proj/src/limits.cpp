#include "stieltjes/limits.hpp"

#include <cmath>
#include <sstream>

#include "stieltjes/richardson.hpp"

namespace stieltjes {

std::string_view to_string(LimitModeKind kind) noexcept {
  switch (kind) {
    case LimitModeKind::PlainIy: return "plain_iy";
    case LimitModeKind::YScaled: return "y_scaled";
    case LimitModeKind::Radial: return "radial";
    case LimitModeKind::NegPlain: return "neg_plain";
    case LimitModeKind::NegYScaled: return "neg_y_scaled";
  }
  return "plain_iy";
}

LimitModeKind limit_mode_from_string(std::string_view name) {
  for (LimitModeKind k : {LimitModeKind::PlainIy, LimitModeKind::YScaled, LimitModeKind::Radial,
                          LimitModeKind::NegPlain, LimitModeKind::NegYScaled})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown limit mode '" + std::string(name) + "'");
}

std::string_view to_string(ParamClass cls) noexcept {
  switch (cls) {
    case ParamClass::S: return "s";
    case ParamClass::S0: return "s0";
    case ParamClass::Sdot: return "sdot";
    case ParamClass::SInfProduct: return "sinf";
    case ParamClass::T: return "t";
    case ParamClass::T0: return "t0";
  }
  return "s";
}

ParamClass param_class_from_string(std::string_view name) {
  for (ParamClass c : {ParamClass::S, ParamClass::S0, ParamClass::Sdot, ParamClass::SInfProduct,
                       ParamClass::T, ParamClass::T0})
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown parameter class '" + std::string(name) + "'");
}

const LimitEstimate& ParamRecord::get(std::string_view name) const {
  for (const auto& e : estimates)
    if (e.name == name) return e.estimate;
  throw Error(ErrorKind::InvalidArgument, "no estimate named '" + std::string(name) + "'");
}

LimitEstimate ladder_limit(const std::function<Mat(double)>& g, const LimitOptions& opts) {
  if (!(opts.y0 > 0.0) || opts.k_max < 1 || opts.order < 0)
    throw Error(ErrorKind::InvalidArgument, "invalid limit ladder options");
  RichardsonTableau tab(opts.order);
  double y = opts.y0;
  for (int k = 0; k <= opts.k_max; ++k, y *= 2.0) {
    tab.push(g(y));
    if (k >= 1 && tab.increment() < opts.rel_tol * (1.0 + opnorm(tab.current())))
      return {tab.current(), tab.increment(), k};
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "no convergence after " << opts.k_max << " doublings; last increment "
      << tab.increment() << "; last estimates\n"
      << tab.previous() << "\nand\n"
      << tab.current();
  throw Error(ErrorKind::NoConvergence, msg.str());
}

namespace {

// e^{i phi} with exact zeros on the axes.
cplx unit_direction(double phi) {
  double c = std::cos(phi);
  double s = std::sin(phi);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, s};
}

}  // namespace

LimitEstimate limit_at_infinity(const Evaluator& f, const LimitMode& mode,
                                const LimitOptions& opts) {
  const cplx i(0.0, 1.0);
  switch (mode.kind) {
    case LimitModeKind::PlainIy:
      return ladder_limit([&](double y) { return f(cplx(0.0, y)); }, opts);
    case LimitModeKind::NegPlain:
      return ladder_limit([&](double y) -> Mat { return -f(cplx(0.0, y)); }, opts);
    case LimitModeKind::YScaled:
    case LimitModeKind::NegYScaled:
      return ladder_limit([&](double y) -> Mat { return (-i * y) * f(cplx(0.0, y)); }, opts);
    case LimitModeKind::Radial: {
      const cplx dir = unit_direction(mode.phi);
      const double sign = mode.negate ? -1.0 : 1.0;
      return ladder_limit(
          [&](double r) -> Mat { return sign * f(cplx(mode.anchor, 0.0) + r * dir); }, opts);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown limit mode");
}

namespace {

// Matrix checks on extracted limits are loose on purpose: the estimates carry
// extrapolation error, so anything tighter would reject genuine members.
constexpr double kClassTol = 1e-7;

double slack(const LimitEstimate& e) {
  return kClassTol * (1.0 + opnorm(e.value)) + 10.0 * e.error_bound;
}

void require_psd(const LimitEstimate& e, const char* what) {
  const double tol = slack(e);
  const Mat anti = e.value - e.value.adjoint();
  if (opnorm(anti) > 2.0 * tol || min_eigenvalue(e.value) < -tol)
    throw Error(ErrorKind::ClassMismatch,
                std::string(what) + " is not nonnegative Hermitian (lambda_min = " +
                    std::to_string(min_eigenvalue(e.value)) + ")");
}

void require_zero(const LimitEstimate& e, double scale_ref, const char* what) {
  const double tol = kClassTol * (1.0 + scale_ref) + 10.0 * e.error_bound;
  if (opnorm(e.value) > tol)
    throw Error(ErrorKind::ClassMismatch, std::string(what) + " does not vanish (norm " +
                                              std::to_string(opnorm(e.value)) + ")");
}

void require_agree(const LimitEstimate& a, const LimitEstimate& b, const char* what) {
  const double tol = a.error_bound + b.error_bound + kClassTol * (1.0 + opnorm(a.value));
  if (opnorm(a.value - b.value) > tol)
    throw Error(ErrorKind::ClassMismatch, std::string(what) + " limits disagree by " +
                                              std::to_string(opnorm(a.value - b.value)));
}

LimitEstimate kernel_mass(const Evaluator& f, const LimitOptions& opts) {
  const cplx i(0.0, 1.0);
  return ladder_limit(
      [&](double y) -> Mat { return (-2.0 * i * y) * (f(cplx(0.0, y)) - f(cplx(0.0, 2.0 * y))); },
      opts);
}

}  // namespace

ParamRecord extract_params(const Evaluator& f, double endpoint, ParamClass cls,
                           const LimitOptions& opts) {
  ParamRecord rec;
  rec.cls = cls;
  rec.endpoint = endpoint;
  auto add = [&rec](const char* name, LimitEstimate e) -> const LimitEstimate& {
    rec.estimates.push_back({name, std::move(e)});
    return rec.estimates.back().estimate;
  };

  try {
    switch (cls) {
      case ParamClass::S:
      case ParamClass::T: {
        const bool dual = cls == ParamClass::T;
        const LimitEstimate g = limit_at_infinity(
            f, dual ? LimitMode::neg_plain() : LimitMode::plain_iy(), opts);
        const LimitEstimate r = limit_at_infinity(
            f, dual ? LimitMode::radial(0.0, endpoint, true)
                    : LimitMode::radial(std::numbers::pi, endpoint), opts);
        const LimitEstimate m = kernel_mass(f, opts);
        add("gamma", g);
        add("radial", r);
        add("kernel_mass", m);
        require_psd(g, "gamma");
        require_psd(m, "kernel mass");
        require_agree(g, r, "plain and radial");
        break;
      }
      case ParamClass::S0:
      case ParamClass::T0: {
        const bool dual = cls == ParamClass::T0;
        const LimitEstimate m = limit_at_infinity(
            f, dual ? LimitMode::neg_y_scaled() : LimitMode::y_scaled(), opts);
        const LimitEstimate g = limit_at_infinity(
            f, dual ? LimitMode::neg_plain() : LimitMode::plain_iy(), opts);
        add("mass", m);
        add("gamma", g);
        require_psd(m, "mass");
        require_zero(g, opnorm(m.value), "lim F(iy)");
        break;
      }
      case ParamClass::Sdot: {
        const LimitEstimate g = limit_at_infinity(f, LimitMode::plain_iy(), opts);
        add("gamma", g);
        require_zero(g, 0.0, "lim F(iy)");
        break;
      }
      case ParamClass::SInfProduct: {
        const LimitEstimate e = ladder_limit(
            [&](double y) -> Mat {
              const cplx z(0.0, y);
              return f(z) / (z - endpoint);
            },
            opts);
        const LimitEstimate d =
            ladder_limit([&](double y) -> Mat { return -f(cplx(endpoint - 1.0 / y, 0.0)); }, opts);
        add("E", e);
        add("D", d);
        require_psd(e, "E");
        require_psd(d, "D");
        break;
      }
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NoConvergence)
      throw Error(ErrorKind::ClassMismatch, std::string("limit does not exist: ") + err.what());
    throw;
  }
  return rec;
}

}  // namespace stieltjes
