#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stieltjes/representation.hpp"

namespace stieltjes {

struct LimitEstimate {
  Mat value;
  double error_bound = 0.0;
  int ladder_depth = 0;
};

enum class LimitModeKind { PlainIy, YScaled, Radial, NegPlain, NegYScaled };

std::string_view to_string(LimitModeKind kind) noexcept;
LimitModeKind limit_mode_from_string(std::string_view name);

/// plain_iy:     lim F(iy)
/// y_scaled:     -i lim y F(iy)
/// radial:       sign * lim F(anchor + r e^{i phi}), sign = -1 when `negate`
/// neg_plain:    -lim G(iy)
/// neg_y_scaled: -i lim y G(iy) (the same formula as y_scaled, kept as the
///               dual-side spelling)
struct LimitMode {
  LimitModeKind kind = LimitModeKind::PlainIy;
  double phi = std::numbers::pi;
  double anchor = 0.0;
  bool negate = false;

  static LimitMode plain_iy() { return {LimitModeKind::PlainIy}; }
  static LimitMode y_scaled() { return {LimitModeKind::YScaled}; }
  static LimitMode radial(double phi, double anchor, bool negate = false) {
    return {LimitModeKind::Radial, phi, anchor, negate};
  }
  static LimitMode neg_plain() { return {LimitModeKind::NegPlain}; }
  static LimitMode neg_y_scaled() { return {LimitModeKind::NegYScaled}; }
};

struct LimitOptions {
  double y0 = 1.0;
  int k_max = 48;
  int order = 2;
  double rel_tol = 1e-10;  // stop when the increment is below rel_tol (1 + ||value||)
};

/// Geometric ladder y_k = y0 2^k with Richardson extrapolation in 1/y.
/// Throws NoConvergence after k_max steps; the message carries the last two
/// extrapolants.
LimitEstimate limit_at_infinity(const Evaluator& f, const LimitMode& mode,
                                const LimitOptions& opts = {});

/// The same ladder for an arbitrary sample function g(y).
LimitEstimate ladder_limit(const std::function<Mat(double)>& g, const LimitOptions& opts = {});

enum class ParamClass { S, S0, Sdot, SInfProduct, T, T0 };

std::string_view to_string(ParamClass cls) noexcept;
ParamClass param_class_from_string(std::string_view name);

struct NamedEstimate {
  std::string name;
  LimitEstimate estimate;
};

struct ParamRecord {
  ParamClass cls = ParamClass::S;
  double endpoint = 0.0;
  std::vector<NamedEstimate> estimates;

  /// Throws InvalidArgument when `name` is absent.
  const LimitEstimate& get(std::string_view name) const;
};

/// Limits that determine the class parameters:
///   S:             gamma (plain_iy), kernel_mass, radial (phi = pi)
///   S0:            mass (y_scaled), gamma (plain_iy)
///   Sdot:          gamma (plain_iy, must vanish)
///   SInfProduct:   E = lim F(iy)/(iy - alpha), D = -lim F(x) as x -> alpha from below
///   T:             gamma (neg_plain), kernel_mass, radial (phi = 0, negated)
///   T0:            mass (neg_y_scaled), gamma (neg_plain)
/// kernel_mass is lim -2iy (F(iy) - F(2iy)), the total mass of (1+t-alpha) mu
/// (resp. (1+beta-t) mu). Throws ClassMismatch when a limit contradicts the class.
ParamRecord extract_params(const Evaluator& f, double endpoint, ParamClass cls,
                           const LimitOptions& opts = {});

}  // namespace stieltjes
