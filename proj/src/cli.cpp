#include "stieltjes/cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "stieltjes/classifier.hpp"
#include "stieltjes/json_io.hpp"
#include "stieltjes/limits.hpp"
#include "stieltjes/transforms.hpp"

namespace stieltjes::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::vector<std::string> factors;
  std::string out;
  std::string kind;
  std::string to;
  std::string op;
  std::string mode;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> phi;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  int m = 4;
};

struct Outcome {
  json report;
  bool pass = true;
};

double endpoint_for(const Representation& rep, const Options& o) {
  const bool dual = std::holds_alternative<NevanlinnaTriple>(rep) ? false : is_dual_side(kind_of(rep));
  if (dual && o.beta) return *o.beta;
  if (!dual && o.alpha) return *o.alpha;
  if (std::holds_alternative<NevanlinnaTriple>(rep)) return 0.0;
  return endpoint_of(rep);
}

GridConfig grid_for(const Options& o) {
  GridConfig g;
  g.seed = o.seed;
  return g;
}

double tol_for(const Options& o) { return o.tol.value_or(kTolCert); }

Representation single_input(const Options& o) {
  if (o.inputs.size() != 1)
    throw Error(ErrorKind::InvalidArgument, "this command takes exactly one --input");
  return load_representation(o.inputs.front());
}

json sample_dump(const Evaluator& f, double endpoint, bool dual, const GridConfig& g) {
  const GridPoints pts = make_grid(endpoint, dual, g);
  std::vector<cplx> zs = pts.upper;
  zs.insert(zs.end(), pts.lower.begin(), pts.lower.end());
  if (f.excluded().kind != SupportKind::Line) zs.insert(zs.end(), pts.gap.begin(), pts.gap.end());
  std::vector<Mat> vals(zs.size());
  parallel_for(zs.size(), [&](std::size_t k) { vals[k] = f(zs[k]); });
  json points = json::array();
  for (std::size_t k = 0; k < zs.size(); ++k)
    points.push_back({{"z", {zs[k].real(), zs[k].imag()}}, {"F", matrix_to_json(vals[k])}});
  return points;
}

Outcome cmd_eval(const Options& o) {
  const Representation rep = single_input(o);
  const double e = endpoint_for(rep, o);
  const bool dual = !std::holds_alternative<NevanlinnaTriple>(rep) && is_dual_side(kind_of(rep));
  Outcome r;
  r.report = {{"command", "eval"},
              {"representation", std::string(to_string(kind_of(rep)))},
              {"seed", o.seed},
              {"points", sample_dump(make_evaluator(rep), e, dual, grid_for(o))}};
  return r;
}

Outcome cmd_certify(const Options& o) {
  if (o.kind.empty()) throw Error(ErrorKind::InvalidArgument, "certify needs --kind");
  const Representation rep = single_input(o);
  const CertKind kind = cert_kind_from_string(o.kind);
  double e = 0.0;
  if (is_dual_side(kind))
    e = o.beta ? *o.beta : endpoint_of(rep);
  else if (kind == CertKind::R)
    e = o.alpha.value_or(0.0);
  else
    e = o.alpha ? *o.alpha : endpoint_of(rep);
  const Certificate cert = certify_class(make_evaluator(rep), e, kind, grid_for(o), tol_for(o));
  Outcome r;
  r.pass = cert.pass;
  r.report = {{"command", "certify"}, {"seed", o.seed}, {"certificate", to_json(cert)}};
  return r;
}

Outcome cmd_params(const Options& o) {
  const Representation rep = single_input(o);
  const Evaluator f = make_evaluator(rep);
  const double e = endpoint_for(rep, o);
  Outcome r;
  if (!o.mode.empty()) {
    LimitMode mode{limit_mode_from_string(o.mode)};
    if (mode.kind == LimitModeKind::Radial) {
      const bool dual = is_dual_side(kind_of(rep));
      mode = LimitMode::radial(o.phi.value_or(dual ? 0.0 : std::numbers::pi), e, dual);
    }
    r.report = {{"command", "params"},
                {"mode", o.mode},
                {"endpoint", e},
                {"estimate", to_json(limit_at_infinity(f, mode))}};
    return r;
  }
  if (o.kind.empty()) throw Error(ErrorKind::InvalidArgument, "params needs --kind or --mode");
  try {
    r.report = {{"command", "params"},
                {"params", to_json(extract_params(f, e, param_class_from_string(o.kind)))}};
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ClassMismatch) throw;
    r.pass = false;
    r.report = {{"command", "params"}, {"class", o.kind}, {"verdict", "fail"}, {"reason", err.what()}};
  }
  return r;
}

Outcome cmd_convert(const Options& o) {
  if (o.to.empty()) throw Error(ErrorKind::InvalidArgument, "convert needs --to");
  const Representation rep = single_input(o);
  Outcome r;
  r.report = to_json(convert(rep, rep_kind_from_string(o.to), o.alpha));
  return r;
}

Outcome cmd_transform(const Options& o) {
  if (o.op.empty()) throw Error(ErrorKind::InvalidArgument, "transform needs --op");
  Outcome r;
  if (o.op == "congruence" || o.op == "direct_sum") {
    if (o.inputs.empty()) throw Error(ErrorKind::InvalidArgument, "no --input given");
    std::vector<StieltjesPair> pairs;
    for (const auto& path : o.inputs) {
      const Representation rep = load_representation(path);
      if (!std::holds_alternative<StieltjesPair>(rep))
        throw Error(ErrorKind::UnsupportedKind, o.op + " takes stieltjes_pair inputs");
      pairs.push_back(std::get<StieltjesPair>(rep));
    }
    if (o.op == "direct_sum") {
      r.report = to_json(Representation(direct_sum(pairs)));
      return r;
    }
    if (!o.factors.empty() && o.factors.size() != pairs.size())
      throw Error(ErrorKind::InvalidArgument, "give one --factor per --input");
    std::vector<std::pair<Mat, StieltjesPair>> terms;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Mat a = o.factors.empty()
                        ? Mat(Mat::Identity(pairs[k].dim(), pairs[k].dim()))
                        : matrix_from_json(read_json_file(o.factors[k]), o.factors[k]);
      terms.emplace_back(a, pairs[k]);
    }
    r.report = to_json(Representation(congruence_sum(terms)));
    return r;
  }

  const Representation rep = single_input(o);
  if (o.op == "transpose") {
    r.report = to_json(transpose_map(rep));
    return r;
  }
  if (o.op == "dual") {
    const bool dual = is_dual_side(kind_of(rep));
    const std::optional<double> target = dual ? o.alpha : o.beta;
    if (!target) throw Error(ErrorKind::InvalidArgument, dual ? "dual needs --alpha" : "dual needs --beta");
    r.report = to_json(dual_map(rep, *target));
    return r;
  }
  const Evaluator f = make_evaluator(rep);
  const double e = endpoint_for(rep, o);
  const bool dual = is_dual_side(kind_of(rep));
  Evaluator g;
  if (o.op == "pinv_map")
    g = dual ? dual_pinv_map(f, e) : pinv_map(f, e);
  else if (o.op == "neg_pinv")
    g = neg_pinv_map(f);
  else
    throw Error(ErrorKind::InvalidArgument, "unknown --op '" + o.op + "'");
  r.report = {{"command", "transform"},
              {"op", o.op},
              {"endpoint", e},
              {"seed", o.seed},
              {"points", sample_dump(g, e, dual, grid_for(o))}};
  return r;
}

const MatrixMeasure& measure_of(const Representation& rep) {
  return std::visit(
      [](const auto& r) -> const MatrixMeasure& {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StieltjesPair> || std::is_same_v<T, TPair>)
          return r.mu;
        else if constexpr (std::is_same_v<T, KKPair>)
          return r.eta;
        else if constexpr (std::is_same_v<T, NevanlinnaTriple>)
          return r.nu;
        else if constexpr (std::is_same_v<T, S0Measure> || std::is_same_v<T, T0Measure>)
          return r.sigma;
        else
          return r.rho;
      },
      rep);
}

json moments_report(const MatrixMeasure& mu, int m, std::optional<double> shift_at, bool dual,
                    double tol, bool& pass) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "--m must be nonnegative");
  const std::vector<HermMatrix> s = moments(mu, m);
  json list = json::array();
  for (const auto& sj : s) list.push_back(matrix_to_json(sj.mat()));
  json rep = {{"m", m}, {"moments", std::move(list)}};
  const Mat h = block_hankel(s, m / 2);
  const double hm = min_eigenvalue(h) / (1.0 + opnorm(h));
  rep["hankel_margin"] = hm;
  pass = hm >= -tol;
  if (shift_at && m >= 1) {
    Mat k = shifted_block_hankel(s, (m - 1) / 2, *shift_at);
    if (dual) k = -k;
    const double km = min_eigenvalue(k) / (1.0 + opnorm(k));
    rep["shifted_hankel_margin"] = km;
    rep["shift"] = *shift_at;
    pass = pass && km >= -tol;
  }
  return rep;
}

Outcome cmd_moments(const Options& o) {
  if (o.inputs.size() != 1) throw Error(ErrorKind::InvalidArgument, "moments takes one --input");
  const json j = read_json_file(o.inputs.front());
  Outcome r;
  json body;
  if (j.contains("kind")) {
    const Representation rep = representation_from_json(j);
    std::optional<double> at;
    bool dual = false;
    if (!std::holds_alternative<NevanlinnaTriple>(rep)) {
      at = endpoint_of(rep);
      dual = is_dual_side(kind_of(rep));
    }
    body = moments_report(measure_of(rep), o.m, at, dual, tol_for(o), r.pass);
  } else {
    const MatrixMeasure mu = measure_from_json(j);
    std::optional<double> at;
    bool dual = false;
    if (mu.support().kind != SupportKind::Line) {
      at = mu.support().endpoint;
      dual = mu.support().kind == SupportKind::LeftRay || mu.support().kind == SupportKind::OpenLeftRay;
    }
    body = moments_report(mu, o.m, at, dual, tol_for(o), r.pass);
  }
  r.report = {{"command", "moments"}, {"tol", tol_for(o)}, {"result", std::move(body)}};
  return r;
}

CertKind own_class(RepKind k) {
  switch (k) {
    case RepKind::StieltjesPair:
    case RepKind::KKPair: return CertKind::S;
    case RepKind::Nevanlinna: return CertKind::R;
    case RepKind::S0: return CertKind::S0;
    case RepKind::SInf: return CertKind::SInf;
    case RepKind::TPair: return CertKind::T;
    case RepKind::T0: return CertKind::T0;
    case RepKind::TInf: return CertKind::TInf;
  }
  return CertKind::S;
}

std::optional<ParamClass> own_params(RepKind k) {
  switch (k) {
    case RepKind::StieltjesPair:
    case RepKind::KKPair: return ParamClass::S;
    case RepKind::S0: return ParamClass::S0;
    case RepKind::SInf: return ParamClass::SInfProduct;
    case RepKind::TPair: return ParamClass::T;
    case RepKind::T0: return ParamClass::T0;
    default: return std::nullopt;
  }
}

Outcome cmd_report(const Options& o) {
  const Representation rep = single_input(o);
  const RepKind kind = kind_of(rep);
  const Evaluator f = make_evaluator(rep);
  const double e = endpoint_for(rep, o);
  Outcome r;
  r.report = {{"command", "report"},
              {"representation", std::string(to_string(kind))},
              {"seed", o.seed},
              {"tol", tol_for(o)}};

  const Certificate cert = certify_class(f, e, own_class(kind), grid_for(o), tol_for(o));
  r.report["certificate"] = to_json(cert);
  r.pass = cert.pass;

  if (const auto pc = own_params(kind)) {
    try {
      r.report["params"] = to_json(extract_params(f, e, *pc));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ClassMismatch) throw;
      r.report["params"] = {{"verdict", "fail"}, {"reason", err.what()}};
      r.pass = false;
    }
  }

  const SubspaceReport sub = kernel_range_report(rep);
  r.report["kernel_range"] = {{"rank", sub.rank},
                              {"max_null_deviation", sub.max_null_dev},
                              {"max_range_deviation", sub.max_range_dev},
                              {"verdict", sub.pass ? "pass" : "fail"}};
  r.pass = r.pass && sub.pass;

  const RankReport rk = rank_constancy(f, structure_samples(rep));
  r.report["rank_constancy"] = {{"ranks", rk.ranks}, {"verdict", rk.pass ? "pass" : "fail"}};
  r.pass = r.pass && rk.pass;

  bool mpass = true;
  std::optional<double> at;
  if (kind != RepKind::Nevanlinna) at = endpoint_of(rep);
  r.report["moments"] =
      moments_report(measure_of(rep), o.m, at, is_dual_side(kind), tol_for(o), mpass);
  r.pass = r.pass && mpass;
  r.report["verdict"] = r.pass ? "pass" : "fail";
  return r;
}

void add_common(CLI::App* sub, Options& o, bool multi_input = false) {
  if (multi_input)
    sub->add_option("--input", o.inputs, "representation JSON (repeatable)")->required();
  else
    sub->add_option("--input", o.inputs, "representation JSON")->required()->expected(1);
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--alpha", o.alpha, "override the left endpoint alpha");
  sub->add_option("--beta", o.beta, "override the right endpoint beta");
  sub->add_option("--grid-seed", o.seed, "grid seed");
  sub->add_option("--tol", o.tol, "certification tolerance")->check(CLI::Range(1e-15, 1e-2));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix Stieltjes-class toolkit", "stieltjes_kit"};
  app.require_subcommand(1);
  Options o;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate on the sample grid");
  add_common(eval_cmd, o);

  auto* cert_cmd = app.add_subcommand("certify", "sampled class certification");
  add_common(cert_cmd, o);
  cert_cmd->add_option("--kind", o.kind, "s, s_via_pair, s0, sdot, sinf, t, t_via_pair, t0, tdot, tinf, r")
      ->required();

  auto* params_cmd = app.add_subcommand("params", "limit-based parameter extraction");
  add_common(params_cmd, o);
  params_cmd->add_option("--kind,--class", o.kind, "s, s0, sdot, sinf, t, t0");
  params_cmd->add_option("--mode", o.mode, "plain_iy, y_scaled, radial, neg_plain, neg_y_scaled");
  params_cmd->add_option("--phi", o.phi, "angle for radial mode");

  auto* conv_cmd = app.add_subcommand("convert", "convert between representations");
  add_common(conv_cmd, o);
  conv_cmd->add_option("--to", o.to, "target kind")->required();

  auto* tr_cmd = app.add_subcommand("transform", "apply a class-preserving map");
  add_common(tr_cmd, o, true);
  tr_cmd->add_option("--op", o.op, "pinv_map, neg_pinv, dual, transpose, congruence, direct_sum")
      ->required();
  tr_cmd->add_option("--factor", o.factors, "congruence factor matrix JSON (repeatable)");

  auto* mom_cmd = app.add_subcommand("moments", "moments and Hankel checks");
  add_common(mom_cmd, o);
  mom_cmd->add_option("--m", o.m, "highest moment order")->check(CLI::Range(0, 64));

  auto* rep_cmd = app.add_subcommand("report", "full battery over one input");
  add_common(rep_cmd, o);
  rep_cmd->add_option("--m", o.m, "highest moment order")->check(CLI::Range(0, 64));

  std::vector<const char*> argv{"stieltjes_kit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Outcome res;
    if (*eval_cmd) res = cmd_eval(o);
    else if (*cert_cmd) res = cmd_certify(o);
    else if (*params_cmd) res = cmd_params(o);
    else if (*conv_cmd) res = cmd_convert(o);
    else if (*tr_cmd) res = cmd_transform(o);
    else if (*mom_cmd) res = cmd_moments(o);
    else res = cmd_report(o);

    const std::string text = res.report.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.out + "'");
      f << text;
    }
    if (!res.pass) {
      err << "certified failure\n";
      return kExitFail;
    }
    return kExitPass;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace stieltjes::cli
