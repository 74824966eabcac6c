#include "stieltjes/json_io.hpp"

#include <fstream>
#include <sstream>

namespace stieltjes {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(field, std::string("missing member '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

}  // namespace

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    // Adding +0.0 folds -0.0 into 0.0 so equal matrices print identically.
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real() + 0.0, m(r, c).imag() + 0.0});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) bad(field, "expected rows to be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) bad(rf, "ragged matrix row");
    for (Index c = 0; c < cols; ++c) {
      const json& e = row[c];
      const std::string ef = rf + "[" + std::to_string(c) + "]";
      if (e.is_number()) {
        m(r, c) = cplx(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = cplx(number(e[0], ef), number(e[1], ef));
      } else {
        bad(ef, "expected [re, im]");
      }
    }
  }
  return m;
}

json to_json(const SupportSet& s) {
  return {{"kind", std::string(to_string(s.kind))}, {"endpoint", s.endpoint}};
}

SupportSet support_from_json(const json& j, const std::string& field) {
  const json& k = member(j, "kind", field);
  if (!k.is_string()) bad(join(field, "kind"), "expected a string");
  SupportSet s;
  try {
    s.kind = support_kind_from_string(k.get<std::string>());
  } catch (const Error& e) {
    bad(join(field, "kind"), e.what());
  }
  if (s.kind != SupportKind::Line || j.contains("endpoint"))
    s.endpoint = number(member(j, "endpoint", field), join(field, "endpoint"));
  return s;
}

json to_json(const MatrixMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back({{"t", a.t}, {"W", matrix_to_json(a.weight.mat())}});
  return {{"q", mu.dim()}, {"support", to_json(mu.support())}, {"atoms", std::move(atoms)}};
}

MatrixMeasure measure_from_json(const json& j, const std::string& field,
                                std::optional<SupportSet> fallback) {
  const json& qj = member(j, "q", field);
  if (!qj.is_number_integer() || qj.get<long long>() < 1) bad(join(field, "q"), "expected a positive integer");
  const Index q = qj.get<Index>();
  SupportSet support;
  if (j.contains("support"))
    support = support_from_json(j["support"], join(field, "support"));
  else if (fallback)
    support = *fallback;
  else
    bad(field, "missing member 'support'");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const json& aj = j["atoms"];
    if (!aj.is_array()) bad(join(field, "atoms"), "expected an array");
    for (std::size_t k = 0; k < aj.size(); ++k) {
      const std::string af = join(field, "atoms[" + std::to_string(k) + "]");
      const double t = number(member(aj[k], "t", af), join(af, "t"));
      const Mat w = matrix_from_json(member(aj[k], "W", af), join(af, "W"));
      if (w.rows() != q || w.cols() != q) bad(join(af, "W"), "weight must be q x q");
      atoms.push_back(Atom{t, PsdMatrix(w)});
    }
  }
  return MatrixMeasure(q, support, std::move(atoms));
}

namespace {

struct RepWriter {
  json operator()(const StieltjesPair& r) const {
    return {{"kind", "stieltjes_pair"}, {"alpha", r.alpha}, {"gamma", matrix_to_json(r.gamma.mat())},
            {"mu", to_json(r.mu)}};
  }
  json operator()(const KKPair& r) const {
    return {{"kind", "kk_pair"}, {"alpha", r.alpha}, {"C", matrix_to_json(r.C.mat())},
            {"eta", to_json(r.eta)}};
  }
  json operator()(const NevanlinnaTriple& r) const {
    return {{"kind", "nevanlinna"}, {"A", matrix_to_json(r.A.mat())},
            {"B", matrix_to_json(r.B.mat())}, {"nu", to_json(r.nu)}};
  }
  json operator()(const S0Measure& r) const {
    return {{"kind", "s0"}, {"alpha", r.alpha}, {"sigma", to_json(r.sigma)}};
  }
  json operator()(const SInfTriple& r) const {
    return {{"kind", "sinf_triple"}, {"alpha", r.alpha}, {"D", matrix_to_json(r.D.mat())},
            {"E", matrix_to_json(r.E.mat())}, {"rho", to_json(r.rho)}};
  }
  json operator()(const TPair& r) const {
    return {{"kind", "t_pair"}, {"beta", r.beta}, {"gamma", matrix_to_json(r.gamma.mat())},
            {"mu", to_json(r.mu)}};
  }
  json operator()(const T0Measure& r) const {
    return {{"kind", "t0"}, {"beta", r.beta}, {"sigma", to_json(r.sigma)}};
  }
  json operator()(const TInfTriple& r) const {
    return {{"kind", "tinf_triple"}, {"beta", r.beta}, {"D", matrix_to_json(r.D.mat())},
            {"E", matrix_to_json(r.E.mat())}, {"rho", to_json(r.rho)}};
  }
};

PsdMatrix psd_member(const json& j, const char* key) {
  return PsdMatrix(matrix_from_json(member(j, key, ""), key));
}

}  // namespace

json to_json(const Representation& rep) { return std::visit(RepWriter{}, rep); }

Representation representation_from_json(const json& j) {
  const json& kj = member(j, "kind", "");
  if (!kj.is_string()) bad("kind", "expected a string");
  RepKind kind;
  try {
    kind = rep_kind_from_string(kj.get<std::string>());
  } catch (const Error& e) {
    bad("kind", e.what());
  }
  auto param = [&](const char* key) { return number(member(j, key, ""), key); };
  switch (kind) {
    case RepKind::StieltjesPair: {
      const double a = param("alpha");
      return StieltjesPair::make(a, psd_member(j, "gamma"),
                                 measure_from_json(member(j, "mu", ""), "mu", SupportSet::right_ray(a)));
    }
    case RepKind::KKPair: {
      const double a = param("alpha");
      return KKPair::make(a, psd_member(j, "C"),
                          measure_from_json(member(j, "eta", ""), "eta", SupportSet::right_ray(a)));
    }
    case RepKind::Nevanlinna:
      return NevanlinnaTriple::make(HermMatrix(matrix_from_json(member(j, "A", ""), "A")),
                                    psd_member(j, "B"),
                                    measure_from_json(member(j, "nu", ""), "nu", SupportSet::line()));
    case RepKind::S0: {
      const double a = param("alpha");
      return S0Measure::make(
          a, measure_from_json(member(j, "sigma", ""), "sigma", SupportSet::right_ray(a)));
    }
    case RepKind::SInf: {
      const double a = param("alpha");
      return SInfTriple::make(
          a, psd_member(j, "D"), psd_member(j, "E"),
          measure_from_json(member(j, "rho", ""), "rho", SupportSet::open_right_ray(a)));
    }
    case RepKind::TPair: {
      const double b = param("beta");
      return TPair::make(b, psd_member(j, "gamma"),
                         measure_from_json(member(j, "mu", ""), "mu", SupportSet::left_ray(b)));
    }
    case RepKind::T0: {
      const double b = param("beta");
      return T0Measure::make(
          b, measure_from_json(member(j, "sigma", ""), "sigma", SupportSet::left_ray(b)));
    }
    case RepKind::TInf: {
      const double b = param("beta");
      return TInfTriple::make(
          b, psd_member(j, "D"), psd_member(j, "E"),
          measure_from_json(member(j, "rho", ""), "rho", SupportSet::open_left_ray(b)));
    }
  }
  bad("kind", "unhandled kind");
}

json to_json(const LimitEstimate& e) {
  return {{"value", matrix_to_json(e.value)},
          {"error_bound", e.error_bound},
          {"ladder_depth", e.ladder_depth}};
}

json to_json(const ParamRecord& rec) {
  json est = json::object();
  for (const auto& n : rec.estimates) est[n.name] = to_json(n.estimate);
  return {{"class", std::string(to_string(rec.cls))},
          {"endpoint", rec.endpoint},
          {"estimates", std::move(est)}};
}

json to_json(const GridConfig& g) {
  return {{"n_upper", g.n_upper}, {"n_lower", g.n_lower}, {"n_gap", g.n_gap},
          {"im_range", {g.im_min, g.im_max}}, {"re_span", g.re_span}, {"seed", g.seed}};
}

json to_json(const Certificate& cert) {
  json conds = json::array();
  for (const auto& c : cert.conditions)
    conds.push_back({{"name", c.name},
                     {"margin", c.margin},
                     {"witness_z", {c.witness.real(), c.witness.imag()}},
                     {"samples", c.samples}});
  return {{"kind", std::string(to_string(cert.kind))},
          {"verdict", cert.pass ? "pass" : "fail"},
          {"endpoint", cert.endpoint},
          {"tol", cert.tol},
          {"conditions", std::move(conds)},
          {"grid", to_json(cert.grid)}};
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, source + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Representation load_representation(const std::string& path) {
  return representation_from_json(read_json_file(path));
}

}  // namespace stieltjes
