#include "vcdim/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "vcdim/linalg.hpp"
#include "vcdim/parallel.hpp"

namespace vcdim {
namespace {

std::string format_real(real v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep the value a JSON float, so -0 and integral reals read back as doubles
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

void emit(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + json(it.key()).dump() + ": ";
      emit(it.value(), out, indent + 2);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
    if (j.empty() || flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        emit(j[i], out, 0);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      emit(j[i], out, indent + 2);
    }
    out += "\n" + pad + "]";
  } else if (j.is_number_float()) {
    out += format_real(j.get<real>());
  } else {
    out += j.dump();
  }
}

real get_real(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<real>::infinity();
    if (s == "-inf") return -std::numeric_limits<real>::infinity();
    if (s == "nan") return std::numeric_limits<real>::quiet_NaN();
    throw InvalidInput("certificate: expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw InvalidInput("certificate: expected a number");
  return j.get<real>();
}

real get_real(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("certificate: missing field '") + key + "'");
  return get_real(j.at(key));
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("certificate: missing field '") + key + "'");
  }
  return j.at(key);
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vec_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("certificate: expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = get_real(j[i]);
  return v;
}

json mat_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

Matrix mat_from(const json& j, Eigen::Index cols = -1) {
  if (!j.is_array()) throw InvalidInput("certificate: expected a matrix");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows > 0) cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, std::max<Eigen::Index>(cols, 0));
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector r = vec_from(j[static_cast<std::size_t>(i)]);
    if (r.size() != m.cols()) throw InvalidInput("certificate: ragged matrix");
    m.row(i) = r.transpose();
  }
  return m;
}

json ellipsoid_json(const Ellipsoid& e) { return {{"center", vec_json(e.center())}, {"shape", mat_json(e.shape())}}; }

Ellipsoid ellipsoid_from(const json& j) {
  const Vector c = vec_from(field(j, "center"));
  return Ellipsoid(c, mat_from(field(j, "shape"), c.size()));
}

json gaussian_json(const GaussianComponent& g) {
  return {{"mean", vec_json(g.mean())}, {"covariance", mat_json(g.covariance())}};
}

GaussianComponent gaussian_from(const json& j) {
  const Vector m = vec_from(field(j, "mean"));
  return GaussianComponent(m, mat_from(field(j, "covariance"), m.size()));
}

json indices_json(const std::vector<int>& v) { return json(v); }

std::vector<int> indices_from(const json& j) { return j.get<std::vector<int>>(); }

Subset subset_from(const json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InvalidInput("certificate: subset must be a nonnegative integer");
  }
  return j.get<Subset>();
}

VerifyOutcome pass(std::string detail) { return {true, std::move(detail)}; }
VerifyOutcome fail(std::string detail) { return {false, std::move(detail)}; }

}  // namespace

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::ShatterWitness: return "shatter-witness";
    case CertificateKind::Refutation: return "refutation";
    case CertificateKind::MixtureWitness: return "mixture-witness";
    case CertificateKind::OracleResult: return "oracle-result";
  }
  return "unknown";
}

CertificateKind certificate_kind(const std::string& name) {
  for (auto k : {CertificateKind::ShatterWitness, CertificateKind::Refutation, CertificateKind::MixtureWitness,
                 CertificateKind::OracleResult}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("certificate: unknown kind '" + name + "'");
}

std::string emit_json(const json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidInput("write to '" + path + "' failed");
}

json to_json(const PointSet& x) {
  json pts = json::array();
  for (int j = 0; j < x.size(); ++j) pts.push_back(vec_json(x.point(j)));
  return {{"dim", x.dim()}, {"points", pts}};
}

PointSet point_set_from_json(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1) throw InvalidInput("point set: 'dim' must be a positive integer");
  const int dim = d.get<int>();
  const json& pts = field(j, "points");
  if (!pts.is_array()) throw InvalidInput("point set: 'points' must be an array");
  PointSet x(dim);
  for (const auto& p : pts) {
    const Vector v = vec_from(p);
    if (v.size() != dim) throw DimensionMismatch("point set: point of length " + std::to_string(v.size()) +
                                                 " in dimension " + std::to_string(dim));
    if (!v.allFinite()) throw InvalidInput("point set: non-finite coordinate");
    x.push_back(v);
  }
  return x;
}

PointSet read_point_set(const std::string& path) {
  const std::string text = read_text_file(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InvalidInput("point set file '" + path + "' is empty");
  return point_set_from_json(parse_json(text));
}

json to_json(const Tolerances& t) {
  return {{"pd", t.pd},
          {"eigen_offdiag", t.eigen_offdiag},
          {"solve_pivot", t.solve_pivot},
          {"lp", t.lp},
          {"feasibility", t.feasibility},
          {"cut", t.cut},
          {"verify", t.verify},
          {"lp_max_pivots", t.lp_max_pivots},
          {"max_cuts", t.max_cuts},
          {"max_doublings", t.max_doublings}};
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  t.pd = get_real(j, "pd");
  t.eigen_offdiag = get_real(j, "eigen_offdiag");
  t.solve_pivot = get_real(j, "solve_pivot");
  t.lp = get_real(j, "lp");
  t.feasibility = get_real(j, "feasibility");
  t.cut = get_real(j, "cut");
  t.verify = get_real(j, "verify");
  t.lp_max_pivots = field(j, "lp_max_pivots").get<int>();
  t.max_cuts = field(j, "max_cuts").get<int>();
  t.max_doublings = field(j, "max_doublings").get<int>();
  return t;
}

json to_json(const ShatterWitness& w) {
  json subsets = json::array();
  for (std::size_t y = 0; y < w.subsets(); ++y) {
    json s = ellipsoid_json(w.ellipsoids[y]);
    s["subset"] = y;
    s["coefficients"] = vec_json(w.coefficients[y]);
    s["min_eigenvalue"] = w.min_eigenvalues[y];
    s["slack"] = w.slacks[y];
    subsets.push_back(std::move(s));
  }
  return {{"dim", w.dim},
          {"points", to_json(w.points)},
          {"epsilon", w.epsilon},
          {"delta", w.delta},
          {"condition", w.condition},
          {"gershgorin_bound", w.gershgorin_bound},
          {"seed", w.seed},
          {"subsets", subsets}};
}

ShatterWitness shatter_witness_from_json(const json& j) {
  ShatterWitness w;
  w.dim = field(j, "dim").get<int>();
  w.points = point_set_from_json(field(j, "points"));
  w.epsilon = get_real(j, "epsilon");
  w.delta = get_real(j, "delta");
  w.condition = get_real(j, "condition");
  w.gershgorin_bound = get_real(j, "gershgorin_bound");
  w.seed = field(j, "seed").get<std::uint64_t>();
  const json& subsets = field(j, "subsets");
  for (std::size_t y = 0; y < subsets.size(); ++y) {
    const json& s = subsets[y];
    if (subset_from(field(s, "subset")) != y) throw InvalidInput("shatter witness: subsets out of order");
    w.coefficients.push_back(vec_from(field(s, "coefficients")));
    w.ellipsoids.push_back(ellipsoid_from(s));
    w.min_eigenvalues.push_back(get_real(s, "min_eigenvalue"));
    w.slacks.push_back(get_real(s, "slack"));
  }
  return w;
}

json to_json(const RefutationCertificate& c) {
  json j{{"points", to_json(c.points)},
         {"labeling", c.labeling},
         {"kind", c.kind == RefutationKind::Radon ? "radon" : "equal-projection"},
         {"projected", mat_json(c.projected)},
         {"heights", vec_json(c.heights)},
         {"higher", c.higher},
         {"lower", c.lower},
         {"first_height", c.first_height},
         {"second_height", c.second_height},
         {"tie", c.tie},
         {"oracle",
          {{"lp_margin", c.oracle.lp_margin},
           {"iterations", c.oracle.iterations},
           {"cuts", c.oracle.cuts},
           {"indeterminate", c.oracle.indeterminate}}}};
  if (c.radon) {
    j["radon"] = {{"first", indices_json(c.radon->first)},
                  {"second", indices_json(c.radon->second)},
                  {"first_weights", vec_json(c.radon->first_weights)},
                  {"second_weights", vec_json(c.radon->second_weights)},
                  {"point", vec_json(c.radon->point)}};
  } else {
    j["radon"] = nullptr;
  }
  return j;
}

RefutationCertificate refutation_from_json(const json& j) {
  RefutationCertificate c;
  c.points = point_set_from_json(field(j, "points"));
  c.labeling = subset_from(field(j, "labeling"));
  const auto kind = field(j, "kind").get<std::string>();
  if (kind != "radon" && kind != "equal-projection") throw InvalidInput("refutation: unknown kind '" + kind + "'");
  c.kind = kind == "radon" ? RefutationKind::Radon : RefutationKind::EqualProjection;
  c.projected = mat_from(field(j, "projected"));
  c.heights = vec_from(field(j, "heights"));
  c.higher = field(j, "higher").get<int>();
  c.lower = field(j, "lower").get<int>();
  c.first_height = get_real(j, "first_height");
  c.second_height = get_real(j, "second_height");
  c.tie = field(j, "tie").get<bool>();
  const json& o = field(j, "oracle");
  c.oracle.lp_margin = get_real(o, "lp_margin");
  c.oracle.iterations = field(o, "iterations").get<int>();
  c.oracle.cuts = field(o, "cuts").get<int>();
  c.oracle.indeterminate = field(o, "indeterminate").get<bool>();
  const json& r = field(j, "radon");
  if (!r.is_null()) {
    RadonCertificate rc;
    rc.first = indices_from(field(r, "first"));
    rc.second = indices_from(field(r, "second"));
    rc.first_weights = vec_from(field(r, "first_weights"));
    rc.second_weights = vec_from(field(r, "second_weights"));
    rc.point = vec_from(field(r, "point"));
    c.radon = std::move(rc);
  }
  return c;
}

json to_json(const MixtureShatterWitness& w) {
  json base = json::array();
  for (const auto& g : w.base_witnesses) {
    json b = gaussian_json(g.component);
    b["threshold"] = g.threshold;
    base.push_back(std::move(b));
  }
  json offsets = json::array();
  for (const auto& t : w.translations.offsets) offsets.push_back(vec_json(t));
  const auto& rep = w.translations.report;
  json mixtures = json::array();
  for (const auto& m : w.mixtures) {
    json comps = json::array();
    for (const auto& g : m.model.components) comps.push_back(gaussian_json(g));
    mixtures.push_back({{"threshold", m.threshold},
                        {"weights", vec_json(m.model.weights)},
                        {"log_weights", vec_json(m.model.log_weights)},
                        {"components", comps}});
  }
  return {{"dim", w.dim},
          {"components", w.components},
          {"seed", w.seed},
          {"base", to_json(w.base)},
          {"base_witnesses", base},
          {"q", w.q},
          {"in_slack", w.in_slack},
          {"delta", w.delta},
          {"translations",
           {{"offsets", offsets},
            {"spacing", rep.spacing},
            {"doublings", rep.doublings},
            {"checks", rep.checks},
            {"max_log_gap", rep.max_log_gap},
            {"min_log_gap", rep.min_log_gap}}},
          {"points", to_json(w.points)},
          {"mixtures", mixtures}};
}

MixtureShatterWitness mixture_witness_from_json(const json& j) {
  MixtureShatterWitness w;
  w.dim = field(j, "dim").get<int>();
  w.components = field(j, "components").get<int>();
  w.seed = field(j, "seed").get<std::uint64_t>();
  w.base = point_set_from_json(field(j, "base"));
  for (const auto& b : field(j, "base_witnesses")) {
    w.base_witnesses.push_back({gaussian_from(b), get_real(b, "threshold")});
  }
  w.q = get_real(j, "q");
  w.in_slack = get_real(j, "in_slack");
  w.delta = get_real(j, "delta");
  const json& t = field(j, "translations");
  for (const auto& o : field(t, "offsets")) w.translations.offsets.push_back(vec_from(o));
  w.translations.report.spacing = get_real(t, "spacing");
  w.translations.report.doublings = field(t, "doublings").get<int>();
  w.translations.report.checks = field(t, "checks").get<std::size_t>();
  w.translations.report.max_log_gap = get_real(t, "max_log_gap");
  w.translations.report.min_log_gap = get_real(t, "min_log_gap");
  w.points = point_set_from_json(field(j, "points"));
  for (const auto& m : field(j, "mixtures")) {
    MixtureLevelSet level;
    level.threshold = get_real(m, "threshold");
    level.model.weights = vec_from(field(m, "weights"));
    level.model.log_weights = vec_from(field(m, "log_weights"));
    for (const auto& g : field(m, "components")) level.model.components.push_back(gaussian_from(g));
    w.mixtures.push_back(std::move(level));
  }
  return w;
}

json to_json(const OracleRecord& r) {
  json j{{"points", to_json(r.problem.points())},
         {"labels", r.problem.labels()},
         {"realizable", is_realizable(r.result)}};
  if (const auto* c = std::get_if<MarginCertificate>(&r.result)) {
    j["quadric"] = {{"coefficients", vec_json(c->quadric.coeffs())}, {"constant", c->quadric.constant()}};
    j["ellipsoid"] = c->ellipsoid ? ellipsoid_json(*c->ellipsoid) : json(nullptr);
    j["margin"] = c->margin;
    j["lp_margin"] = c->lp_margin;
    j["out_slack"] = c->out_slack;
    j["min_eigenvalue"] = c->min_eigenvalue;
    j["slacks"] = vec_json(c->slacks);
    j["iterations"] = c->iterations;
    j["cuts"] = c->cuts;
  } else {
    const auto& f = std::get<InfeasibilityReport>(r.result);
    j["lp_margin"] = f.lp_margin;
    j["iterations"] = f.iterations;
    j["cuts"] = f.cuts;
    j["indeterminate"] = f.indeterminate;
  }
  return j;
}

OracleRecord oracle_record_from_json(const json& j) {
  LabeledPointSet problem(point_set_from_json(field(j, "points")), subset_from(field(j, "labels")));
  if (field(j, "realizable").get<bool>()) {
    const json& q = field(j, "quadric");
    MarginCertificate c{Quadric(vec_from(field(q, "coefficients")), get_real(q, "constant")),
                        std::nullopt, 0, 0, 0, 0, Vector(), 0, 0, Tolerances{}};
    if (!field(j, "ellipsoid").is_null()) c.ellipsoid = ellipsoid_from(j.at("ellipsoid"));
    c.margin = get_real(j, "margin");
    c.lp_margin = get_real(j, "lp_margin");
    c.out_slack = get_real(j, "out_slack");
    c.min_eigenvalue = get_real(j, "min_eigenvalue");
    c.slacks = vec_from(field(j, "slacks"));
    c.iterations = field(j, "iterations").get<int>();
    c.cuts = field(j, "cuts").get<int>();
    return {std::move(problem), std::move(c)};
  }
  InfeasibilityReport f;
  f.lp_margin = get_real(j, "lp_margin");
  f.iterations = field(j, "iterations").get<int>();
  f.cuts = field(j, "cuts").get<int>();
  f.indeterminate = field(j, "indeterminate").get<bool>();
  return {std::move(problem), f};
}

json to_json(const CertificateFile& f) {
  return {{"schema", f.schema},
          {"kind", to_string(f.kind)},
          {"seed", f.seed},
          {"tolerances", to_json(f.tolerances)},
          {"payload", f.payload}};
}

CertificateFile certificate_from_json(const json& j) {
  CertificateFile f;
  f.schema = field(j, "schema").get<std::string>();
  if (f.schema != kCertificateSchema) throw InvalidInput("certificate: unsupported schema '" + f.schema + "'");
  f.kind = certificate_kind(field(j, "kind").get<std::string>());
  f.seed = field(j, "seed").get<std::uint64_t>();
  f.tolerances = tolerances_from_json(field(j, "tolerances"));
  f.payload = field(j, "payload");
  return f;
}

CertificateFile read_certificate(const std::string& path) {
  try {
    return certificate_from_json(parse_json(read_text_file(path)));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("certificate: ") + e.what());
  }
}

void write_certificate(const std::string& path, const CertificateFile& f) {
  write_text_file(path, emit_json(to_json(f)));
}

VerifyOutcome verify(const ShatterWitness& w, unsigned threads) {
  const int d = w.dim;
  if (d < 1 || w.points.dim() != d) return fail("dimension mismatch");
  const int b = lift_dimension(d);
  if (w.points.size() != b) return fail("witness set does not have B points");
  if (w.subsets() != (std::size_t{1} << b) || w.coefficients.size() != w.subsets() ||
      w.min_eigenvalues.size() != w.subsets() || w.slacks.size() != w.subsets()) {
    return fail("witness does not cover every subset");
  }
  if (std::abs(w.epsilon - real(1) / (d + 1)) > 1e-15) return fail("epsilon is not 1/(d+1)");
  if (std::abs(w.gershgorin_bound - ((1 - w.epsilon) - (d - 1) * w.epsilon / 2)) > 1e-15) {
    return fail("recorded Gershgorin bound is inconsistent");
  }
  if (!(w.delta > 0)) return fail("slack delta is not positive");
  const real tol = 1e-9;
  const Matrix lifted = lift_points(w.points);
  Vector a = Vector::Zero(b);
  a.head(d).setOnes();

  std::vector<char> ok(w.subsets(), 1);
  parallel_for(w.subsets(), threads, [&](std::size_t y) {
    const Vector& c = w.coefficients[y];
    if (c.size() != b || c.isZero(0) || (c - a).cwiseAbs().maxCoeff() >= w.epsilon) {
      ok[y] = 0;
      return;
    }
    const Matrix shape = quadric_to_matrix(Quadric(c, -1)).A;
    const real lambda = sym_eigen(shape).values(0);
    if (!cholesky_pd_check(shape) || lambda < w.gershgorin_bound - tol) ok[y] = 0;
    for (int j = 0; j < b; ++j) {
      const real v = lifted.row(j).dot(c) - 1;
      const bool in = contains(static_cast<Subset>(y), j);
      if (in ? v > -w.delta + tol : v < w.delta - tol) ok[y] = 0;
    }
  });
  for (std::size_t y = 0; y < w.subsets(); ++y) {
    if (!ok[y]) return fail("subset " + std::to_string(y) + " fails its quadric checks");
  }
  const auto rep = verify_shattering(w.points, w.ellipsoids);
  if (!rep.shattered) return fail("ellipsoid for subset " + std::to_string(rep.failures.front()) + " cuts out the wrong set");
  return pass(std::to_string(w.subsets()) + " subsets of " + std::to_string(b) + " points certified");
}

VerifyOutcome verify(const RefutationCertificate& c, const Tolerances& tol) {
  if (c.labeling == 0 || c.labeling == full_subset(c.points.size())) return fail("trivial labeling");
  if (!verify_refutation(c, tol.verify)) return fail("geometric refutation check failed");
  if (c.oracle.lp_margin > tol.feasibility) return fail("recorded oracle margin exceeds the feasibility threshold");
  return pass("labeling " + std::to_string(c.labeling) + " refuted");
}

VerifyOutcome verify(const MixtureShatterWitness& w, unsigned threads) {
  const auto rep = verify_mixture_shattering(w, threads);
  if (!rep.structure_ok) return fail("mixture witness structure is inconsistent");
  if (!rep.shattered) return fail("mixture for subset " + std::to_string(rep.failures.front()) + " cuts out the wrong set");
  if (w.components > 1) {
    const auto& r = w.translations.report;
    if (!(r.max_log_gap < std::log(w.delta)) || !std::isfinite(r.min_log_gap)) {
      return fail("recorded translation gaps leave (0, delta)");
    }
  }
  return pass(std::to_string(rep.checked) + " subsets of " + std::to_string(w.points.size()) + " points certified");
}

VerifyOutcome verify(const OracleRecord& r, const Tolerances& tol) {
  if (const auto* c = std::get_if<MarginCertificate>(&r.result)) {
    if (!verify_certificate(r.problem, *c, tol)) return fail("margin certificate fails pointwise");
    return pass("realizable, margin " + format_real(c->margin));
  }
  const auto& f = std::get<InfeasibilityReport>(r.result);
  if (f.lp_margin > tol.feasibility) return fail("recorded infeasibility has a margin above the threshold");
  return pass("infeasible, recorded t* " + format_real(f.lp_margin));
}

VerifyOutcome verify_certificate_file(const CertificateFile& f, unsigned threads) {
  switch (f.kind) {
    case CertificateKind::ShatterWitness: {
      auto w = shatter_witness_from_json(f.payload);
      w.tolerances = f.tolerances;
      return verify(w, threads);
    }
    case CertificateKind::Refutation:
      return verify(refutation_from_json(f.payload), f.tolerances);
    case CertificateKind::MixtureWitness: {
      auto w = mixture_witness_from_json(f.payload);
      w.tolerances = f.tolerances;
      return verify(w, threads);
    }
    case CertificateKind::OracleResult:
      return verify(oracle_record_from_json(f.payload), f.tolerances);
  }
  return fail("unknown kind");
}

std::string shatter_table_csv(const std::vector<ShatterRow>& rows) {
  std::string out = "size,realizable,total\n";
  for (const auto& r : rows) {
    out += std::to_string(r.size) + "," + std::to_string(r.realizable) + "," + std::to_string(r.total) + "\n";
  }
  return out;
}

}  // namespace vcdim
