// vcdim: build, serialize, and verify VC-dimension certificates for ellipsoids
// and Gaussian-mixture level sets.
//
// Exit codes: 0 ok, 1 error, 2 refuted or infeasible, 3 verification failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "vcdim/certificate.hpp"
#include "vcdim/gmm.hpp"
#include "vcdim/linalg.hpp"
#include "vcdim/realizability.hpp"
#include "vcdim/shattering.hpp"

using namespace vcdim;

namespace {

enum Exit { kOk = 0, kError = 1, kRefuted = 2, kFailed = 3 };

struct Common {
  std::optional<double> tolerance;
  unsigned threads = 1;

  Tolerances tolerances() const {
    Tolerances t;
    if (tolerance) t.feasibility = *tolerance;
    return t;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--tolerance", c.tolerance, "Feasibility threshold on the LP margin (default 1e-7)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "Worker threads for subset enumeration")->check(CLI::Range(1u, 256u));
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out, const CertificateFile& f) {
  const std::string text = emit_json(to_json(f));
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_text_file(out, text);
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Subset parse_labels(const std::string& s, int n) {
  if (static_cast<int>(s.size()) != n) {
    throw UsageError("--labels needs one 0/1 character per point (" + std::to_string(n) + ")");
  }
  Subset y = 0;
  for (int j = 0; j < n; ++j) {
    if (s[static_cast<std::size_t>(j)] == '1') {
      y |= Subset{1} << j;
    } else if (s[static_cast<std::size_t>(j)] != '0') {
      throw UsageError("--labels must contain only 0 and 1");
    }
  }
  return y;
}

// Empty and full labelings: the ball from trivial_witness, packaged as a margin certificate.
MarginCertificate trivial_certificate(const LabeledPointSet& l, const Tolerances& tol) {
  const Ellipsoid e = trivial_witness(l.points(), l.labels());
  const Quadric q = ellipsoid_to_quadric(e);
  const real lambda = sym_eigen(e.shape()).values(0);
  MarginCertificate c{q, e, lambda, 0, std::numeric_limits<real>::infinity(), lambda, Vector(l.size()), 0, 0, tol};
  for (int j = 0; j < l.size(); ++j) {
    const real p = quadric_eval(q, l.points().point(j));
    c.slacks(j) = l.inside(j) ? -p : p;
    if (l.inside(j)) c.margin = std::min(c.margin, -p);
    else c.out_slack = std::min(c.out_slack, p);
  }
  c.lp_margin = c.margin;
  return c;
}

int cmd_vcdim(int d, bool certify, int trials, std::optional<std::uint64_t> seed, const std::string& out,
              const Common& common) {
  if (d < 1 || d > 4) throw UsageError("--dim must be in 1..4");
  const int b = lift_dimension(d);
  std::printf("%d\n", b);
  if (!certify) return kOk;
  if (!seed) throw UsageError("--certify needs --seed");
  const Tolerances tol = common.tolerances();

  const auto w = build_shatter_witness(d, *seed, common.threads, tol);
  const auto v = verify(w, common.threads);
  std::printf("lower bound: %s (epsilon %s, delta %s, condition %s)\n", v.detail.c_str(), g17(w.epsilon).c_str(),
              g17(w.delta).c_str(), g17(w.condition).c_str());
  if (!out.empty()) emit(out, {kCertificateSchema, CertificateKind::ShatterWitness, *seed, tol, to_json(w)});
  bool ok = v.ok && verify_shattering(w.points, w.ellipsoids).shattered;

  int refuted = 0;
  for (int k = 0; k < trials; ++k) {
    const auto x = uniform_point_set(d, b + 1, *seed + 1 + static_cast<std::uint64_t>(k));
    try {
      const auto c = find_unrealizable_labeling(x, tol);
      if (verify(c, tol).ok) ++refuted;
    } catch (const OracleDisagreement& e) {
      std::fprintf(stderr, "trial %d: %s\n", k, e.what());
    }
  }
  if (trials > 0) {
    std::printf("upper bound: %d of %d random %d-point sets refuted\n", refuted, trials, b + 1);
    ok = ok && refuted == trials;
  }
  std::printf("%s\n", ok ? "certified" : "CERTIFICATION FAILED");
  return ok ? kOk : kFailed;
}

int cmd_witness(int d, std::uint64_t seed, const std::string& out, const Common& common) {
  if (d < 1 || d > 4) throw UsageError("--dim must be in 1..4");
  const Tolerances tol = common.tolerances();
  const auto w = build_shatter_witness(d, seed, common.threads, tol);
  const auto v = verify(w, common.threads);
  emit(out, {kCertificateSchema, CertificateKind::ShatterWitness, seed, tol, to_json(w)});
  std::fprintf(stderr, "%s\n", v.detail.c_str());
  return v.ok ? kOk : kFailed;
}

int cmd_refute(const std::string& points, std::optional<int> dim, std::optional<std::uint64_t> seed,
               const std::string& out, const Common& common) {
  PointSet x;
  std::uint64_t s = 0;
  if (!points.empty()) {
    x = read_point_set(points);
    if (dim && *dim != x.dim()) throw UsageError("--dim disagrees with the point file");
  } else {
    if (!dim || !seed) throw UsageError("refute needs --points, or --dim with --seed");
    if (*dim < 1 || *dim > 4) throw UsageError("--dim must be in 1..4");
    s = *seed;
    x = uniform_point_set(*dim, lift_dimension(*dim) + 1, s);
  }
  const int need = lift_dimension(x.dim()) + 1;
  if (x.size() != need) {
    throw UsageError("refute needs exactly " + std::to_string(need) + " points in dimension " +
                     std::to_string(x.dim()) + ", got " + std::to_string(x.size()));
  }
  const Tolerances tol = common.tolerances();
  RefutationCertificate c;
  try {
    c = find_unrealizable_labeling(x, tol);
  } catch (const OracleDisagreement& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kFailed;
  }
  const auto v = verify(c, tol);
  emit(out, {kCertificateSchema, CertificateKind::Refutation, s, tol, to_json(c)});
  std::string in;
  for (int j = 0; j < x.size(); ++j) {
    if (contains(c.labeling, j)) in += (in.empty() ? "" : ",") + std::to_string(j);
  }
  std::fprintf(stderr, "unrealizable labeling {%s}%s, oracle t* = %s\n", in.c_str(), c.tie ? " (tie)" : "",
               g17(c.oracle.lp_margin).c_str());
  return v.ok ? kRefuted : kFailed;
}

int cmd_oracle(const std::string& points, const std::string& labels, const std::string& out,
               const Common& common) {
  const PointSet x = read_point_set(points);
  const LabeledPointSet l(x, parse_labels(labels, x.size()));
  const Tolerances tol = common.tolerances();
  OracleRecord r{l, l.trivial() ? RealizabilityResult(trivial_certificate(l, tol)) : realizable_by_ellipsoid(l, tol)};
  if (!out.empty()) emit(out, {kCertificateSchema, CertificateKind::OracleResult, 0, tol, to_json(r)});
  if (const auto* c = std::get_if<MarginCertificate>(&r.result)) {
    std::printf("realizable: margin %s, lambda_min %s\n", g17(c->margin).c_str(), g17(c->min_eigenvalue).c_str());
    return verify(r, tol).ok ? kOk : kFailed;
  }
  const auto& f = std::get<InfeasibilityReport>(r.result);
  std::printf("%s: t* = %s after %d cuts\n", f.indeterminate ? "indeterminate" : "infeasible",
              g17(f.lp_margin).c_str(), f.cuts);
  return f.indeterminate ? kFailed : kRefuted;
}

int cmd_gmm(int d, int n, std::uint64_t seed, const std::string& out, const Common& common) {
  if (d < 1 || d > 2 || n < 1 || n > 3) {
    throw UsageError("gmm-shatter enumerates 2^(N B) subsets; supported range is --dim 1..2, --components 1..3");
  }
  const Tolerances tol = common.tolerances();
  MixtureShatterWitness w;
  try {
    w = build_mixture_shatter_witness(d, n, seed, common.threads, tol);
  } catch (const CertificateFailure& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kFailed;
  }
  const auto rep = verify_mixture_shattering(w, common.threads);
  const auto v = verify(w, common.threads);
  if (!out.empty()) emit(out, {kCertificateSchema, CertificateKind::MixtureWitness, seed, tol, to_json(w)});
  std::printf("|U| = %d, subsets certified %zu of %zu\n", w.points.size(), rep.checked - rep.failures.size(),
              rep.checked);
  std::printf("spacing %s after %d doublings, q %s, delta %s\n", g17(w.translations.report.spacing).c_str(),
              w.translations.report.doublings, g17(w.q).c_str(), g17(w.delta).c_str());
  std::printf("min margins: in %s, out %s (required %s)\n", g17(rep.min_in_margin).c_str(),
              g17(rep.min_out_margin).c_str(), g17(rep.required_margin).c_str());
  return v.ok ? kOk : kFailed;
}

int cmd_shatter_fn(const std::string& points, const Common& common) {
  const PointSet x = read_point_set(points);
  if (x.empty()) throw UsageError("point file has no points");
  if (x.size() > 16) throw UsageError("shatter-fn is limited to 16 points");
  if (x.has_duplicates()) throw UsageError("point file has duplicate points");
  const auto rows = shatter_table(x, ellipsoid_oracle(common.tolerances()), common.threads);
  std::fputs(shatter_table_csv(rows).c_str(), stdout);
  return kOk;
}

int cmd_verify(const std::string& path, const Common& common) {
  const CertificateFile f = read_certificate(path);
  VerifyOutcome v;
  try {
    v = verify_certificate_file(f, common.threads);
  } catch (const std::exception& e) {
    v = {false, e.what()};
  }
  std::printf("%s %s: %s\n", to_string(f.kind).c_str(), v.ok ? "verified" : "FAILED", v.detail.c_str());
  return v.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for the VC dimension of ellipsoids and Gaussian-mixture level sets"};
  app.require_subcommand(1);
  Common common;

  int dim = 0, components = 0, trials = 5;
  std::optional<int> dim_opt;
  std::optional<std::uint64_t> seed_opt;
  std::uint64_t seed = 0;
  bool certify = false;
  std::string out, points, labels, file;

  auto* vc = app.add_subcommand("vcdim", "Print (d^2+3d)/2; with --certify, check both bounds");
  vc->add_option("--dim", dim, "Dimension d")->required();
  vc->add_flag("--certify", certify, "Build and verify a shattered set, then refute random sets");
  vc->add_option("--refute-trials", trials, "Random (B+1)-point sets to refute with --certify")
      ->check(CLI::NonNegativeNumber);
  vc->add_option("--seed", seed_opt, "Seed (required with --certify)");
  vc->add_option("--out", out, "Write the shatter-witness certificate here");
  add_common(vc, common);

  auto* wit = app.add_subcommand("witness", "Shatter witness: B points and one ellipsoid per subset");
  wit->add_option("--dim", dim, "Dimension d")->required();
  wit->add_option("--seed", seed, "Seed")->required();
  wit->add_option("--out", out, "Output file (default stdout)");
  add_common(wit, common);

  auto* ref = app.add_subcommand("refute", "Unrealizable labeling of B+1 points (exit 2 when refuted)");
  ref->add_option("--points", points, "Point-set JSON file");
  ref->add_option("--dim", dim_opt, "Dimension d for random points");
  ref->add_option("--seed", seed_opt, "Seed for random points");
  ref->add_option("--out", out, "Output file (default stdout)");
  add_common(ref, common);

  auto* orc = app.add_subcommand("oracle", "Is the labeling cut out by an ellipsoid? (0 yes, 2 no, 3 indeterminate)");
  orc->add_option("--points", points, "Point-set JSON file")->required();
  orc->add_option("--labels", labels, "One 0/1 character per point")->required();
  orc->add_option("--out", out, "Write the oracle-result certificate here");
  add_common(orc, common);

  auto* gmm = app.add_subcommand("gmm-shatter", "Mixture witness shattering N*B points");
  gmm->add_option("--dim", dim, "Dimension d")->required();
  gmm->add_option("--components", components, "Mixture components N")->required();
  gmm->add_option("--seed", seed, "Seed")->required();
  gmm->add_option("--out", out, "Write the mixture-witness certificate here");
  add_common(gmm, common);

  auto* sfn = app.add_subcommand("shatter-fn", "CSV of realizable labelings by subset size");
  sfn->add_option("--points", points, "Point-set JSON file")->required();
  add_common(sfn, common);

  auto* ver = app.add_subcommand("verify", "Re-check a certificate file pointwise");
  ver->add_option("file", file, "Certificate file")->required();
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << "run with --help for usage\n";
    return kError;
  }

  try {
    if (*vc) return cmd_vcdim(dim, certify, trials, seed_opt, out, common);
    if (*wit) return cmd_witness(dim, seed, out, common);
    if (*ref) return cmd_refute(points, dim_opt, seed_opt, out, common);
    if (*orc) return cmd_oracle(points, labels, out, common);
    if (*gmm) return cmd_gmm(dim, components, seed, out, common);
    if (*sfn) return cmd_shatter_fn(points, common);
    if (*ver) return cmd_verify(file, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kError;
  } catch (const CertificateFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
