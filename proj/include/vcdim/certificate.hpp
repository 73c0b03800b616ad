#pragma once

// Certificate files: JSON with every real printed to 17 significant digits,
// so a double survives write/read unchanged. Verification re-runs pointwise
// checks on the stored objects and never re-solves an LP.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "vcdim/gmm.hpp"
#include "vcdim/realizability.hpp"
#include "vcdim/shattering.hpp"
#include "vcdim/types.hpp"

namespace vcdim {

using json = nlohmann::json;

inline constexpr const char* kCertificateSchema = "vcdim-cert/1";

enum class CertificateKind { ShatterWitness, Refutation, MixtureWitness, OracleResult };

std::string to_string(CertificateKind k);
CertificateKind certificate_kind(const std::string& name);

struct CertificateFile {
  std::string schema = kCertificateSchema;
  CertificateKind kind = CertificateKind::ShatterWitness;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  json payload;
};

/// Deterministic text form: sorted keys, reals as %.17g, non-finite reals as
/// the strings "inf", "-inf", "nan".
std::string emit_json(const json& j);
json parse_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

json to_json(const PointSet& x);
PointSet point_set_from_json(const json& j);
/// {"dim": d, "points": [[...], ...]}; an empty or malformed file is InvalidInput.
PointSet read_point_set(const std::string& path);

json to_json(const Tolerances& t);
Tolerances tolerances_from_json(const json& j);

json to_json(const ShatterWitness& w);
ShatterWitness shatter_witness_from_json(const json& j);

json to_json(const RefutationCertificate& c);
RefutationCertificate refutation_from_json(const json& j);

json to_json(const MixtureShatterWitness& w);
MixtureShatterWitness mixture_witness_from_json(const json& j);

struct OracleRecord {
  LabeledPointSet problem;
  RealizabilityResult result;
};

json to_json(const OracleRecord& r);
OracleRecord oracle_record_from_json(const json& j);

json to_json(const CertificateFile& f);
CertificateFile certificate_from_json(const json& j);
CertificateFile read_certificate(const std::string& path);
void write_certificate(const std::string& path, const CertificateFile& f);

struct VerifyOutcome {
  bool ok = false;
  std::string detail;
};

VerifyOutcome verify(const ShatterWitness& w, unsigned threads = 1);
VerifyOutcome verify(const RefutationCertificate& c, const Tolerances& tol);
VerifyOutcome verify(const MixtureShatterWitness& w, unsigned threads = 1);
VerifyOutcome verify(const OracleRecord& r, const Tolerances& tol);
VerifyOutcome verify_certificate_file(const CertificateFile& f, unsigned threads = 1);

/// Header "size,realizable,total", one row per subset size.
std::string shatter_table_csv(const std::vector<ShatterRow>& rows);

}  // namespace vcdim
