#include <cstring>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "vcdim/certificate.hpp"

using namespace vcdim;

namespace {

double random_double(std::mt19937_64& rng) {
  // arbitrary finite bit patterns, including subnormals and extreme exponents
  while (true) {
    const std::uint64_t bits = rng();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (std::isfinite(v)) return v;
  }
}

std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("vcdim_test_" + name)).string();
}

PointSet line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return PointSet(1, rows);
}

CertificateFile round_trip(const CertificateFile& f) {
  return certificate_from_json(parse_json(emit_json(to_json(f))));
}

}  // namespace

TEST_CASE("reals survive emit and parse bit for bit") {
  std::mt19937_64 rng(1);
  json arr = json::array();
  std::vector<double> values;
  for (int i = 0; i < 20000; ++i) {
    values.push_back(random_double(rng));
    arr.push_back(values.back());
  }
  for (double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 4.9406564584124654e-324, 1.7976931348623157e308}) {
    values.push_back(v);
    arr.push_back(v);
  }
  const std::string text = emit_json(arr);
  const json back = parse_json(text);
  REQUIRE(back.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(bits_of(back[i].get<double>()) == bits_of(values[i]));
  CHECK(emit_json(back) == text);
}

TEST_CASE("emitter layout") {
  const json j{{"b", 0.5}, {"a", {1, 2}}, {"c", {{"x", std::numeric_limits<double>::infinity()}}}, {"s", "t"}};
  CHECK(emit_json(j) == "{\n  \"a\": [1, 2],\n  \"b\": 0.5,\n  \"c\": {\n    \"x\": \"inf\"\n  },\n  \"s\": \"t\"\n}\n");
  CHECK(emit_json(json(0.1)) == "0.10000000000000001\n");
}

TEST_CASE("point set files") {
  const auto x = PointSet(2, {{0, 0.25}, {1, -3}});
  const std::string path = temp_path("points.json");
  write_text_file(path, emit_json(to_json(x)));
  const auto y = read_point_set(path);
  CHECK(y.coords() == x.coords());

  write_text_file(path, "");
  CHECK_THROWS_AS(read_point_set(path), InvalidInput);
  write_text_file(path, "{\"dim\": 2, \"points\": [[1, 2, 3]]}");
  CHECK_THROWS_AS(read_point_set(path), DimensionMismatch);
  write_text_file(path, "{\"dim\": 0, \"points\": []}");
  CHECK_THROWS_AS(read_point_set(path), InvalidInput);
  write_text_file(path, "{\"dim\": 1, \"points\": [[1]");
  CHECK_THROWS_AS(read_point_set(path), InvalidInput);
  CHECK_THROWS_AS(read_point_set(temp_path("missing.json")), InvalidInput);
  std::filesystem::remove(path);
}

TEST_CASE("shatter witness certificate") {
  for (int d = 1; d <= 2; ++d) {
    const auto w = build_shatter_witness(d, 7);
    CertificateFile f{kCertificateSchema, CertificateKind::ShatterWitness, 7, w.tolerances, to_json(w)};
    const std::string text = emit_json(to_json(f));
    const auto g = round_trip(f);
    CHECK(emit_json(to_json(g)) == text);
    const auto v = verify_certificate_file(g, 2);
    CHECK(v.ok);

    const auto back = shatter_witness_from_json(g.payload);
    for (std::size_t y = 0; y < w.subsets(); ++y) {
      CHECK(back.coefficients[y] == w.coefficients[y]);
      CHECK(back.ellipsoids[y].shape() == w.ellipsoids[y].shape());
    }

    // swapping two ellipsoids breaks the pointwise check
    auto bad = g;
    std::swap(bad.payload["subsets"][1]["center"], bad.payload["subsets"][2]["center"]);
    std::swap(bad.payload["subsets"][1]["shape"], bad.payload["subsets"][2]["shape"]);
    std::swap(bad.payload["subsets"][1]["coefficients"], bad.payload["subsets"][2]["coefficients"]);
    CHECK_FALSE(verify_certificate_file(bad, 1).ok);

    auto drop = g;
    drop.payload["subsets"].erase(drop.payload["subsets"].size() - 1);
    CHECK_FALSE(verify_certificate_file(drop, 1).ok);
  }
}

TEST_CASE("refutation certificate") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 2; ++d) {
    const auto x = PointSet(vcdim::testing::random_matrix(rng, d, lift_dimension(d) + 1));
    const auto c = find_unrealizable_labeling(x);
    CertificateFile f{kCertificateSchema, CertificateKind::Refutation, 3, {}, to_json(c)};
    const auto g = round_trip(f);
    CHECK(emit_json(to_json(g)) == emit_json(to_json(f)));
    CHECK(verify_certificate_file(g).ok);

    auto bad = g;
    bad.payload["labeling"] = full_subset(x.size()) & ~c.labeling;
    if (!c.tie) CHECK_FALSE(verify_certificate_file(bad).ok);
    auto moved = g;
    moved.payload["heights"][0] = moved.payload["heights"][0].get<double>() + 1;
    CHECK_FALSE(verify_certificate_file(moved).ok);
  }
}

TEST_CASE("mixture witness certificate") {
  for (int n = 1; n <= 2; ++n) {
    const auto w = build_mixture_shatter_witness(1, n, 5);
    CertificateFile f{kCertificateSchema, CertificateKind::MixtureWitness, 5, w.tolerances, to_json(w)};
    const std::string text = emit_json(to_json(f));
    const auto g = round_trip(f);
    CHECK(emit_json(to_json(g)) == text);
    CHECK(verify_certificate_file(g).ok);

    auto bad = g;
    bad.payload["mixtures"][3]["threshold"] = bad.payload["mixtures"][3]["threshold"].get<double>() - 5;
    CHECK_FALSE(verify_certificate_file(bad).ok);
  }
}

TEST_CASE("oracle result certificate") {
  const auto sq = PointSet(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  OracleRecord yes{LabeledPointSet(sq, 0b1001), realizable_by_ellipsoid(LabeledPointSet(sq, 0b1001))};
  REQUIRE(is_realizable(yes.result));
  CertificateFile f{kCertificateSchema, CertificateKind::OracleResult, 0, {}, to_json(yes)};
  auto g = round_trip(f);
  CHECK(emit_json(to_json(g)) == emit_json(to_json(f)));
  CHECK(verify_certificate_file(g).ok);
  auto bad = g;
  bad.payload["labels"] = 0b0110;
  CHECK_FALSE(verify_certificate_file(bad).ok);

  const auto l = line({0, 1, 2});
  OracleRecord no{LabeledPointSet(l, 0b101), realizable_by_ellipsoid(LabeledPointSet(l, 0b101))};
  REQUIRE_FALSE(is_realizable(no.result));
  f.payload = to_json(no);
  g = round_trip(f);
  CHECK(verify_certificate_file(g).ok);
  CHECK_FALSE(g.payload["realizable"].get<bool>());
}

TEST_CASE("certificate header checks") {
  CertificateFile f;
  f.payload = json::object();
  json j = to_json(f);
  j["schema"] = "other/9";
  CHECK_THROWS_AS(certificate_from_json(j), InvalidInput);
  j = to_json(f);
  j["kind"] = "nonsense";
  CHECK_THROWS_AS(certificate_from_json(j), InvalidInput);
  j = to_json(f);
  j.erase("tolerances");
  CHECK_THROWS_AS(certificate_from_json(j), InvalidInput);

  Tolerances t;
  t.feasibility = 3e-8;
  t.max_cuts = 17;
  const auto back = tolerances_from_json(parse_json(emit_json(to_json(t))));
  CHECK(back.feasibility == t.feasibility);
  CHECK(back.max_cuts == 17);
}

TEST_CASE("shatter table csv") {
  const auto rows = shatter_table(line({0, 1, 2}), interval_oracle());
  CHECK(shatter_table_csv(rows) == "size,realizable,total\n0,1,1\n1,3,3\n2,2,3\n3,1,1\n");
  const auto full = shatter_table(line({-1, 1}), interval_oracle());
  CHECK(shatter_table_csv(full) == "size,realizable,total\n0,1,1\n1,2,2\n2,1,1\n");
}
