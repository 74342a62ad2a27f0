#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "qrand/ensemble_io.hpp"
#include "qrand/errors.hpp"
#include "qrand/xcli.hpp"

using namespace qrand;

namespace {

std::filesystem::path scratch(const std::string& name)
{
  const auto dir = std::filesystem::temp_directory_path() / "qrand_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string read_all(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("Haar ensembles round-trip bit-exactly")
{
  const UnitaryEnsemble e = build_ensemble(8, 4, EnsembleKind::haar, SeededStream(5, {3}));
  const auto path = scratch("haar.qre");
  save_ensemble(e, path);
  const std::string bytes = read_all(path);
  CHECK(bytes.rfind("QRE1 {\"dim\":8,\"n\":4,\"kind\":\"haar\",\"seed\":5,\"materialized\":true", 0) == 0);
  const std::size_t header = bytes.find('\n') + 1;
  CHECK(bytes.size() - header == 4u * 64u * 16u);

  const UnitaryEnsemble back = load_ensemble(path);
  CHECK(back.kind() == EnsembleKind::haar);
  for (Index j = 0; j < 4; ++j) CHECK(back.member(j) == e.member(j));

  // First entry, little-endian real part.
  double re = 0.0;
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[header + b]);
  std::memcpy(&re, &bits, sizeof re);
  CHECK(re == e.member(0)(0, 0).real());
}

TEST_CASE("header-only Pauli ensembles regenerate the same members")
{
  const UnitaryEnsemble e = build_ensemble(8, 6, EnsembleKind::pauli, SeededStream(11));
  const auto lazy = scratch("pauli_lazy.qre");
  const auto dense = scratch("pauli_dense.qre");
  save_ensemble(e, lazy, false);
  save_ensemble(e, dense, true);
  CHECK(read_all(lazy).size() < 100);
  const UnitaryEnsemble a = load_ensemble(lazy);
  const UnitaryEnsemble b = load_ensemble(dense);
  for (Index j = 0; j < 6; ++j) {
    CHECK(a.member(j) == e.member(j));
    CHECK(b.member(j) == e.member(j));
  }
}

TEST_CASE("explicit ensembles are always written in full")
{
  const UnitaryEnsemble e = UnitaryEnsemble::from_members({ComplexMatrix::Identity(3, 3), fourier_matrix(3)});
  const auto path = scratch("explicit.qre");
  save_ensemble(e, path, false);
  const std::string bytes = read_all(path);
  CHECK(bytes.find("\"seed\":null") != std::string::npos);
  CHECK(load_ensemble(path).member(1) == fourier_matrix(3));
}

TEST_CASE("corrupted ensemble files are rejected")
{
  const UnitaryEnsemble e = build_ensemble(2, 2, EnsembleKind::haar, SeededStream(1));
  const auto path = scratch("corrupt.qre");
  save_ensemble(e, path);
  std::string bytes = read_all(path);

  auto write = [&](const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
  };
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  write(bad_magic);
  CHECK_THROWS_AS(load_ensemble(path), FormatError);

  write(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(load_ensemble(path), FormatError);

  // Scale one entry so the member is no longer unitary.
  std::string scaled = bytes;
  const std::size_t header = bytes.find('\n') + 1;
  scaled[header + 7] = static_cast<char>(0x40);  // exponent of the first real part
  write(scaled);
  CHECK_THROWS_AS(load_ensemble(path), FormatError);
}

TEST_CASE("usage errors name the failing key")
{
  ExperimentConfig config{"hide", {{"d", "4"}}, ""};
  try {
    run(config);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(e.key() == "p");
  }
  config.params = {{"d", "4"}, {"p", "2"}, {"n", "x"}};
  try {
    run(config);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(e.key() == "n");
  }
  CHECK_THROWS_AS(run({"hide", {{"d", "4"}, {"p", "2"}, {"n", "2"}, {"bogus", "1"}}, ""}), UsageError);
  CHECK_THROWS_AS(run({"teleport", {}, ""}), UsageError);
}

TEST_CASE("guard trips become structured report errors")
{
  const ExperimentReport r = run({"randomize", {{"d", "6"}, {"n", "4"}, {"kind", "pauli"}}, ""});
  REQUIRE(r.error.has_value());
  CHECK(r.error->find("power of 2") != std::string::npos);
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("pqc on the exact Weyl channel")
{
  const ExperimentReport r = run({"pqc", {{"d", "3"}, {"kind", "weyl"}}, ""});
  CHECK(r.all_passed());
  CHECK(r.flag("weyl_chi_zero"));
  CHECK(r.statistic("chi") < 1e-12);
}

TEST_CASE("reports are written atomically and deterministic")
{
  const auto prefix = scratch("report").string();
  const ExperimentConfig config{"randomize", {{"d", "8"}, {"n", "32"}, {"states", "20"}, {"seed", "7"}}, prefix};
  const ExperimentReport a = run(config);
  const ExperimentReport b = run(config);
  CHECK(a.statistics_json() == b.statistics_json());

  const auto doc = nlohmann::json::parse(read_all(prefix + ".json"));
  CHECK(doc["command"] == "randomize");
  CHECK(doc["config"]["seed"] == "7");
  CHECK(doc["statistics"].contains("epsilon_emp"));
  CHECK_FALSE(std::filesystem::exists(prefix + ".json.tmp"));

  const std::string csv = read_all(prefix + ".csv");
  CHECK(csv.rfind("state,deviation\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 21);
  // 17 significant digits.
  const std::string first = csv.substr(csv.find(',', 16) + 1, csv.find('\n', 16) - csv.find(',', 16) - 1);
  CHECK(std::stod(first) == a.rows[0][1]);
}

TEST_CASE("ensembles saved by one run are reused by another")
{
  const auto path = scratch("reuse.qre").string();
  const ExperimentReport a =
      run({"randomize", {{"d", "4"}, {"n", "10"}, {"states", "5"}, {"save-ensemble", path}}, ""});
  const ExperimentReport b = run({"randomize", {{"load-ensemble", path}, {"states", "5"}}, ""});
  CHECK(a.statistic("epsilon_emp") == b.statistic("epsilon_emp"));
}

TEST_CASE("every command runs at a small scale")
{
  const std::vector<ExperimentConfig> configs{
      {"hide", {{"d", "3"}, {"p", "2"}, {"n", "3"}, {"trials", "4"}, {"povms", "2"}}, ""},
      {"lock", {{"d", "4"}, {"restarts", "3"}, {"iterations", "50"}}, ""},
      {"lock", {{"d", "4"}, {"kind", "weyl"}, {"n", "3"}, {"restarts", "2"}, {"iterations", "20"}}, ""},
      {"uncertainty", {{"d", "8"}, {"samples", "500"}, {"lipschitz", "50"}, {"tol", "0.1"}}, ""},
      {"bounds", {{"d", "4"}, {"n", "16"}, {"draws", "3"}, {"states", "3"}}, ""},
      {"net", {{"d", "1"}, {"audit", "10"}, {"streak", "10"}}, ""},
  };
  for (const auto& config : configs) {
    const ExperimentReport r = run(config);
    CAPTURE(config.command);
    CHECK_FALSE(r.error.has_value());
    CHECK(r.all_passed());
  }
}
