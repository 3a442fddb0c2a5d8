#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "catalog.hpp"
#include "cli.hpp"
#include "hyperglue/symmetry.hpp"
#include "reference.hpp"

using namespace hyperglue;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json value() const { return json::parse(out); }
  json error() const { return json::parse(err)["error"]; }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperglue");
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const char* base = std::getenv("HYPERGLUE_TEST_TMP");
  const auto dir = std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) / "cli_tmp";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

// Quintic search: eight equivariant systems, cheap to analyse.
std::filesystem::path quintic_catalog(const std::string& name) {
  const auto path = scratch(name);
  const Outcome r = run({"search", "--mode", "full", "--n", "5", "--no-free", "--catalog", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  return path;
}

}  // namespace

TEST(Cli, UsageErrors) {
  Outcome r = run({"frobnicate"});
  EXPECT_EQ(r.code, cli::usage_error);
  EXPECT_EQ(r.error()["kind"], "unknown_subcommand");
  EXPECT_EQ(r.error()["exit_code"], 2);
  EXPECT_EQ(run({"polytope", "--bogus"}).code, cli::usage_error);
  EXPECT_EQ(run({}).code, cli::usage_error);
  EXPECT_EQ(run({"polytope", "--n", "3"}).code, cli::usage_error);
  EXPECT_EQ(run({"volume", "--n", "5"}).code, cli::usage_error);
  EXPECT_EQ(run({"search", "--mode", "sideways"}).code, cli::usage_error);
  EXPECT_EQ(run({"search", "--n", "5", "--forbid", "64"}).code, cli::usage_error);
  EXPECT_EQ(run({"homology"}).code, cli::usage_error);
}

TEST(Cli, MalformedCodes) {
  for (const std::string bad : {"abc", "GW8dNEEdN4ZJO1k2l1PI", "GW8dNEEdN4ZJO1k2l1PI*", "GW8dNEEdN4ZJO1k2l1P-Y"}) {
    const Outcome r = run({"verify", bad});
    EXPECT_EQ(r.code, cli::malformed_code) << bad;
    EXPECT_EQ(r.error()["kind"], "malformed_code") << bad;
  }
  EXPECT_EQ(run({"search", "--mode", "seed", "--seed", "GW8dNEEdN4ZJO1k2l1PIY"}).code, cli::malformed_code);
}

TEST(Cli, MissingFiles) {
  EXPECT_EQ(run({"--sigma", "/nonexistent/sigma.txt", "verify", "8G4JB77JB21"}).code, cli::missing_file);
  EXPECT_EQ(run({"report", "--catalog", "/nonexistent/catalog.json"}).code, cli::missing_file);
  EXPECT_EQ(run({"--config", "/nonexistent/config.json", "volume"}).code, cli::missing_file);
}

TEST(Cli, Version) {
  const Outcome r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(cli::tool_version) + "\n");
}

TEST(Cli, Polytope) {
  const json j = run({"polytope", "--n", "6"}).value();
  EXPECT_EQ(j["sides"], 27);
  EXPECT_EQ(j["tiles"], 64);
  EXPECT_EQ(j["tile_block_sides"], 252);
  EXPECT_EQ(run({"polytope", "--n", "5"}).value()["tile_block_sides"], 72);
}

TEST(Cli, VolumeConstants) {
  const json j = run({"volume", "--n", "6", "--tiles", "8"}).value();
  EXPECT_EQ(j["simplex_covolume"]["coefficient"], "1/777600");
  EXPECT_EQ(j["polytope_volume"]["siegel"]["coefficient"], "1/15");
  EXPECT_EQ(j["polytope_volume"]["routes_agree"], true);
  EXPECT_EQ(j["manifold"]["volume"]["coefficient"], "8/15");
  EXPECT_EQ(j["manifold"]["subgroup_index"], "414720");
  EXPECT_EQ(run({"euler", "--n", "6"}).value()["reciprocal"], "-414720");
}

TEST(Cli, EulerOfADiagramFile) {
  const auto p = scratch("a2.txt");
  write(p, "2\n1 2 3\n");
  const Outcome r = run({"euler", "--diagram", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.value()["euler_characteristic"], "1/6");
}

TEST(Cli, VerifyRejectsTheIdentityGluing) {
  const Outcome r = run({"verify", std::string(21, '0')});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.value();
  EXPECT_EQ(j["verdict"], "NOT PROPER");
  bool side = false;
  for (const auto& f : j["failures"]) side |= f["kind"] == "side";
  EXPECT_TRUE(side);
}

TEST(Cli, SigmaFromFile) {
  const auto p = scratch("sigma5.txt");
  std::ostringstream rows;
  const LorentzMatrix& s = builtin_sigma(5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < s.size(); ++k) rows << s(i, k) << ' ';
    rows << '\n';
  }
  write(p, rows.str());
  const Outcome r = run({"--sigma", p.string(), "verify", testkit::reference_seed});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.value();
  EXPECT_EQ(j["sigma"]["id"].get<std::string>().rfind("file:", 0), 0u);
  EXPECT_EQ(j["equivariant"], true);
  EXPECT_EQ(j["induced_order"], 8);

  write(p, "1 2\n3 4\n");
  EXPECT_EQ(run({"--sigma", p.string(), "verify", testkit::reference_seed}).code, cli::usage_error);
}

TEST(Cli, ConfigAndEnvironment) {
  const auto cfg = scratch("cfg.json");
  write(cfg, R"({"threads": 2, "colour": "blue"})");
  Outcome r = run({"--config", cfg.string(), "volume"});
  EXPECT_EQ(r.code, cli::usage_error);
  EXPECT_NE(r.error()["message"].get<std::string>().find("colour"), std::string::npos);
  write(cfg, "{not json");
  EXPECT_EQ(run({"--config", cfg.string(), "volume"}).code, cli::usage_error);
  write(cfg, R"({"threads": 2, "sigma": "none"})");
  r = run({"--config", cfg.string(), "verify", testkit::reference_seed});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.value()["sigma_id"], "none");

  ::setenv("HYPERGLUE_THREADS", "zero", 1);
  EXPECT_EQ(run({"verify", testkit::reference_seed}).code, cli::usage_error);
  EXPECT_EQ(run({"--threads", "1", "verify", testkit::reference_seed}).code, 0);
  ::setenv("HYPERGLUE_THREADS", "2", 1);
  EXPECT_EQ(run({"verify", testkit::reference_seed}).code, 0);
  ::unsetenv("HYPERGLUE_THREADS");
}

TEST(Cli, BudgetExhaustedAndResume) {
  const auto ck = scratch("ck.json");
  Outcome r = run({"search", "--n", "5", "--no-free", "--max-nodes", "200", "--checkpoint", ck.string()});
  EXPECT_EQ(r.code, cli::budget_exhausted);
  EXPECT_EQ(r.value()["complete"], false);
  r = run({"search", "--n", "5", "--no-free", "--checkpoint", ck.string(), "--resume"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.value()["count"], 8);
  EXPECT_EQ(run({"search", "--n", "5", "--checkpoint", ck.string(), "--resume"}).code, cli::runtime_failure);
}

TEST(Cli, HomologyRowAndSnfCheck) {
  Outcome r = run({"homology", testkit::reference_seed});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.value()["table_row"], "1110 1210 2100 1000");
  r = run({"homology", "--snf-check", "50", "--snf-seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.value()["agree"], 50);
  EXPECT_EQ(run({"homology", "00000000000"}).code, cli::runtime_failure);
}

TEST(Catalog, WriteReadReport) {
  const auto path = quintic_catalog("q5.json");
  const cli::Catalog c = cli::read_catalog(path.string());
  ASSERT_EQ(c.entries.size(), 8u);
  for (std::size_t i = 1; i < c.entries.size(); ++i)
    EXPECT_LT(c.entries[i - 1]["code"].get<std::string>(), c.entries[i]["code"].get<std::string>());
  EXPECT_EQ(cli::serialize(cli::deserialize(cli::serialize(c))), cli::serialize(c));

  Outcome r = run({"report", "--catalog", path.string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rows = r.value()["entries"];
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0]["code"], "8G4JB77JB21");
  EXPECT_EQ(rows[0]["cusps"], 2);

  r = run({"report", "--catalog", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("8G4JB77JB21"), std::string::npos);
  EXPECT_NE(r.out.find("1110 1210 2100 1000"), std::string::npos);

  // A second run adds nothing.
  r = run({"search", "--mode", "full", "--n", "5", "--no-free", "--catalog", path.string()});
  EXPECT_EQ(r.value()["catalog"]["added"], 0);
}

TEST(Catalog, EmptyRoundTrip) {
  const cli::Catalog empty;
  const cli::Catalog back = cli::deserialize(cli::serialize(empty));
  EXPECT_TRUE(back.entries.empty());
  const auto p = scratch("empty.json");
  cli::write_catalog(p.string(), empty);
  EXPECT_TRUE(cli::read_catalog(p.string()).entries.empty());
  EXPECT_EQ(run({"report", "--catalog", p.string(), "--json"}).value()["entries"].size(), 0u);
}

TEST(Catalog, CorruptionIsDetected) {
  const auto path = quintic_catalog("corrupt.json");
  std::string text = slurp(path);
  const auto at = text.find("\"cusps\": 2");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 10, "\"cusps\": 3");
  write(path, text);
  EXPECT_THROW(cli::read_catalog(path.string()), cli::CatalogError);
  EXPECT_EQ(run({"report", "--catalog", path.string()}).code, cli::catalog_corrupt);

  write(path, "{\"schema_version\": 1");
  EXPECT_EQ(run({"report", "--catalog", path.string()}).code, cli::catalog_corrupt);
  write(path, R"({"schema_version": 99, "entries": [], "checksum": ""})");
  EXPECT_EQ(run({"report", "--catalog", path.string()}).code, cli::catalog_corrupt);
  EXPECT_EQ(run({"search", "--n", "5", "--no-free", "--catalog", path.string()}).code, cli::catalog_corrupt);
}

TEST(Catalog, ByteIdenticalApartFromTimestamps) {
  auto strip = [](std::string text) {
    json j = json::parse(text);
    for (auto& e : j["entries"]) e["provenance"].erase("created_at");
    j.erase("checksum");
    return j.dump();
  };
  const auto a = quintic_catalog("a.json");
  const auto b = quintic_catalog("b.json");
  EXPECT_EQ(strip(slurp(a)), strip(slurp(b)));
}
