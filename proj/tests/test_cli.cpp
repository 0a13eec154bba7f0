#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtregge/cli.hpp"

using namespace dtregge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dtregge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { ::unsetenv("DTREGGE_CACHE_DIR"); }
};

fs::path temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("dtregge_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_F(Cli, PairingAnchorsPass) {
  auto r = run({"pairing", "--genus", "0", "--vertices", "4", "--q", "3,3,3,3"});
  EXPECT_EQ(r.code, kExitPass);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["results"]["lhs"], "36");
  EXPECT_EQ(j["results"]["rhs"], "36");
  EXPECT_FALSE(j.contains("timings"));
}

TEST_F(Cli, PairingMismatchIsACheckFailure) {
  auto r = run({"pairing", "--genus", "0", "--vertices", "4", "--q", "2,2,4,4"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["results"]["diagnostics"]["all_cells_lhs"], "40");
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run({"enumerate", "--genus", "0", "--vertices", "4", "--q", "2,2,2,2"}).code, kExitInputError);
  EXPECT_EQ(run({"enumerate", "--genus", "0", "--q", "x"}).code, kExitInputError);
  EXPECT_EQ(run({"check", "nonsense"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"dual", "--in", "/nonexistent/file.json"}).code, kExitInputError);
  EXPECT_EQ(run({"tau", "--genus", "2", "--exponents", "4"}).code, kExitInputError);
}

TEST_F(Cli, ResourceCap) {
  EXPECT_EQ(run({"enumerate", "--genus", "0", "--vertices", "8", "--q", "3,3,3,3,6,6,6,6", "--max-faces", "8"}).code,
            kExitResourceCap);
}

TEST_F(Cli, TauAndF) {
  auto r = run({"tau", "--genus", "1", "--exponents", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["results"]["value"], "1/24");
  r = run({"tau", "--genus", "2", "--exponents", "4", "--enable-dvv"});
  EXPECT_EQ(json::parse(r.out)["results"]["value"], "1/1152");
  r = run({"tau", "--genus", "1", "--q", "6"});
  EXPECT_EQ(json::parse(r.out)["results"]["F"], "3/2");
}

TEST_F(Cli, ChecksOnEnumeratedCatalog) {
  auto r = run({"enumerate", "--genus", "1", "--vertices", "2", "--q", "4,8"});
  ASSERT_EQ(r.code, 0);
  auto path = temp_file("cat.json", json::parse(r.out)["results"].dump());
  EXPECT_EQ(run({"check", "gauss-bonnet", "--in", path.string()}).code, 0);
  EXPECT_EQ(run({"check", "kontsevich", "--in", path.string()}).code, 0);
  auto v = run({"volume", "--in", path.string()});
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(json::parse(v.out)["results"]["entries"].empty());
  fs::remove(path);
}

TEST_F(Cli, DualOfTriangulation) {
  auto path = temp_file("tet.json", to_json(examples::tetrahedron()).dump());
  auto r = run({"dual", "--in", path.string()});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out)["results"];
  EXPECT_EQ(j["genus"], 0);
  EXPECT_EQ(j["q"], json({3, 3, 3, 3}));
  fs::remove(path);
}

TEST_F(Cli, MedianAndRank) {
  EXPECT_EQ(run({"check", "median"}).code, 0);
  EXPECT_EQ(run({"check", "rank", "--q", "3,4,5,6,7,8"}).code, 0);
  auto bad = temp_file("fan.json", R"({"spokes_sq": [1, 1, 1], "links_sq": [4, 1, 1]})");
  EXPECT_EQ(run({"check", "median", "--in", bad.string()}).code, kExitInputError);
  fs::remove(bad);
}

TEST_F(Cli, SavedEnumerationReportFeedsChecks) {
  auto path = temp_file("report.json", run({"enumerate", "--genus", "0", "--vertices", "4", "--q", "3,3,3,3"}).out);
  EXPECT_EQ(run({"check", "gauss-bonnet", "--in", path.string()}).code, kExitPass);
  EXPECT_EQ(run({"check", "kontsevich", "--in", path.string()}).code, kExitPass);
  EXPECT_EQ(run({"volume", "--in", path.string()}).code, kExitPass);
}

TEST_F(Cli, GlobalOptionsAfterSubcommand) {
  auto out = std::filesystem::temp_directory_path() / "dtregge_after.json";
  EXPECT_EQ(run({"tau", "--genus", "1", "--exponents", "1", "--out", out.string()}).code, kExitPass);
  EXPECT_EQ(read_json_file(out.string())["results"]["value"], "1/24");
}

TEST_F(Cli, OutFileAndTimings) {
  fs::path out = fs::temp_directory_path() / ("dtregge_cli_out_" + std::to_string(::getpid()) + ".json");
  auto r = run({"--timings", "--out", out.string(), "tau", "--genus", "0", "--exponents", "0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  auto j = read_json_file(out);
  EXPECT_TRUE(j.contains("timings"));
  fs::remove(out);
}

TEST_F(Cli, CacheCommands) {
  EXPECT_EQ(run({"cache", "ls"}).code, kExitInputError);
  fs::path dir = fs::temp_directory_path() / ("dtregge_cli_cache_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("DTREGGE_CACHE_DIR", dir.c_str(), 1);
  EXPECT_EQ(run({"enumerate", "--genus", "0", "--vertices", "3", "--q", "2,2,2"}).code, 0);
  auto r = run({"cache", "verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["results"]["files"].size(), 1u);
  ::unsetenv("DTREGGE_CACHE_DIR");
  fs::remove_all(dir);
}
