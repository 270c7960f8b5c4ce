#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "report.hpp"

namespace quadhess::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "quadhess");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    previous_ = fs::current_path();
    fs::current_path(QUADHESS_FIXTURE_DIR);
    scratch_ = fs::temp_directory_path() /
               ("quadhess_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(scratch_);
  }
  void TearDown() override {
    fs::current_path(previous_);
    fs::remove_all(scratch_);
  }

  std::string scratch(const std::string& name) const { return (scratch_ / name).string(); }

  static std::string golden(const std::string& name) {
    return slurp(fs::path(QUADHESS_GOLDEN_DIR) / name);
  }

 private:
  fs::path previous_;
  fs::path scratch_;
};

TEST_F(Cli, VerifyCircleGolden) {
  const auto r = invoke({"verify", "--q", "circle.json", "--point", "3/5", "--branch", "plus",
                         "--mode", "exact"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, golden("verify_circle_exact.txt"));
}

TEST_F(Cli, VerifySphereGolden) {
  const auto r = invoke({"verify", "--q", "sphere.json", "--point", "0,0", "--branch", "minus",
                         "--mode", "exact"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, golden("verify_sphere_exact.txt"));
}

TEST_F(Cli, VerifyParaboloidGolden) {
  const auto r = invoke({"verify", "--q", "paraboloid.json", "--point", "1,1", "--mode", "float"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, golden("verify_paraboloid_float.txt"));
}

TEST_F(Cli, CheckpointGoldens) {
  const std::pair<const char*, const char*> cases[] = {
      {"circle", "0"}, {"sphere", "0,0"}, {"paraboloid", "1,1"}};
  for (const auto& [name, point] : cases) {
    const auto r = invoke({"checkpoints", "--q", std::string(name) + ".json", "--point", point});
    EXPECT_EQ(r.code, kExitOk) << name;
    EXPECT_EQ(r.out, golden(std::string("checkpoints_") + name + ".txt")) << name;
  }
}

TEST_F(Cli, SingularAKeepsExitZero) {
  const auto r = invoke({"checkpoints", "--q", "singular_a.json", "--point", "1,2"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("  xi: undefined (singular"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyJsonGolden) {
  const std::string path = scratch("circle.json");
  const auto r = invoke({"verify", "--q", "circle.json", "--point", "3/5", "--json", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(slurp(path), golden("verify_circle_exact.json"));
}

TEST_F(Cli, SkippedExitCode) {
  const auto r = invoke({"verify", "--q", "circle.json", "--point", "2", "--mode", "exact"});
  EXPECT_EQ(r.code, kExitSkipped);
  EXPECT_NE(r.out.find("status: skipped"), std::string::npos);
  EXPECT_NE(r.out.find("reason: no-real-solution"), std::string::npos);
}

TEST_F(Cli, FailedExitCode) {
  // An absurdly tight tolerance turns rounding noise into failures.
  const auto r = invoke({"sample", "--n", "3", "--trials", "5", "--seed", "1", "--mode", "float",
                         "--tol", "1e-300"});
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_EQ(r.out.find("failed: 0\n"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"verify", "--point", "0"},
      {"verify", "--q", "circle.json", "--point", "0", "--mode", "quad"},
      {"verify", "--q", "circle.json", "--point", "0", "--branch", "up"},
      {"verify", "--q", "missing.json", "--point", "0"},
      {"verify", "--q", "circle.json", "--point", "0.6", "--mode", "exact"},
      {"verify", "--q", "circle.json", "--point", "3/5", "--mode", "float"},
      {"verify", "--q", "sphere.json", "--point", "3/5,0.5", "--mode", "float"},
      {"verify", "--q", "sphere.json", "--point", "3/5,0.5", "--mode", "exact"},
      {"verify", "--q", "sphere.json", "--point", "0"},
      {"checkpoints", "--q", "circle.json", "--point", "0", "--mode", "float"},
      {"sample", "--n", "0", "--trials", "1", "--seed", "1"},
      {"bench", "--n-list", "2,x"},
  };
  for (const auto& args : cases) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(invoke(args).code, kExitUsage) << joined;
  }
}

TEST_F(Cli, ComplexPointSyntax) {
  const auto r = invoke({"verify", "--q", "circle.json", "--point", "[2, 0.5]", "--mode", "complex",
                         "--tol", "1e-6"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("mode: complex"), std::string::npos);
}

TEST_F(Cli, SampleExactSweep) {
  const auto r = invoke({"sample", "--n", "2", "--trials", "1000", "--seed", "7", "--mode", "exact"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("failed: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("max_discrepancy: 0\n"), std::string::npos);
}

TEST_F(Cli, SampleFloatWithinTolerance) {
  const std::string path = scratch("float.json");
  const auto r = invoke({"sample", "--n", "3", "--trials", "100", "--seed", "7", "--mode", "float",
                         "--json", path});
  EXPECT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(slurp(path));
  ASSERT_EQ(doc["records"].size(), 200u);
  for (const auto& rec : doc["records"]) {
    ASSERT_EQ(rec["status"], "verified");
    const double rhs = rec["rhs"].get<double>();
    ASSERT_LE(rec["discrepancy"].get<double>(), 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_F(Cli, SampleDeterministicAcrossRunsAndThreads) {
  const std::string a = scratch("a.json");
  const std::string b = scratch("b.json");
  const std::string c = scratch("c.json");
  const std::vector<std::string> base = {"sample", "--n", "3", "--trials", "50", "--seed", "11",
                                         "--mode", "float", "--json"};
  auto with = [&](const std::string& path) {
    auto args = base;
    args.push_back(path);
    return args;
  };
  ::setenv("QUADHESS_THREADS", "1", 1);
  const auto ra = invoke(with(a));
  ::setenv("QUADHESS_THREADS", "4", 1);
  const auto rb = invoke(with(b));
  const auto rc = invoke(with(c));
  ::unsetenv("QUADHESS_THREADS");
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(rb.out, rc.out);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(b), slurp(c));
}

TEST_F(Cli, ReportRoundTrip) {
  const std::string path = scratch("mixed.json");
  const auto r = invoke({"sample", "--n", "1", "--trials", "40", "--seed", "3", "--mode", "exact",
                         "--json", path});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(slurp(path));
  const Summary recount = summarize_records(doc);
  EXPECT_EQ(recount.verified, doc["summary"]["verified"].get<std::size_t>());
  EXPECT_EQ(recount.skipped, doc["summary"]["skipped"].get<std::size_t>());
  EXPECT_EQ(recount.failed, doc["summary"]["failed"].get<std::size_t>());
  std::ostringstream printed;
  printed << "verified: " << recount.verified << "\nskipped: " << recount.skipped
          << "\nfailed: " << recount.failed << "\n";
  EXPECT_NE(r.out.find(printed.str()), std::string::npos) << r.out;

  const std::string skipped = scratch("skipped.json");
  ASSERT_EQ(invoke({"verify", "--q", "circle.json", "--point", "2", "--json", skipped}).code,
            kExitSkipped);
  EXPECT_EQ(summarize_records(nlohmann::json::parse(slurp(skipped))), (Summary{0, 1, 0}));
}

TEST_F(Cli, BadThreadCountIsUsageError) {
  ::setenv("QUADHESS_THREADS", "zero", 1);
  const auto r = invoke({"sample", "--n", "1", "--trials", "2", "--seed", "1"});
  ::unsetenv("QUADHESS_THREADS");
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(Cli, BenchShapeAndAgreement) {
  const std::string path = scratch("bench.csv");
  const auto r = invoke({"bench", "--n-list", "2,4,8", "--reps", "100", "--csv", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream csv(slurp(path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,method,mean_ns,max_abs_discrepancy");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const double discrepancy = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LE(discrepancy, 1e-4) << line;
  }
  EXPECT_EQ(rows, 6);
  for (const char* n : {"2", "4", "8"}) {
    const std::string marker = std::string("root_evaluations n=") + n + " closed_form=1 finite_difference=";
    const auto at = r.out.find(marker);
    ASSERT_NE(at, std::string::npos);
    EXPECT_GT(std::stoul(r.out.substr(at + marker.size())), 1u);
  }
}

}  // namespace
}  // namespace quadhess::cli
