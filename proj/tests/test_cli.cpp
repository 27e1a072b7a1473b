#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssprk_cli.hpp"

using ssprk::cli::dispatch;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string value_of(const std::string& text, const std::string& key) {
  for (const auto& l : lines(text))
    if (l.rfind(key + " ", 0) == 0) return l.substr(key.size() + 1);
  return {};
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(dispatch({}).exit_code, 2);
  EXPECT_EQ(dispatch({"nonsense"}).exit_code, 2);
  EXPECT_EQ(dispatch({"--help"}).exit_code, 0);
  EXPECT_EQ(dispatch({"table1", "--format", "xml"}).exit_code, 2);
  const auto unknown = dispatch({"ssp-coefficient", "rk4"});
  EXPECT_EQ(unknown.exit_code, 1);
  EXPECT_EQ(unknown.err.rfind("error: UnknownMethod:", 0), 0u) << unknown.err;
  const auto general = dispatch({"bl-sweep", "--method", "ssp53_2", "--dt-min", "0.02"});
  EXPECT_EQ(general.exit_code, 1);
}

TEST(Cli, CatalogListCsv) {
  const auto r = dispatch({"catalog", "list", "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "id,s,p,ref_ssp,storage");
  EXPECT_EQ(ls.size(), 12u);
}

TEST(Cli, ExportRoundTripsThroughFile) {
  const auto exported = dispatch({"catalog", "export", "ssp53_h"});
  ASSERT_EQ(exported.exit_code, 0);
  const auto j = nlohmann::json::parse(exported.out);
  EXPECT_EQ(j.at("s").get<int>(), 5);
  const auto path = std::filesystem::temp_directory_path() / "ssprk_cli_test_h.json";
  std::ofstream(path) << exported.out;
  const auto from_file = dispatch({"classify", path.string()});
  EXPECT_EQ(from_file.exit_code, 0);
  EXPECT_EQ(value_of(from_file.out, "class"), "ThreeN_B");
  std::filesystem::remove(path);
}

TEST(Cli, SspCoefficientOfW2) {
  const auto r = dispatch({"ssp-coefficient", "ssp53_w2"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(std::stod(value_of(r.out, "R")), 1.40154693827206, 1e-9);
  EXPECT_EQ(value_of(r.out, "certificate.holds"), "true");
}

TEST(Cli, ClassifyGeneralListsNonzeroEntries) {
  const auto r = dispatch({"classify", "ssp53_2"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(value_of(r.out, "class"), "General");
  EXPECT_EQ(value_of(r.out, "nonzero"), "lambda52 lambda63");
}

TEST(Cli, StabilityRealInterval) {
  const auto r = dispatch({"stability", "ssp33", "--real-interval"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(std::stod(r.out), -2.5127453266, 1e-9);
}

TEST(Cli, CanonicalizeIsSparse) {
  const auto r = dispatch({"canonicalize", "ssp43"});
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto g = j.at("shu_osher").at("Gamma");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = 0; k + 1 < i; ++k) EXPECT_EQ(g[i][k].get<double>(), 0.0);
}

TEST(Cli, Table1Csv) {
  const auto r = dispatch({"table1", "--format", "csv", "--parallel"});
  ASSERT_EQ(r.exit_code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);
  EXPECT_EQ(ls[0], "method,stages,order,ssp_coefficient,observed,error_constant,registers");
  EXPECT_EQ(ls[7], "SSP43,4,3,2,2.04,3.60844e-02,2N*");
  EXPECT_EQ(r.out, dispatch({"table1", "--format", "csv"}).out);
}

TEST(Cli, OptimizeIsDeterministic) {
  const std::vector<std::string> args{"optimize", "--variant", "constrained", "--seeds", "8", "--rtol", "1e-4"};
  const auto a = dispatch(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, dispatch(args).out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("certificate").at("storage").get<std::string>(), "TwoNStar");
  EXPECT_GT(j.at("certificate").at("certified_r").get<double>(), 2.0);
}

TEST(Cli, SweepWritesUnderOutputDir) {
  const auto dir = std::filesystem::temp_directory_path() / "ssprk_cli_out";
  std::filesystem::create_directories(dir);
  ::setenv("SSPRK_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = dispatch({"bl-sweep", "--method", "ssp43", "--dt-min", "0.004", "--dt-max", "0.006", "--dt-step",
                           "0.001", "--out", "sweep.csv"});
  ::unsetenv("SSPRK_OUTPUT_DIR");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::ifstream in(dir / "sweep.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "dt,mu");
  std::filesystem::remove_all(dir);
}
