#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <set>

#include "hotelauction/forward/instance_gen.hpp"
#include "hotelauction/forward/lp_export.hpp"
#include "hotelauction/forward/solvers.hpp"
#include "support/fixtures.hpp"

using namespace hotelauction;
using namespace hotelauction::forward;
using hotelauction::testing::make_bid;
using hotelauction::testing::three_bid_instance;
using hotelauction::testing::single_type_auction;
using hotelauction::testing::ymd;

namespace {

bool declares(const std::string& body, const std::string& name) {
  std::istringstream tokens(body);
  for (std::string t; tokens >> t;)
    if (t == name) return true;
  return false;
}

std::string section(const std::string& lp, const std::string& name) {
  const auto start = lp.find("\n" + name + "\n");
  if (start == std::string::npos) return {};
  const auto body = start + name.size() + 2;
  const std::regex next("\n(Subject To|Bounds|Binaries|Generals|End)\n");
  std::smatch m;
  const std::string rest = lp.substr(body - 1);
  if (!std::regex_search(rest, m, next)) return rest;
  return rest.substr(0, static_cast<std::size_t>(m.position(0)) + 1);
}

// Runs the HiGHS helper on each file; empty result when highspy is missing.
std::vector<std::string> external_optima(const std::vector<std::string>& files) {
  std::string cmd = "python3 " HOTELAUCTION_LP_CHECK;
  for (const auto& f : files) cmd += " '" + f + "'";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::vector<std::string> out;
  char line[256];
  while (fgets(line, sizeof line, pipe) != nullptr) {
    std::string s(line);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    out.push_back(s);
  }
  const int status = pclose(pipe);
  if (status != 0) return {};
  return out;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hotelauction_lp_test_" + name + ".lp");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(ExportLp, EmptyModel) {
  const auto model = build_model(single_type_auction(ymd(2023, 6, 1), 3, 2, Money::from_euros(50)), {},
                                 ObjectiveMode::Income);
  const auto lp = export_lp(model);
  EXPECT_NE(lp.find("obj: 0\n"), std::string::npos);
  EXPECT_EQ(lp.find("Binaries"), std::string::npos);
  EXPECT_NE(lp.find("\nEnd\n"), std::string::npos);
}

TEST(ExportLp, DeclaresEveryVariableFamily) {
  const auto inst = three_bid_instance();
  const auto model = build_model(inst.auction, inst.bids, ObjectiveMode::Income);
  const auto lp = export_lp(model);
  EXPECT_NE(lp.find("obj: 195 y_1 + 720 y_2 + 300 y_3"), std::string::npos);
  const auto binaries = section(lp, "Binaries");
  for (const char* v : {"y_1", "y_2", "y_3", "x_1_2", "x_2_10", "x_3_12"})
    EXPECT_TRUE(declares(binaries, v)) << v;
  const auto generals = section(lp, "Generals");
  for (const char* v : {"l_1", "l_2", "l_3", "n_1_1", "n_1_15"})
    EXPECT_TRUE(declares(generals, v)) << v;
  const auto bounds = section(lp, "Bounds");
  EXPECT_NE(bounds.find(" 2 <= l_1 <= 13\n"), std::string::npos);
  EXPECT_NE(bounds.find(" 10 <= l_3 <= 11\n"), std::string::npos);
  // Row names are unique.
  std::set<std::string> rows;
  const std::regex row(R"(\n ([a-z]+_[0-9_]+):)");
  for (std::sregex_iterator it(lp.begin(), lp.end(), row), end; it != end; ++it)
    EXPECT_TRUE(rows.insert((*it)[1]).second) << (*it)[1];
  EXPECT_TRUE(rows.contains("stay_1"));
  EXPECT_TRUE(rows.contains("grp_1_15"));
}

TEST(ExportLp, BlackoutRowsFixOccupationToZero) {
  Instance inst{single_type_auction(ymd(2023, 6, 1), 5, 1, Money::from_euros(50)), {}};
  inst.bids.push_back(make_bid(4, 1, Money::from_euros(60), 1, 5, 2, {3}));
  const auto lp = export_lp(build_model(inst.auction, inst.bids, ObjectiveMode::Income));
  EXPECT_NE(lp.find(" blk_4_3: x_4_3 = 0\n"), std::string::npos);
}

TEST(ExportLp, ExternalSolverAgreesWithExact) {
  std::vector<std::string> files;
  std::vector<Money> expected;
  Instance single{single_type_auction(ymd(2023, 6, 1), 2, 1, Money::from_euros(50)), {}};
  single.bids.push_back(make_bid(1, 1, Money::from_euros(65), 1, 2, 1));
  files.push_back(write_temp("single", export_lp(build_model(single.auction, single.bids, ObjectiveMode::Income))));
  expected.push_back(Money::from_euros(65));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 10;
    spec.days = 10;
    spec.capacities = {3, 2};
    spec.shared_groups = seed % 2 == 0;
    const auto inst = random_instance(spec, seed);
    const auto mode = seed % 3 == 0 ? ObjectiveMode::Profit : ObjectiveMode::Income;
    const auto model = build_model(inst.auction, inst.bids, mode);
    files.push_back(write_temp(std::to_string(seed), export_lp(model)));
    expected.push_back(solve_exact(model).solution.objective);
  }
  const auto optima = external_optima(files);
  for (const auto& f : files) std::filesystem::remove(f);
  if (optima.empty()) GTEST_SKIP() << "highspy not available";
  ASSERT_EQ(optima.size(), expected.size());
  for (std::size_t i = 0; i < optima.size(); ++i) {
    const double value = std::stod(optima[i]);
    EXPECT_EQ(std::llround(value * 100.0), expected[i].cents()) << files[i];
  }
}
