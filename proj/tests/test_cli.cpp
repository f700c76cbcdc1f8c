// Copyright 2026 The iup-thermal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "iup/cli.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using iup::cli::run;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("iup_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Blackbody, OccupationAt8um) {
  const auto o = invoke({"blackbody", "--wavelength", "8um", "--temp", "300K"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_NEAR(j["n_th"].get<double>(), 2.5e-3, 0.05 * 2.5e-3);
  EXPECT_NEAR(j["n_th"].get<double>(), 2.49763965639608177e-3, 1e-16);
  EXPECT_NEAR(j["wien_peak_m"].get<double>(), 9.65923985e-6, 1e-13);
  EXPECT_GT(j["energy_density_J_s_per_m3"].get<double>(), 0.0);
}

TEST(Blackbody, BandPower) {
  const auto o = invoke({"blackbody", "--temp", "300K", "--band", "1176cm-1:1234cm-1", "--area", "1mm2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_NEAR(j["power_W"].get<double>(), 1.17e-5, 0.1 * 1.17e-5);
  EXPECT_NEAR(j["photon_flux_per_s"].get<double>(), 5e14, 0.1 * 5e14);
}

TEST(Blackbody, UnitErrors) {
  EXPECT_EQ(invoke({"blackbody", "--wavelength", "8", "--temp", "300K"}).code, 2);
  EXPECT_EQ(invoke({"blackbody", "--wavelength", "8um", "--temp", "300"}).code, 2);
  const auto o = invoke({"blackbody", "--wavelength", "8furlong", "--temp", "300K"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("--wavelength"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"blackbody", "--wavelength", "8um"}).code, 2);
  EXPECT_EQ(invoke({"blackbody", "--wavelength", "8um", "--temp", "-3K"}).code, 2);
  EXPECT_EQ(invoke({"blackbody", "--temp", "300K", "--band", "1176cm-1:1234cm-1"}).code, 2);
}

TEST(Visibility, OperatingPoint) {
  const auto o = invoke({"visibility", "--xi", "0.03", "--kappa", "0.05pi", "--n-i", "0.2", "--n-c", "0.15"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_NEAR(j["visibility"].get<double>(), 0.9882, 5e-5);
  // Full double precision survives the JSON round trip.
  EXPECT_EQ(j["visibility"].get<double>(),
            iup::visibility_closed_form({0.03, 0.0, 0.05 * iup::constants::pi, 0.2, 0.15}).visibility);
  EXPECT_TRUE(o.err.empty());
}

TEST(Visibility, FullTransmission) {
  const auto o = invoke({"visibility", "--xi", "0.03", "--transmissivity", "1.0", "--n-i", "5", "--n-c", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["visibility"].get<double>(), 1.0);
}

TEST(Visibility, UniformTemperatureImmunity) {
  const auto hot = invoke({"visibility", "--xi", "0.03", "--kappa", "0.3pi", "--lambda", "8um",
                           "--temp-i", "600K", "--temp-c", "600K"});
  const auto warm = invoke({"visibility", "--xi", "0.03", "--kappa", "0.3pi", "--lambda", "8um",
                            "--temp-i", "300K", "--temp-c", "300K"});
  ASSERT_EQ(hot.code, 0) << hot.err;
  ASSERT_EQ(warm.code, 0) << warm.err;
  const double a = json_of(hot)["visibility"].get<double>();
  const double b = json_of(warm)["visibility"].get<double>();
  EXPECT_NEAR(a / b, 1.0, 1e-12);
  EXPECT_NE(json_of(hot)["n_th_i"].get<double>(), json_of(warm)["n_th_i"].get<double>());
}

TEST(Visibility, PhaseAndEngines) {
  for (const char* engine : {"analytic", "gaussian", "fock"}) {
    const auto o = invoke({"visibility", "--xi", "0.03", "--kappa", "0.05pi", "--n-i", "0.2", "--n-c",
                           "0.15", "--phi", "0rad", "--engine", engine});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(json_of(o)["n_visible"].get<double>() / 4.29743601790228729e-3, 1.0, 1e-4) << engine;
  }
}

TEST(Visibility, Scan) {
  const auto o = invoke({"visibility", "--xi", "0.03", "--kappa", "0.05pi", "--n-i", "0.2", "--n-c",
                         "0.15", "--scan"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = json_of(o);
  EXPECT_NEAR(j["scan"]["visibility"].get<double>(), j["visibility"].get<double>(), 1e-8);
}

TEST(Visibility, DomainErrorsAndWarning) {
  EXPECT_EQ(invoke({"visibility", "--xi", "0.03", "--kappa", "0.6pi", "--n-i", "0", "--n-c", "0"}).code, 2);
  EXPECT_EQ(invoke({"visibility", "--xi", "0.03", "--kappa", "0.1pi", "--n-i", "-1", "--n-c", "0"}).code, 2);
  EXPECT_EQ(invoke({"visibility", "--xi", "0.03", "--kappa", "0.1", "--n-i", "0", "--n-c", "0"}).code, 2);
  EXPECT_EQ(invoke({"visibility", "--xi", "0.03", "--n-i", "0", "--n-c", "0"}).code, 2);
  EXPECT_EQ(invoke({"visibility", "--xi", "0.03", "--transmissivity", "1.5", "--n-i", "0", "--n-c", "0"}).code,
            2);
  const auto strong = invoke({"visibility", "--xi", "0.5", "--kappa", "0.1pi", "--n-i", "0", "--n-c", "0"});
  EXPECT_EQ(strong.code, 0);
  EXPECT_NE(strong.err.find("warning"), std::string::npos);
}

TEST_F(CliFiles, SweepWritesCsvAndPlot) {
  const auto csv = dir_ / "fig3a.csv";
  const auto svg = dir_ / "fig3a.svg";
  const auto o = invoke({"sweep", "--target", "fig3a", "--out", csv.string(), "--plot", svg.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string text = slurp(csv);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) continue;
    if (!header_seen) {
      EXPECT_EQ(line, "cos_kappa,analytic");
      header_seen = true;
      continue;
    }
    data.push_back(line);
  }
  ASSERT_EQ(data.size(), 200u);
  EXPECT_EQ(data.front(), "0,0");
  EXPECT_EQ(data.back(), "1,1");
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
}

TEST_F(CliFiles, SweepFig2bLandmark) {
  const auto csv = dir_ / "fig2b.csv";
  ASSERT_EQ(invoke({"sweep", "--target", "fig2b", "--out", csv.string(), "--no-meta"}).code, 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "wavelength_m,analytic");
  double best_x = 0.0, best_n = 0.0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    if (std::abs(x - 20e-6) < std::abs(best_x - 20e-6)) {
      best_x = x;
      best_n = std::stod(line.substr(comma + 1));
    }
  }
  EXPECT_NEAR(best_n, 0.1, 0.005);
}

TEST_F(CliFiles, SweepIsDeterministic) {
  const auto a = dir_ / "a.csv";
  const auto b = dir_ / "b.csv";
  ASSERT_EQ(invoke({"sweep", "--target", "fig3d", "--engines", "analytic,gaussian", "--out", a.string(),
                    "--no-meta"}).code,
            0);
  ASSERT_EQ(invoke({"sweep", "--target", "fig3d", "--engines", "analytic,gaussian", "--out", b.string(),
                    "--no-meta"}).code,
            0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).rfind("xi,analytic,gaussian\n", 0), 0u);
}

TEST_F(CliFiles, SweepCustomRange) {
  const auto csv = dir_ / "custom.csv";
  const auto o = invoke({"sweep", "--target", "custom", "--param", "phi", "--min", "0rad", "--max", "2pi",
                         "--count", "9", "--xi", "0.03", "--kappa", "0pi", "--out", csv.string(), "--no-meta"});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string text = slurp(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
  EXPECT_EQ(text.rfind("phi_rad,analytic\n", 0), 0u);
}

TEST_F(CliFiles, SweepErrors) {
  EXPECT_EQ(invoke({"sweep", "--target", "fig3a", "--out", "/nonexistent-dir/x/out.csv"}).code, 3);
  EXPECT_EQ(invoke({"sweep", "--target", "fig3a", "--out", (dir_ / "x.csv").string(), "--plot",
                    (dir_ / "x.png").string()}).code,
            2);
  EXPECT_EQ(invoke({"sweep", "--target", "fig7", "--out", (dir_ / "x.csv").string()}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--target", "fig3c", "--engines", "fock", "--out", (dir_ / "x.csv").string()})
                .code,
            2);
}

TEST_F(CliFiles, ConfigFileFlagsWin) {
  const auto cfg = dir_ / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# operating point\nxi = 0.03\nkappa=0.05pi\nn-i=0.2\nn-c=0.9\n";
  }
  const auto o = invoke({"visibility", "--config", cfg.string(), "--n-c", "0.15"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json_of(o)["n_th_c"].get<double>(), 0.15);
  EXPECT_NEAR(json_of(o)["visibility"].get<double>(), 0.988202576575252401, 1e-14);
  EXPECT_EQ(invoke({"visibility", "--config", (dir_ / "missing.cfg").string()}).code, 3);
  {
    std::ofstream f(cfg);
    f << "xi 0.03\n";
  }
  EXPECT_EQ(invoke({"visibility", "--config", cfg.string()}).code, 2);
}

TEST(Verify, SmallAndOversizedCutoff) {
  const auto small = invoke({"verify", "--cutoff", "4", "--xi", "0.03", "--kappa", "0.05pi"});
  EXPECT_EQ(small.code, 1);
  EXPECT_NE(small.out.find("truncation diagnosis"), std::string::npos) << small.out;
  EXPECT_NE(small.out.find("worst offenders"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--cutoff", "17"}).code, 2);
}

TEST(Verify, SmallGridPasses) {
  const auto o = invoke({"verify", "--xi", "0.03", "--kappa", "0.05pi", "--phi", "0rad,1pi"});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("PASS"), std::string::npos);
}

TEST(Usage, UnknownCommand) {
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

}  // namespace
