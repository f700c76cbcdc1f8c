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

#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "iup/sweeps.hpp"

namespace {

using namespace iup;
using namespace iup::sweeps;

const SweepRow& nearest(const SweepResult& r, double x) {
  const SweepRow* best = &r.rows.front();
  for (const auto& row : r.rows) {
    if (std::abs(row.x - x) < std::abs(best->x - x)) best = &row;
  }
  return *best;
}

std::string csv(const SweepResult& r, bool metadata) {
  std::ostringstream out;
  write_csv(r, out, metadata);
  return out.str();
}

std::string drop_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.rfind("# generated=", 0) == 0) continue;
    kept += line + '\n';
  }
  return kept;
}

void expect_monotone(const SweepResult& r, bool increasing) {
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    if (increasing) {
      EXPECT_GT(r.rows[k].values[0], r.rows[k - 1].values[0]) << r.rows[k].x;
    } else {
      EXPECT_LT(r.rows[k].values[0], r.rows[k - 1].values[0]) << r.rows[k].x;
    }
  }
}

TEST(Range, EndpointsExact) {
  const SweepRange lin{0.1, 0.7, 7, Scale::linear};
  EXPECT_EQ(lin.at(0), 0.1);
  EXPECT_EQ(lin.at(6), 0.7);
  const SweepRange log{1e-3, 10.0, 5, Scale::log};
  EXPECT_NEAR(log.at(1), 1e-2, 1e-15);
  EXPECT_EQ(log.at(4), 10.0);
}

TEST(Builtin, Fig2aThreshold) {
  const auto r = run_sweep(builtin_spec(Target::fig2a));
  EXPECT_EQ(r.rows.size(), 181u);
  const auto& row = nearest(r, 750.0);
  EXPECT_NEAR(row.x, 750.0, 1e-9);
  EXPECT_NEAR(row.values[0], 0.100, 0.005);
  expect_monotone(r, true);
}

TEST(Builtin, Fig2bThreshold) {
  const auto r = run_sweep(builtin_spec(Target::fig2b));
  EXPECT_EQ(r.rows.size(), 291u);
  const auto& row = nearest(r, 20e-6);
  EXPECT_NEAR(row.x, 20e-6, 1e-15);
  EXPECT_NEAR(row.values[0], 0.100, 0.005);
  expect_monotone(r, true);
}

TEST(Builtin, Fig3aEndpoints) {
  const auto r = run_sweep(builtin_spec(Target::fig3a));
  ASSERT_EQ(r.rows.size(), 200u);
  EXPECT_EQ(r.rows.front().x, 0.0);
  EXPECT_EQ(r.rows.front().values[0], 0.0);
  EXPECT_EQ(r.rows.back().x, 1.0);
  EXPECT_EQ(r.rows.back().values[0], 1.0);
  expect_monotone(r, true);
}

TEST(Builtin, Fig3bDecreasingAndBelowOne) {
  const auto r = run_sweep(builtin_spec(Target::fig3b));
  expect_monotone(r, false);
  EXPECT_EQ(r.rows.front().x, 0.0);
  EXPECT_LT(r.rows.front().values[0], 1.0);
  EXPECT_NEAR(r.rows.front().values[0], 0.989715756716226141, 1e-14);
  const auto& op = nearest(r, 0.15);
  EXPECT_NEAR(op.values[0], 0.988, 5e-4);
}

TEST(Builtin, Fig3cAndFig3dIncreasing) {
  expect_monotone(run_sweep(builtin_spec(Target::fig3c)), true);
  const auto d = run_sweep(builtin_spec(Target::fig3d));
  expect_monotone(d, true);
  EXPECT_GT(d.rows.front().x, 0.0);
  EXPECT_EQ(d.rows.back().x, 0.1);
}

TEST(Engines, ColumnsAgree) {
  auto spec = builtin_spec(Target::fig3b);
  spec.range.count = 5;
  spec.range.max = 0.2;
  spec.engines = {Engine::analytic, Engine::gaussian, Engine::fock};
  const auto r = run_sweep(spec);
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.values[1], row.values[0], gaussian_tolerance);
    EXPECT_NEAR(row.values[2], row.values[0], fock_tolerance);
  }
}

TEST(Engines, OccupationColumnsAgree) {
  auto spec = builtin_spec(Target::fig2a);
  spec.range = {100.0, 400.0, 4, Scale::linear};
  spec.engines = {Engine::analytic, Engine::gaussian, Engine::fock};
  for (const auto& row : run_sweep(spec).rows) {
    EXPECT_NEAR(row.values[1], row.values[0], 1e-15);
    EXPECT_NEAR(row.values[2], row.values[0], 1e-10);
  }
}

TEST(Engines, FockRefusedBeyondBudget) {
  auto spec = builtin_spec(Target::fig3c);
  spec.engines = {Engine::analytic, Engine::fock};
  // n_i up to 1 leaves (1/2)^12 of the thermal tail outside d = 12.
  EXPECT_THROW(run_sweep(spec), SweepRefused);
  auto hot = builtin_spec(Target::fig2a);
  hot.range.max = 5000.0;
  hot.engines = {Engine::analytic, Engine::fock};
  EXPECT_THROW(run_sweep(hot), SweepRefused);
  auto big = builtin_spec(Target::fig3b);
  big.engines = {Engine::analytic, Engine::fock};
  big.cutoff = 17;
  try {
    run_sweep(big);
    FAIL() << "expected refusal";
  } catch (const SweepRefused& e) {
    EXPECT_NE(std::string(e.what()).find("4096"), std::string::npos) << e.what();
  }
}

TEST(Spec, Validation) {
  auto spec = builtin_spec(Target::fig3a);
  spec.range.count = 1;
  EXPECT_THROW(validate(spec), std::domain_error);
  spec = builtin_spec(Target::fig3a);
  spec.range.min = 1.0;
  EXPECT_THROW(validate(spec), std::domain_error);
  spec = builtin_spec(Target::fig3a);
  spec.param = SweptParam::temperature;
  EXPECT_THROW(validate(spec), std::domain_error);
  spec = builtin_spec(Target::fig3a);
  spec.range.max = 1.5;
  EXPECT_THROW(validate(spec), std::domain_error);
  spec = builtin_spec(Target::fig3a);
  spec.engines = {Engine::gaussian};
  EXPECT_THROW(validate(spec), std::domain_error);
  EXPECT_THROW(parse_target("fig9"), std::invalid_argument);
  EXPECT_EQ(parse_target("fig3d"), Target::fig3d);
}

TEST(Csv, SchemaAndDeterminism) {
  const auto spec = builtin_spec(Target::fig3a);
  const auto a = run_sweep(spec);
  const auto b = run_sweep(spec);
  EXPECT_EQ(csv(a, false), csv(b, false));
  EXPECT_EQ(drop_timestamp(csv(a, true)), drop_timestamp(csv(b, true)));

  const std::string bare = csv(a, false);
  EXPECT_EQ(bare.rfind("cos_kappa,analytic\n", 0), 0u);
  EXPECT_EQ(bare.find('#'), std::string::npos);
  EXPECT_EQ(bare.find('\r'), std::string::npos);
  EXPECT_EQ(std::count(bare.begin(), bare.end(), '\n'), 201);

  const std::string meta = csv(a, true);
  EXPECT_EQ(meta.rfind("# target=fig3a\n", 0), 0u);
  EXPECT_NE(meta.find("# generated="), std::string::npos);
}

TEST(Csv, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2.49763965639608177e-3, 1e-300, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Verify, ZeroCornerExact) {
  GridSpec grid;
  grid.xi = {0.0};
  grid.kappa = {0.0};
  grid.phi = {0.0};
  grid.n_i = {0.0};
  grid.n_c = {0.0};
  grid.cutoff = 6;
  const auto report = verify_engines(grid);
  ASSERT_EQ(report.points.size(), 1u);
  const auto& pt = report.points.front();
  EXPECT_EQ(pt.analytic, 0.0);
  EXPECT_EQ(pt.gaussian, 0.0);
  ASSERT_TRUE(pt.fock.has_value());
  EXPECT_EQ(*pt.fock, 0.0);
  EXPECT_TRUE(report.passed());
}

TEST(Verify, GaussianFullGrid) {
  const auto report = verify_engines(gaussian_grid());
  EXPECT_EQ(report.points.size(), 768u);
  EXPECT_LE(report.max_gaussian_error, gaussian_tolerance);
  EXPECT_TRUE(report.passed());
}

TEST(Verify, SmallCutoffFails) {
  GridSpec grid;
  grid.cutoff = 4;
  grid.convergence_check = false;
  const auto report = verify_engines(grid);
  EXPECT_FALSE(report.fock_ok);
  EXPECT_FALSE(report.passed());
  EXPECT_GT(report.max_thermal_truncation, 1e-6);
}

TEST(Verify, ConvergesWithCutoff) {
  GridSpec grid;
  grid.xi = {0.03};
  grid.phi = {0.0, constants::pi};
  const auto report = verify_engines(grid);
  EXPECT_TRUE(report.convergence_checked);
  EXPECT_LE(report.max_fock_refined_error, report.max_fock_error);
  EXPECT_LE(report.max_fock_error, fock_tolerance);
  EXPECT_TRUE(report.passed());
}

TEST(Verify, GuardBeyondLimit) {
  GridSpec grid;
  grid.cutoff = 17;
  EXPECT_THROW(verify_engines(grid), fock::CutoffGuardError);
}

}  // namespace
