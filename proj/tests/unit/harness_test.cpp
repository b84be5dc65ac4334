// Copyright 2026 The fracstep Authors.
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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fracstep/errors.hpp"
#include "fracstep/harness.hpp"
#include "fracstep/reference_cache.hpp"

namespace fracstep {
namespace {

namespace fs = std::filesystem;

SweepPlan small_plan() {
  PlanParameters p;
  p.first_level = 2;
  p.last_level = 4;
  p.fixed = 32;
  p.reference_cells = 32;
  return experiment_plan("exp1-space", p);
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("fracstep-" + name)) {
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(OrderFit, HalvingAndQuartering) {
  const std::vector<double> halves{1.0, 0.5, 0.25};
  for (double o : order_fit(halves)) EXPECT_NEAR(o, 1.0, 1e-15);
  const std::vector<double> quarters{1.0, 0.25};
  EXPECT_NEAR(order_fit(quarters)[0], 2.0, 1e-15);
}

TEST(OrderFit, TwoLevelColumnPair) {
  const std::vector<double> e{7.56e-1, 4.78e-1};
  EXPECT_NEAR(order_fit(e)[0], 0.66, 5e-3);
}

TEST(OrderFit, RejectsDegenerateInput) {
  EXPECT_THROW(order_fit(std::vector<double>{1.0}), DomainError);
  EXPECT_THROW(order_fit(std::vector<double>{1.0, 0.0}), DomainError);
}

TEST(ExpectedOrders, SmallAlphaSpatial) {
  const ExpectedOrders o = expected_orders(0.2, 0.3, RateCase::nonsmooth_small_alpha);
  EXPECT_NEAR(o.e1_space, 0.7, 1e-15);
  EXPECT_NEAR(o.e2_space, 1.7, 1e-15);
}

TEST(ExpectedOrders, SmallAlphaTemporal) {
  const ExpectedOrders o = expected_orders(0.4, 0.0, RateCase::nonsmooth_small_alpha);
  EXPECT_NEAR(o.e1_time, 0.2, 1e-15);
  EXPECT_NEAR(o.e2_time, 0.4, 1e-15);
}

TEST(ExpectedOrders, SmoothSourceTemporal) {
  const ExpectedOrders o = expected_orders(0.8, 0.0, RateCase::smooth_source);
  EXPECT_NEAR(o.e2_time, 1.0, 1e-15);
  EXPECT_NEAR(o.e2_space, 2.0, 1e-15);
}

TEST(ExpectedOrders, UncoveredRegimesThrow) {
  EXPECT_THROW(expected_orders(0.7, 0.3, RateCase::nonsmooth_small_alpha), DomainError);
  EXPECT_THROW(expected_orders(0.8, 0.5, RateCase::nonsmooth_large_alpha), DomainError);
  EXPECT_THROW(expected_orders(0.5, 0.0, RateCase::smooth_source), DomainError);
}

TEST(CriticalBeta, PowerData) {
  EXPECT_NEAR(critical_beta_for_power(-0.8), 0.3, 1e-15);
  EXPECT_EQ(critical_beta_for_power(0.0), 0.0);
  EXPECT_THROW(critical_beta_for_power(-1.0), DomainError);
}

TEST(Plans, RegistryAndShapes) {
  EXPECT_EQ(registered_plans().size(), 8u);
  const SweepPlan p = experiment_plan("exp1-space");
  ASSERT_EQ(p.levels.size(), 4u);
  EXPECT_EQ(p.levels.front().cells, 8u);
  EXPECT_EQ(p.levels.back().cells, 64u);
  ASSERT_TRUE(p.reference.has_value());
  EXPECT_EQ(p.reference->cells, 512u);
  EXPECT_EQ(p.reference->steps, 4096u);
  EXPECT_NO_THROW(p.validate());
  EXPECT_THROW(experiment_plan("exp4-space"), ConfigError);
}

TEST(Plans, ManufacturedTimeUsesExactSolution) {
  const SweepPlan p = experiment_plan("manufactured-time");
  EXPECT_FALSE(p.reference.has_value());
  EXPECT_TRUE(p.exact.has_value());
  EXPECT_EQ(p.levels.front().steps, 16u);
  EXPECT_EQ(p.levels.back().steps, 512u);
  EXPECT_EQ(p.levels.back().cells, 256u);
}

TEST(Sweep, LevelEqualToReferenceHasZeroError) {
  PlanParameters p;
  p.first_level = 4;
  p.last_level = 4;
  p.fixed = 16;
  p.reference_cells = 16;
  const ConvergenceTable t = run_sweep(experiment_plan("exp3-space", p));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].e1, 0.0);
  EXPECT_EQ(t.rows[0].e2, 0.0);
  EXPECT_FALSE(t.rows[0].order1.has_value());
}

TEST(Sweep, OrdersFilledFromSecondRow) {
  const ConvergenceTable t = run_sweep(small_plan());
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_FALSE(t.rows[0].order1.has_value());
  for (std::size_t l = 1; l < 3; ++l) {
    ASSERT_TRUE(t.rows[l].order1.has_value());
    EXPECT_NEAR(*t.rows[l].order1, std::log2(t.rows[l - 1].e1 / t.rows[l].e1), 1e-15);
  }
  EXPECT_DOUBLE_EQ(t.meta.h_ref, 1.0 / 32);
  EXPECT_DOUBLE_EQ(t.meta.tau_ref, 1.0 / 32);
}

TEST(Sweep, ParallelLevelsAreBitwiseIdentical) {
  SweepPlan plan = small_plan();
  const ConvergenceTable serial = run_sweep(plan);
  plan.parallel_levels = true;
  const ConvergenceTable parallel = run_sweep(plan);
  ASSERT_EQ(serial.rows.size(), parallel.rows.size());
  for (std::size_t l = 0; l < serial.rows.size(); ++l) {
    EXPECT_EQ(serial.rows[l].e1, parallel.rows[l].e1);
    EXPECT_EQ(serial.rows[l].e2, parallel.rows[l].e2);
  }
}

TEST(Sweep, NestingAndBudgetGuards) {
  SweepPlan plan = small_plan();
  plan.reference = Resolution{24, 32};
  EXPECT_THROW(run_sweep(plan), NestingError);
  plan = small_plan();
  plan.levels.push_back(Resolution{64, 32});
  EXPECT_THROW(run_sweep(plan), NestingError);
  plan = small_plan();
  plan.levels = {Resolution{8, 32}, Resolution{16, 16}};
  EXPECT_THROW(run_sweep(plan), NestingError);
  plan = small_plan();
  plan.max_work = 10.0;
  EXPECT_THROW(run_sweep(plan), BudgetExceededError);
}

TEST(Sweep, EnergyDefectRecordedOnRequest) {
  SweepPlan plan = small_plan();
  plan.check_energy_identity = true;
  const ConvergenceTable t = run_sweep(plan);
  ASSERT_TRUE(t.meta.max_energy_defect.has_value());
  EXPECT_LT(*t.meta.max_energy_defect, 1e-10);
}

TEST(Cache, KeyStemIsStableAndSensitive) {
  CacheKey a;
  a.entries = {{"experiment", "exp1-space"}, {"alpha", "0.2"}};
  CacheKey b = a;
  EXPECT_EQ(a.file_stem(), b.file_stem());
  EXPECT_EQ(a.file_stem().rfind("exp1-space-", 0), 0u);
  b.entries["alpha"] = "0.4";
  EXPECT_NE(a.file_stem(), b.file_stem());
}

TEST(Cache, RoundTripIsBitExact) {
  TempDir dir("roundtrip");
  const ReferenceCache cache(dir.path());
  const TemporalGrid grid = TemporalGrid::uniform(1.0, 3);
  const Mesh1D mesh(4);
  SpaceTimeField field(grid, mesh);
  double x = 0.1;
  for (double& v : field.coefficients.data()) v = (x *= -1.7);
  CacheKey key;
  key.entries = {{"experiment", "unit"}};
  EXPECT_FALSE(cache.load(key, grid, mesh).has_value());
  cache.store(key, field);
  const auto back = cache.load(key, grid, mesh);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->coefficients, field.coefficients);
  EXPECT_FALSE(cache.load(key, TemporalGrid::uniform(1.0, 6), mesh).has_value());
}

TEST(Cache, SweepReusesAndInvalidates) {
  TempDir dir("sweep");
  SweepPlan plan = small_plan();
  plan.cache_dir = dir.path().string();
  const ConvergenceTable first = run_sweep(plan);
  std::size_t files = 0;
  fs::path meta;
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    ++files;
    if (entry.path().extension() == ".meta") meta = entry.path();
  }
  EXPECT_EQ(files, 2u);
  const ConvergenceTable second = run_sweep(plan);
  for (std::size_t l = 0; l < first.rows.size(); ++l) {
    EXPECT_EQ(first.rows[l].e1, second.rows[l].e1);
  }
  // A corrupted entry is ignored and rewritten.
  { std::ofstream(meta, std::ios::app) << "garbage\n"; }
  const ConvergenceTable third = run_sweep(plan);
  EXPECT_EQ(first.rows.back().e2, third.rows.back().e2);
  // Different data parameters never share an entry.
  PlanParameters other;
  other.first_level = 2;
  other.last_level = 4;
  other.fixed = 32;
  other.reference_cells = 32;
  other.sigma = 0.3;
  SweepPlan changed = experiment_plan("exp1-space", other);
  changed.cache_dir = plan.cache_dir;
  run_sweep(changed);
  files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 4u);
}

}  // namespace
}  // namespace fracstep
