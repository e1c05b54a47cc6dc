// Copyright 2026 The hamlab Authors
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

#include "hamlab/error.hpp"
#include "hamlab/gadgets.hpp"

using namespace hamlab;

namespace {

ErrorKind kind_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(SubdivisionDelta, ClosedForm) {
  EXPECT_NEAR(subdivision_delta(1.0, 0.05, 0.0), 43.05, 1e-12);
  EXPECT_NEAR(subdivision_delta(-1.0, 0.05, 0.0), 43.05, 1e-12);
  EXPECT_NEAR(subdivision_delta(0.5, 0.1, 1.0), (2 * 0.5 / 0.1 + 1) * (0.5 + 0.1 + 2.0), 1e-12);
}

TEST(Subdivision, PassesAtAnalyticDelta) {
  GadgetRealization g = subdivision_gadget(zz_spec(1.0, 0.05));
  EXPECT_NEAR(g.delta, 43.05, 1e-12);
  EXPECT_EQ(g.slack, 2);
  GadgetReport r = verify_gadget(g, 0.05);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_spectral_error, 0.05);
  EXPECT_TRUE(r.hypothesis_ok);
}

TEST(Subdivision, NegativeCouplingAndElseTerm) {
  GadgetSpec s = zz_spec(-0.6, 0.05);
  s.H_else = OperatorSum(2);
  s.H_else.add(0.3, "XI");
  GadgetRealization g = subdivision_gadget(s);
  GadgetReport r = verify_gadget(g, 0.05);
  EXPECT_TRUE(r.pass);
}

TEST(Subdivision, SmallDeltaFails) {
  GadgetRealization g = subdivision_gadget(zz_spec(1.0, 0.05), 3.0);
  EXPECT_FALSE(verify_gadget(g, 0.05).pass);
}

TEST(Subdivision, SpecErrors) {
  EXPECT_EQ(kind_of([] { check_spec(zz_spec(0.0, 0.05)); }), ErrorKind::ZeroCoupling);
  GadgetSpec overlap = zz_spec(1.0, 0.05);
  overlap.B = OperatorSum(2);
  overlap.B.add(1.0, "XI");
  EXPECT_EQ(kind_of([&] { check_spec(overlap); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { subdivision_gadget(zz_spec(1.0, 0.05), -1.0); }), ErrorKind::NonpositiveDelta);
}

TEST(SelfEnergy, SchurAndResolventAgree) {
  GadgetRealization g = subdivision_gadget(zz_spec(0.8, 0.05));
  for (double z : {-1.2, -0.3, 0.4, 1.1}) {
    SelfEnergy s = self_energy(g, z, 0);
    if (s.exact_resolvent.size() == 0) continue;
    EXPECT_LT((s.exact - s.exact_resolvent).norm(), 1e-9) << "z = " << z;
  }
}

TEST(SelfEnergy, SeriesConvergesWithOrder) {
  GadgetRealization g = subdivision_gadget(zz_spec(1.0, 0.05));
  double z = 0.5;
  SelfEnergy s = self_energy(g, z, 0);
  double e2 = (self_energy(g, z, 2).series - s.exact).norm();
  double e4 = (self_energy(g, z, 4).series - s.exact).norm();
  EXPECT_LE(e4, e2 + 1e-12);
  EXPECT_LE(e2, series_remainder_bound(g, z, 2) + 1e-12);
  EXPECT_LE(e4, series_remainder_bound(g, z, 4) + 1e-12);
}

TEST(SelfEnergy, PoleRejected) {
  GadgetRealization g = subdivision_gadget(zz_spec(1.0, 0.05));
  EXPECT_EQ(kind_of([&] { self_energy(g, g.delta, 2); }), ErrorKind::ZNearPole);
}

TEST(ZGrid, Symmetric) {
  std::vector<double> z = z_grid(2.0);
  ASSERT_EQ(z.size(), 101u);
  EXPECT_DOUBLE_EQ(z.front(), -2.0);
  EXPECT_DOUBLE_EQ(z.back(), 2.0);
  EXPECT_NEAR(z[50], 0.0, 1e-15);
}

TEST(YY, LargeGapMeetsTolerance) {
  GadgetRealization g = yy_gadget(1.0, OperatorSum(2), 1e6, 0.1);
  GadgetReport r = verify_gadget(g, 0.1);
  EXPECT_TRUE(r.pass);
}

TEST(DeltaSearch, SubdivisionBelowAnalytic) {
  DeltaSearch s = minimal_delta_search(zz_spec(1.0, 0.1), GadgetBuilder::Subdivision);
  EXPECT_GT(s.delta_min, 0.0);
  EXPECT_LE(s.delta_min, s.analytic * (1 + 1e-9));
  GadgetReport r = verify_gadget(subdivision_gadget(zz_spec(1.0, 0.1), s.delta_min * 1.001), 0.1);
  EXPECT_LE(r.max_spectral_error, 0.1);
}

TEST(LogLogSlope, ExactPowerLaw) {
  std::vector<double> eps{0.1, 0.05, 0.02, 0.01}, d;
  for (double e : eps) d.push_back(3.0 * std::pow(e, -2.0));
  EXPECT_NEAR(loglog_slope(eps, d), 2.0, 1e-12);
}
