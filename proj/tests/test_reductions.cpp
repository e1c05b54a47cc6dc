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

#include <bit>

#include "hamlab/error.hpp"
#include "hamlab/reductions.hpp"

using namespace hamlab;

namespace {

std::set<std::uint64_t> even_parity(int k) {
  std::set<std::uint64_t> s;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
    if (std::popcount(x) % 2 == 0) s.insert(x);
  }
  return s;
}

void expect_kernel_margin(const QuadraticPenalty &p, const std::set<std::uint64_t> &accepted) {
  EXPECT_EQ(p.kernel(), accepted);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n_logical); ++x) {
    if (!accepted.count(x)) EXPECT_GE(p.min_over_slack(x), p.delta) << "logical string " << x;
  }
}

}  // namespace

TEST(AndGadget, TruthTableValues) {
  const Rational d(3, 2);
  QuadraticPenalty p = and_gadget(d);
  const Rational expect[8] = {0, 3 * d, 0, d, 0, d, d, 0};
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(p.energy(x), expect[x]) << "x = " << x;
}

TEST(AndGadget, RejectsNonpositiveDelta) {
  try {
    and_gadget(Rational(0));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonpositiveDelta);
  }
}

TEST(CopyGadget, KernelAndValues) {
  QuadraticPenalty p = copy_gadget();
  EXPECT_EQ(p.energy(0b000), 0);
  EXPECT_EQ(p.energy(0b111), 0);
  EXPECT_EQ(p.energy(0b100), 2);
  EXPECT_EQ(p.kernel(), (std::set<std::uint64_t>{0b000, 0b111}));
}

TEST(CubicGadget, BothVariantsEmulateNegativeProduct) {
  for (CubicVariant v : {CubicVariant::A, CubicVariant::B}) {
    QuadraticPenalty p = cubic_product_gadget(v);
    ASSERT_EQ(p.n_logical, 3);
    ASSERT_EQ(p.n_slack, 1);
    for (std::uint64_t x = 0; x < 8; ++x) {
      Rational expect = x == 0b111 ? Rational(-1) : Rational(0);
      EXPECT_EQ(p.min_over_slack(x), expect) << "x = " << x;
    }
  }
}

TEST(XorChain, KernelIsEvenParity) {
  for (int k = 3; k <= 7; ++k) {
    XorChain c = xor_chain(k);
    EXPECT_EQ(c.k, k);
    expect_kernel_margin(c.penalty, even_parity(k));
  }
}

TEST(XorChain, StructureCounts) {
  EXPECT_EQ(xor_chain(3).auxiliaries.size(), 0u);
  EXPECT_EQ(xor_chain(3).mediators.size(), 1u);
  EXPECT_EQ(xor_chain(4).auxiliaries.size(), 1u);
  EXPECT_EQ(xor_chain(6).auxiliaries.size(), 3u);
  EXPECT_THROW(xor_chain(2), Error);
}

TEST(XorChain, OutputBitIsParityOfTheRest) {
  XorChain c = xor_chain(5);
  for (std::uint64_t x : c.penalty.kernel()) {
    int parity = std::popcount(x >> 1) % 2;
    EXPECT_EQ(static_cast<int>(x & 1U), parity);
  }
}

TEST(Synthesis, AndIsFeasibleWithoutSlack) {
  SynthesisResult r = synthesize_penalty(and_kernel(), 0);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(verify_penalty(r.penalty, and_kernel()));
  EXPECT_EQ(r.penalty.kernel(), and_gadget(Rational(1)).kernel());
}

TEST(Synthesis, XorNeedsOneMediator) {
  SynthesisResult none = synthesize_penalty(xor_kernel(), 0);
  EXPECT_FALSE(none.feasible);
  ASSERT_FALSE(none.refutations.empty());
  for (const auto &ref : none.refutations) EXPECT_TRUE(verify_certificate(ref.system, ref.certificate));

  SynthesisResult one = synthesize_penalty(xor_kernel(), 1);
  ASSERT_TRUE(one.feasible);
  EXPECT_TRUE(verify_penalty(one.penalty, xor_kernel()));
}

TEST(Synthesis, TooLargeRejected) {
  TargetKernel t;
  t.n_logical = 5;
  t.accepted = {0};
  try {
    synthesize_penalty(t, 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Equivalence, ComplementMapsAndFamilyToOrFamily) {
  // Flipping every bit of AND (z = x & y) gives z' = x' | y'.
  EXPECT_EQ(complement(and_kernel()).accepted, or_kernel().accepted);
  SynthesisResult r = synthesize_penalty(or_kernel(), 0);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.penalty.kernel(), or_kernel().accepted);
}

TEST(Penalty, DiagonalShiftedNonnegative) {
  for (const QuadraticPenalty &p : {and_gadget(Rational(1)), copy_gadget(), xor_chain(4).penalty}) {
    RVector d = realize_dense(p.to_operator()).diagonal().real();
    EXPECT_GE(d.minCoeff(), -1e-12);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n_total()); ++x) {
      EXPECT_NEAR(d[static_cast<Eigen::Index>(x)], to_double(p.energy(x)), 1e-12);
    }
  }
}

TEST(Penalty, JsonRoundTrip) {
  QuadraticPenalty p = xor_chain(4).penalty;
  QuadraticPenalty q = penalty_from_json(to_json(p));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n_total()); ++x) EXPECT_EQ(q.energy(x), p.energy(x));
  TargetKernel t = kernel_from_json(to_json(xor_kernel()));
  EXPECT_EQ(t.accepted, xor_kernel().accepted);
}

TEST(RationalLp, FeasibleAndInfeasible) {
  LinearSystem s;
  s.num_vars = 2;
  s.eq_rows = {{1, 1}};
  s.eq_rhs = {1};
  s.ge_rows = {{1, 0}};
  s.ge_rhs = {Rational(1, 3)};
  FeasibilityResult r = solve_feasibility(s);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfies(s, r.x));

  s.ge_rows.push_back({0, 1});
  s.ge_rhs.push_back(Rational(3, 4));
  FeasibilityResult bad = solve_feasibility(s);
  EXPECT_FALSE(bad.feasible);
  EXPECT_TRUE(verify_certificate(s, bad.certificate));
}
