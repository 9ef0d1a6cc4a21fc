// Copyright 2026 The ecsim Authors
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
#include <random>

#include <gtest/gtest.h>

#include "ecsim/channels.hpp"
#include "ecsim/error.hpp"
#include "ecsim/teleport.hpp"

namespace ecsim {
namespace {

TeleportSetup setup_for(int m, double alpha, Sign sign, Complex k1, Complex k2) {
  TeleportSetup s;
  s.channel = ChannelSpec{m, alpha, sign};
  s.kappa1 = k1;
  s.kappa2 = k2;
  return s;
}

const ProtocolOutcome& row(const ProtocolReport& r, int l, int n) {
  for (const auto& o : r.outcomes) {
    if (o.l == l && o.n == n) return o;
  }
  throw IndexError("no such outcome");
}

TEST(Fold, ConcentratesFirstBranchIntoSenderMode) {
  const double a = 0.5;
  const double r2 = std::sqrt(2.0);
  const auto joint = tensor(build_input(3, a, 1.0, 0.0).deduplicated(),
                            CoherentSuperposition::single(
                                CoherentLabel({2 * a, r2 * a, a, a})));
  const auto folded = fold_network(joint, 3);
  ASSERT_EQ(folded.size(), 1u);
  EXPECT_TRUE(folded.terms()[0].label.approx_equal(
      CoherentLabel({0.0, 0.0, 2 * r2 * a, 0.0, r2 * a, a, a}), 1e-12));
}

TEST(Fold, MixedBranchLandsOnChannelMode) {
  const double a = 0.5;
  const double r2 = std::sqrt(2.0);
  const auto joint = tensor(build_input(3, a, 0.0, 1.0).deduplicated(),
                            CoherentSuperposition::single(
                                CoherentLabel({2 * a, r2 * a, a, a})));
  const auto folded = fold_network(joint, 3);
  const auto& l = folded.terms()[0].label;
  EXPECT_NEAR(std::abs(l[2]), 0.0, 1e-12);
  EXPECT_NEAR(l[3].real(), -2 * r2 * a, 1e-12);
}

TEST(Fold, CascadeLeavesLeadingInputModesInVacuum) {
  for (int m = 2; m <= 6; ++m) {
    const auto joint = tensor(build_input(m, 0.8, 0.6, 0.8),
                              build_channel({m, 0.8, Sign::minus}));
    const auto folded = fold_network(joint, m);
    for (const auto& t : folded.terms()) {
      for (int k = 0; k + 1 < m; ++k) EXPECT_NEAR(std::abs(t.label[k]), 0.0, 1e-12);
    }
  }
}

TEST(Fold, WrongModeCountRejected) {
  EXPECT_THROW(fold_network(CoherentSuperposition(4), 3), DimensionError);
}

TEST(Correction, ParityRules) {
  EXPECT_EQ(required_correction(Sign::minus, 0, 3), Correction::phase_only);
  EXPECT_EQ(required_correction(Sign::minus, 0, 2), Correction::phase_plus_sign);
  EXPECT_EQ(required_correction(Sign::minus, 3, 0), Correction::none);
  EXPECT_EQ(required_correction(Sign::minus, 2, 0), Correction::sign_only);
  EXPECT_EQ(required_correction(Sign::plus, 0, 2), Correction::phase_only);
  EXPECT_EQ(required_correction(Sign::plus, 1, 0), Correction::sign_only);
  EXPECT_EQ(required_correction(Sign::plus, 0, 0), Correction::none);
  EXPECT_EQ(required_correction(Sign::plus, 2, 5), Correction::none);
}

TEST(Protocol, MinusChannelRoundTrip) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (int m = 1; m <= 4; ++m) {
    const auto setup = setup_for(m, 0.9, Sign::minus, Complex(g(rng), g(rng)),
                                 Complex(g(rng), g(rng)));
    const auto report = run_protocol(setup);
    for (const auto& o : report.outcomes) {
      if (o.heralded && o.probability > 1e-14) {
        EXPECT_NEAR(o.fidelity, 1.0, 1e-9) << "m=" << m << " (" << o.l << "," << o.n << ")";
      }
    }
    EXPECT_NEAR(report.success_probability, 0.5, 1e-9);
  }
}

TEST(Protocol, BothCountsNonzeroNeverHappens) {
  const auto report = run_protocol(setup_for(3, 1.0, Sign::minus, 0.6, 0.8));
  EXPECT_LT(std::abs(report.both_nonzero_probability), 1e-12);
}

TEST(Protocol, BornCompleteness) {
  const auto report = run_protocol(setup_for(3, 1.0, Sign::minus, 0.6, Complex(0, 0.8)));
  EXPECT_NEAR(report.total_probability, 1.0, 1e-9);
}

TEST(Protocol, OutcomeProbabilitiesIndependentOfWeights) {
  const auto a = run_protocol(setup_for(3, 0.7, Sign::minus, 1.0, 0.0));
  const auto b = run_protocol(setup_for(3, 0.7, Sign::minus, 0.3, Complex(-0.2, 0.9)));
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
    if (!a.outcomes[k].heralded) continue;
    EXPECT_NEAR(a.outcomes[k].probability, b.outcomes[k].probability, 1e-12);
  }
}

TEST(Protocol, PerOutcomeProbabilityMatchesClosedForm) {
  for (int m : {1, 2, 3, 5}) {
    const double a = 0.6;
    const auto report = run_protocol(setup_for(m, a, Sign::minus, 0.6, 0.8));
    for (int n = 1; n <= 15; n += 2) {
      const double expected = outcome_probability_closed_form(m, a, Sign::minus, n);
      EXPECT_NEAR(row(report, 0, n).probability, expected, 1e-12);
      EXPECT_NEAR(row(report, n, 0).probability, expected, 1e-12);
    }
  }
}

TEST(Protocol, FrozenFourModeOutcome) {
  // exp(-8) 8^1 / (2 (1 - exp(-16))) at unit amplitude.
  EXPECT_NEAR(outcome_probability_closed_form(3, 1.0, Sign::minus, 1),
              0.00134185066, 1e-11);
  const auto report = run_protocol(setup_for(3, 1.0, Sign::minus, 0.6, 0.8));
  EXPECT_NEAR(row(report, 0, 1).probability, 0.00134185066, 1e-11);
}

TEST(Protocol, EvenCountNeedsSignFlip) {
  const auto setup = setup_for(3, 0.8, Sign::minus, 0.9, Complex(0.1, 0.4));
  const auto report = run_protocol(setup);
  const auto& o = row(report, 0, 2);
  EXPECT_EQ(o.correction, Correction::phase_plus_sign);
  EXPECT_FALSE(o.heralded);
  EXPECT_LT(o.fidelity, 0.999);
  const auto flipped = bob_correction(o, setup, CorrectionPolicy::allow_sign_flip);
  EXPECT_NEAR(pure_fidelity(build_input(3, 0.8, setup.kappa1, setup.kappa2), flipped),
              1.0, 1e-9);
}

TEST(Protocol, PlusChannelSquaredSuccessForm) {
  const double a = 0.7;
  const auto report = run_protocol(setup_for(3, a, Sign::plus, 0.6, 0.8));
  EXPECT_NEAR(report.success_probability,
              success_probability_closed_form(3, a, Sign::plus), 1e-9);
  EXPECT_NEAR(report.success_probability, 0.480166713, 1e-9);
  EXPECT_GT(std::abs(report.success_probability - unsquared_success_probability(3, a)),
            1e-3);
}

TEST(Protocol, OracleEngineAgrees) {
  const auto setup = setup_for(2, 0.8, Sign::minus, 0.6, Complex(0.0, 0.8));
  const auto coherent = run_protocol(setup, Engine::coherent);
  const auto oracle = run_protocol(setup, Engine::oracle);
  ASSERT_EQ(coherent.outcomes.size(), oracle.outcomes.size());
  for (std::size_t k = 0; k < coherent.outcomes.size(); ++k) {
    EXPECT_NEAR(coherent.outcomes[k].probability, oracle.outcomes[k].probability, 1e-10);
    EXPECT_NEAR(coherent.outcomes[k].fidelity, oracle.outcomes[k].fidelity, 1e-8);
  }
}

TEST(Protocol, LargeAmplitudeSuccessApproachesHalf) {
  const auto report = run_protocol(setup_for(3, 3.0, Sign::minus, 0.6, 0.8));
  EXPECT_NEAR(report.success_probability, 0.5, 1e-3);
  EXPECT_NEAR(success_probability_closed_form(3, 3.0, Sign::plus), 0.5, 1e-3);
}

TEST(ClosedForm, WrongParityRejected) {
  EXPECT_THROW(outcome_probability_closed_form(3, 1.0, Sign::minus, 2), DomainError);
  EXPECT_THROW(outcome_probability_closed_form(3, 1.0, Sign::plus, 0), DomainError);
}

}  // namespace
}  // namespace ecsim
