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

#include <gtest/gtest.h>

#include "ecsim/channels.hpp"
#include "ecsim/error.hpp"
#include "ecsim/fock.hpp"
#include "ecsim/noise.hpp"
#include "ecsim/teleport.hpp"

namespace ecsim {
namespace {

ModeSet all_modes(int m) {
  ModeSet modes;
  for (int k = 0; k <= m; ++k) modes.push_back(static_cast<std::size_t>(k));
  return modes;
}

TEST(Loss, FullTransmissionIsIdentity) {
  const auto s = build_channel({3, 0.8, Sign::minus});
  const auto rho = apply_loss(s, LossModel{1.0}, all_modes(3));
  EXPECT_NEAR(operator_fidelity(rho, CoherentOperator::pure(s)), 1.0, 1e-12);
  EXPECT_NEAR((rho.coefficients() - CoherentOperator::pure(s).coefficients()).norm(),
              0.0, 1e-14);
}

TEST(Loss, FullLossKeepsNoCoherence) {
  const auto rho = apply_loss(build_channel({2, 0.8, Sign::minus}), LossModel{0.0},
                              all_modes(2));
  EXPECT_LE(rho.max_abs_amplitude(), 1e-15);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(Loss, CrossTermDamping) {
  const double a = 0.4;
  const double eta = 0.7;
  const auto rho = apply_loss(build_channel({3, a, Sign::minus}), LossModel{eta},
                              all_modes(3)).deduplicated();
  ASSERT_EQ(rho.dictionary().size(), 2u);
  const auto& c = rho.coefficients();
  EXPECT_NEAR(std::abs(c(0, 1) / c(0, 0)), std::exp(-16 * (1 - eta) * a * a), 1e-12);
}

TEST(Loss, ComposesAcrossStages) {
  const auto s = build_channel({2, 0.9, Sign::plus});
  const auto twice = apply_loss(apply_loss(s, LossModel{0.8}, {1, 2}), LossModel{0.5}, {1, 2});
  const auto once = apply_loss(s, LossModel{0.4}, {1, 2});
  const auto ref = build_channel({2, 0.5, Sign::minus});
  EXPECT_NEAR(pure_fidelity(ref, twice), pure_fidelity(ref, once), 1e-12);
  EXPECT_NEAR((twice.deduplicated().coefficients() - once.deduplicated().coefficients()).norm(),
              0.0, 1e-12);
}

TEST(Loss, MatchesNumberBasisExpectation) {
  const auto s = build_channel({2, 0.7, Sign::minus});
  const auto rho = CoherentOperator::pure(s);
  const auto ref = build_channel({2, 0.5, Sign::plus});
  const double coherent = pure_fidelity(ref, apply_loss(rho, LossModel{0.6}, {0, 2}));
  EXPECT_NEAR(coherent, fock::lossy_expectation(ref, rho, 0.6, {0, 2}), 1e-10);
}

TEST(Loss, InvalidTransmissivityRejected) {
  const auto s = build_channel({1, 0.5, Sign::minus});
  EXPECT_THROW(apply_loss(s, LossModel{-0.1}, {0}), DomainError);
  EXPECT_THROW(apply_loss(s, LossModel{1.1}, {0}), DomainError);
}

TEST(ChannelFidelity, MatchesClosedForm) {
  for (double a : {0.1, 0.5, 1.2, 2.5}) {
    for (double eta : {0.0, 0.25, 0.5, 0.8, 1.0}) {
      EXPECT_NEAR(channel_fidelity(3, a, eta), channel_fidelity_closed_form(3, a, eta),
                  1e-9)
          << "alpha " << a << " eta " << eta;
    }
  }
}

TEST(ChannelFidelity, FrozenValues) {
  EXPECT_NEAR(channel_fidelity_closed_form(3, 0.5, 0.8), 0.708094769, 1e-9);
  EXPECT_NEAR(channel_fidelity_closed_form(3, 1.0, 0.5), 0.5, 1e-12);
  EXPECT_NEAR(channel_fidelity_closed_form(3, 0.7, 1.0), 1.0, 1e-15);
}

TEST(ChannelFidelity, HalfTransmissionGivesHalf) {
  for (double a : {0.1, 0.3, 1.0, 2.0, 3.0}) {
    EXPECT_NEAR(channel_fidelity_closed_form(3, a, 0.5), 0.5, 1e-12);
  }
}

TEST(ChannelFidelity, UnscaledReferenceDiffers) {
  EXPECT_GT(std::abs(unscaled_channel_fidelity(3, 0.5, 0.8) -
                     channel_fidelity_closed_form(3, 0.5, 0.8)),
            1e-3);
}

TEST(ChannelFidelity, SmallAmplitudeIsSmallBelowHalfTransmission) {
  EXPECT_LT(channel_fidelity_closed_form(3, 0.1, 0.2), 0.25);
}

TEST(NoisyTeleport, FullTransmissionMatchesNoiseless) {
  TeleportSetup setup;
  setup.channel = {3, 0.9, Sign::minus};
  setup.kappa1 = 0.6;
  setup.kappa2 = Complex(0.0, 0.8);
  const auto clean = run_protocol(setup);
  const auto noisy = teleport_through_noise(setup, LossModel{1.0});
  ASSERT_EQ(clean.outcomes.size(), noisy.outcomes.size());
  for (std::size_t k = 0; k < clean.outcomes.size(); ++k) {
    EXPECT_NEAR(clean.outcomes[k].probability, noisy.outcomes[k].probability, 1e-12);
    EXPECT_NEAR(clean.outcomes[k].fidelity, noisy.outcomes[k].fidelity, 1e-12);
  }
}

TEST(NoisyTeleport, FidelityIsOneWithoutLoss) {
  for (int m : {1, 3, 5}) EXPECT_NEAR(teleported_fidelity(m, 1.0, 1.0), 1.0, 1e-9);
}

TEST(NoisyTeleport, FidelityRisesWithTransmission) {
  double previous = 0.0;
  for (double eta = 0.1; eta <= 1.0; eta += 0.1) {
    const double f = teleported_fidelity(3, 1.0, eta);
    EXPECT_GT(f, previous);
    previous = f;
  }
}

TEST(NoisyTeleport, SmallAmplitudeFarFromOne) {
  for (double eta : {0.2, 0.6, 0.9}) EXPECT_LT(teleported_fidelity(3, 0.3, eta), 0.9);
}

TEST(NoisyTeleport, LinearLossVariantMatchesReceiverLoss) {
  for (double a : {0.6, 1.2}) {
    for (double eta : {0.2, 0.7}) {
      EXPECT_NEAR(teleported_fidelity(3, a, eta),
                  teleported_fidelity_closed_form(3, a, eta, FidelityVariant::linear_loss),
                  1e-9);
    }
  }
}

TEST(NoisyTeleport, AdjudicationPicksLinearLoss) {
  const auto verdict =
      adjudicate_teleported_fidelity(3, {0.6, 1.2, 1.8}, {0.1, 0.5, 0.9});
  EXPECT_EQ(verdict.winner, FidelityVariant::linear_loss);
  EXPECT_TRUE(verdict.definitive);
}

TEST(NoisyTeleport, EveryVariantIsOneAtFullTransmission) {
  for (auto v : kFidelityVariants) {
    EXPECT_NEAR(teleported_fidelity_closed_form(3, 1.0, 1.0, v), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace ecsim
