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

namespace ecsim {
namespace {

const double kRoot2 = std::sqrt(2.0);

TEST(ChannelPattern, DoublingAmplitudes) {
  EXPECT_EQ(channel_pattern(1), (std::vector<double>{1.0, 1.0}));
  const auto p3 = channel_pattern(3);
  ASSERT_EQ(p3.size(), 4u);
  EXPECT_NEAR(p3[0], 2.0, 1e-15);
  EXPECT_NEAR(p3[1], kRoot2, 1e-15);
  EXPECT_NEAR(p3[2], 1.0, 1e-15);
  EXPECT_NEAR(p3[3], 1.0, 1e-15);
  // The squared amplitudes always sum to 2^m.
  for (int m = 1; m <= 8; ++m) {
    double sum = 0.0;
    for (double x : channel_pattern(m)) sum += x * x;
    EXPECT_NEAR(sum, std::ldexp(1.0, m), 1e-12);
  }
}

TEST(ChannelPattern, InputMatchesSmallerChannel) {
  EXPECT_EQ(input_pattern(1), (std::vector<double>{1.0}));
  EXPECT_EQ(input_pattern(4), channel_pattern(3));
}

TEST(Channel, FourModeNormalization) {
  const double a = 0.6;
  const ChannelSpec spec{3, a, Sign::minus};
  EXPECT_NEAR(channel_normalization(spec),
              1.0 / std::sqrt(2.0 * (1.0 - std::exp(-16 * a * a))), 1e-14);
  EXPECT_NEAR(build_channel(spec).squared_norm(), 1.0, 1e-12);
  EXPECT_EQ(build_channel(spec).mode_count(), 4u);
}

TEST(Channel, ThreeModeNormalizationBothSigns) {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const double a = 0.4;
    const ChannelSpec spec{2, a, s};
    EXPECT_NEAR(channel_normalization(spec),
                1.0 / std::sqrt(2.0 * (1.0 + sign_value(s) * std::exp(-8 * a * a))),
                1e-14);
    EXPECT_NEAR(build_channel(spec).squared_norm(), 1.0, 1e-12);
  }
}

TEST(Channel, UnitNormAcrossSizes) {
  for (int m = 1; m <= 8; ++m) {
    for (double a : {0.1, 0.9, 3.0}) {
      for (Sign s : {Sign::plus, Sign::minus}) {
        EXPECT_NEAR(build_channel({m, a, s}).squared_norm(), 1.0, 1e-12);
      }
    }
  }
}

TEST(Channel, FoldingLastModesGivesSmallerChannel) {
  // Merging the two trailing unit modes yields the m-mode channel at sqrt2 alpha.
  for (int m = 1; m <= 5; ++m) {
    const double a = 0.6;
    const auto big = build_channel({m + 1, a, Sign::minus});
    const auto small = build_channel({m, std::sqrt(2.0) * a, Sign::minus});
    const auto merged = beam_splitter(big, m, m + 1);
    ASSERT_EQ(merged.size(), small.size());
    for (std::size_t t = 0; t < merged.size(); ++t) {
      const auto& l = merged.terms()[t].label;
      EXPECT_NEAR(std::abs(l[m + 1]), 0.0, 1e-12);
      ModeSet head;
      for (int k = 0; k <= m; ++k) head.push_back(static_cast<std::size_t>(k));
      EXPECT_TRUE(l.restricted(head).approx_equal(small.terms()[t].label, 1e-12));
    }
  }
}

TEST(Channel, TwoModeStructure) {
  const auto s = build_channel({1, 0.9, Sign::plus});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.mode_count(), 2u);
  EXPECT_NEAR(s.terms()[0].label[0].real(), 0.9, 1e-15);
  EXPECT_NEAR(s.terms()[1].label[1].real(), -0.9, 1e-15);
}

TEST(Channel, InvalidSpecsRejected) {
  EXPECT_THROW(build_channel({0, 1.0, Sign::minus}), DomainError);
  EXPECT_THROW(build_channel({3, 0.0, Sign::minus}), DomainError);
  EXPECT_THROW(build_channel({3, std::nan(""), Sign::plus}), DomainError);
}

TEST(Input, ProductWhenOneWeightVanishes) {
  const double a = 0.5;
  const auto s = build_input(3, a, 1.0, 0.0).deduplicated();
  ASSERT_EQ(s.size(), 1u);
  ASSERT_EQ(s.mode_count(), 3u);
  const auto& l = s.terms().front().label;
  EXPECT_NEAR(l[0].real(), kRoot2 * a, 1e-15);
  EXPECT_NEAR(l[1].real(), a, 1e-15);
  EXPECT_NEAR(l[2].real(), a, 1e-15);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-12);
}

TEST(Input, RandomWeightsNormalized) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = build_input(3, 1.3, Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    EXPECT_NEAR(s.squared_norm(), 1.0, 1e-12);
  }
}

TEST(Input, VanishingWeightsRejected) {
  EXPECT_THROW(build_input(2, 1.0, 0.0, 0.0), DomainError);
}

TEST(ConcurrenceClosedForm, FirstModePartition) {
  for (double a : {0.2, 1.0, 1.7}) {
    EXPECT_NEAR(concurrence_closed_form({3, a, Sign::minus}, 0), 1.0, 1e-15);
  }
  EXPECT_NEAR(concurrence_closed_form({3, 0.5, Sign::plus}, 0), 0.9640275801, 1e-9);
}

TEST(ConcurrenceClosedForm, ThirdModePartition) {
  const double expected = std::sqrt(1 - std::exp(-4.0)) *
                          std::sqrt(1 - std::exp(-28.0)) / (1 - std::exp(-16.0));
  EXPECT_NEAR(concurrence_closed_form({3, 1.0, Sign::minus}, 2), expected, 1e-12);
}

TEST(ConcurrenceClosedForm, UndefinedPartitionRejected) {
  EXPECT_THROW(concurrence_closed_form({4, 1.0, Sign::minus}, 2), DomainError);
}

TEST(ConcurrenceOracle, MatchesClosedFormOnAllPartitions) {
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (double a : {0.3, 0.7}) {
      const ChannelSpec spec{3, a, s};
      for (std::size_t mode = 0; mode < 4; ++mode) {
        EXPECT_NEAR(oracle_concurrence(spec, {mode}),
                    concurrence_closed_form(spec, mode), 1e-6)
            << "mode " << mode << " alpha " << a;
      }
    }
  }
}

TEST(ConcurrenceOracle, LargeAmplitudeMinusChannel) {
  EXPECT_NEAR(oracle_concurrence({3, 2.0, Sign::minus}, {0}), 1.0, 1e-6);
}

TEST(Schmidt, MinusChannelMaximallyEntangledForAnySize) {
  for (int m = 1; m <= 6; ++m) {
    for (double a : {0.3, 1.0, 2.0}) {
      const ChannelSpec spec{m, a, Sign::minus};
      EXPECT_NEAR(schmidt_coefficients(build_channel(spec), {0}).concurrence(), 1.0,
                  1e-9);
    }
  }
}

TEST(Schmidt, PlusChannelMatchesTanh) {
  for (int m = 1; m <= 5; ++m) {
    const double a = 0.35;
    const ChannelSpec spec{m, a, Sign::plus};
    EXPECT_NEAR(schmidt_coefficients(build_channel(spec), {0}).concurrence(),
                std::tanh(std::ldexp(a * a, m)), 1e-9);
  }
}

TEST(Schmidt, ClosedFormMatchesNumeric) {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ChannelSpec spec{3, 0.45, s};
    const auto num = schmidt_coefficients(build_channel(spec), {0});
    const auto cf = schmidt_closed_form(spec);
    EXPECT_NEAR(num.concurrence(), cf.concurrence(), 1e-10);
  }
}

TEST(Schmidt, OffDiagonalsVanishForLargeAmplitude) {
  const auto x = schmidt_closed_form({3, 2.0, Sign::minus});
  EXPECT_LT(std::abs(x.x01), 1e-12);
  EXPECT_LT(std::abs(x.x10), 1e-12);
}

TEST(Schmidt, IdenticalBranchesRejected) {
  CoherentSuperposition s(2);
  s.add(1.0, CoherentLabel({0.5, 0.5}));
  s.add(0.5, CoherentLabel({0.5, 0.5}));
  EXPECT_THROW(schmidt_coefficients(s, {0}), UnsupportedStructureError);
}

}  // namespace
}  // namespace ecsim
