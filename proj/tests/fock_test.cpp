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
#include <string>

#include <gtest/gtest.h>

#include "ecsim/channels.hpp"
#include "ecsim/coherent.hpp"
#include "ecsim/error.hpp"
#include "ecsim/fock.hpp"
#include "ecsim/noise.hpp"

namespace ecsim {
namespace {

CoherentLabel label(std::initializer_list<Complex> amps) {
  return CoherentLabel(std::vector<Complex>(amps));
}

// Silences low-cutoff diagnostics for the tests that use them on purpose.
class QuietWarnings {
 public:
  QuietWarnings()
      : previous_(fock::set_warning_handler([this](const std::string&) { ++count; })) {}
  ~QuietWarnings() { fock::set_warning_handler(previous_); }
  int count = 0;

 private:
  fock::WarningHandler previous_;
};

TEST(FockEncode, VacuumIsFirstBasisVector) {
  const auto v = fock::encode(CoherentSuperposition::single(label({0.0})), 30);
  EXPECT_NEAR(std::abs(v.data()[0] - Complex(1.0)), 0.0, 1e-15);
  for (std::size_t k = 1; k < v.size(); ++k) EXPECT_EQ(v.data()[k], Complex(0.0));
}

TEST(FockEncode, TwoPhotonCoefficient) {
  const auto c = fock::coherent_coefficients(1.0, 10);
  EXPECT_NEAR(c[2].real(), 0.4288819425, 1e-9);
}

TEST(FockEncode, CatNormWithCutoffThirty) {
  QuietWarnings quiet;
  CoherentSuperposition s(2);
  s.add(1.0, label({1.0, 1.0}));
  s.add(-1.0, label({-1.0, -1.0}));
  const auto v = fock::encode(s.normalized(), 30);
  EXPECT_NEAR(v.squared_norm(), 1.0, 1e-10);
  EXPECT_GT(quiet.count, 0);
}

TEST(FockEncode, InnerProductsMatchCoherentAlgebra) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CoherentSuperposition x(2);
    CoherentSuperposition y(2);
    for (int b = 0; b < 3; ++b) {
      x.add(Complex(u(rng), u(rng)), label({Complex(u(rng), u(rng)), u(rng)}));
      y.add(Complex(u(rng), u(rng)), label({Complex(u(rng), u(rng)), u(rng)}));
    }
    const int cutoff = fock::cutoff_for_amplitude(1.5);
    const Complex oracle =
        fock::inner_product(fock::encode(x, cutoff), fock::encode(y, cutoff));
    EXPECT_NEAR(std::abs(oracle - inner_product(x, y)), 0.0, 1e-10);
  }
}

TEST(FockEncode, ResourceLimitEnforced) {
  const std::vector<int> cutoffs(6, 40);
  EXPECT_THROW(fock::FockVector::vacuum(cutoffs), ResourceError);
}

TEST(FockEncode, CutoffRuleBoundsTail) {
  for (double beta : {0.0, 0.5, 1.0, 2.0, 3.0, 4.5}) {
    EXPECT_LT(fock::poisson_tail(beta, fock::cutoff_for_amplitude(beta)), 1e-10);
  }
}

TEST(FockBeamSplitter, MatchesCoherentConvention) {
  const double a = 0.8;
  const auto in = fock::encode(CoherentSuperposition::single(label({a, a})), 40);
  const auto expected = fock::encode(
      CoherentSuperposition::single(label({std::sqrt(2.0) * a, 0.0})), 40);
  const auto out = fock::bs_unitary(in, 0, 1);
  double diff = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    diff = std::max(diff, std::abs(out.data()[k] - expected.data()[k]));
  }
  EXPECT_LT(diff, 1e-6);
}

TEST(FockBeamSplitter, VacuumUnchangedAndNormPreserved) {
  const auto vac = fock::FockVector::vacuum({12, 12});
  const auto out = fock::bs_unitary(vac, 0, 1);
  EXPECT_NEAR(std::abs(out.data()[0] - Complex(1.0)), 0.0, 1e-15);

  // Total photon number below the cutoff keeps the vector inside the space.
  fock::FockVector v({8, 8});
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int n0 = 0; n0 <= 4; ++n0) {
    for (int n1 = 0; n0 + n1 <= 8; ++n1) {
      v.data()[n0 * v.stride(0) + n1 * v.stride(1)] = Complex(g(rng), g(rng));
    }
  }
  EXPECT_NEAR(fock::bs_unitary(v, 1, 0).squared_norm(), v.squared_norm(), 1e-10);
}

TEST(FockMeasure, PoissonAndVacuum) {
  const auto v = fock::encode(CoherentSuperposition::single(label({1.0, 0.0})),
                              fock::cutoff_for_amplitude(1.0));
  EXPECT_NEAR(fock::measure_number(v, 0, 1).probability, 0.3678794412, 1e-9);
  EXPECT_NEAR(fock::measure_number(v, 1, 0).probability, 1.0, 1e-12);
}

TEST(FockMeasure, MatchesCoherentProjection) {
  CoherentSuperposition s(2);
  s.add(0.6, label({1.1, -0.3}));
  s.add(Complex(0.2, 0.5), label({-1.1, 0.3}));
  s = s.normalized();
  const auto v = fock::encode(s, fock::cutoff_for_amplitude(1.1));
  for (int n = 0; n < 8; ++n) {
    EXPECT_NEAR(fock::measure_number(v, 0, n).probability,
                project_photon_number(s, 0, n).probability, 1e-12);
  }
}

TEST(Wootters, BellAndProductStates) {
  Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  EXPECT_NEAR(fock::wootters_concurrence(bell), 1.0, 1e-12);
  Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
  product(0, 0) = 1.0;
  EXPECT_NEAR(fock::wootters_concurrence(product), 0.0, 1e-12);
}

TEST(Wootters, WernerState) {
  // p |Bell><Bell| + (1 - p) I/4 has concurrence max(0, (3p - 1)/2).
  for (double p : {0.2, 0.5, 0.9}) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() * ((1.0 - p) / 4.0);
    rho(0, 0) += p / 2;
    rho(3, 3) += p / 2;
    rho(0, 3) += p / 2;
    rho(3, 0) += p / 2;
    EXPECT_NEAR(fock::wootters_concurrence(rho), std::max(0.0, (3 * p - 1) / 2),
                1e-10);
  }
}

TEST(Wootters, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  auto random_unitary = [&] {
    Eigen::Matrix2cd a;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    return Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ() * Eigen::Matrix2cd::Identity();
  };
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Matrix4cd b;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) b(i, j) = Complex(g(rng), g(rng));
    }
    Eigen::Matrix4cd rho = b * b.adjoint();
    rho /= rho.trace();
    const Eigen::Matrix2cd ua = random_unitary();
    const Eigen::Matrix2cd ub = random_unitary();
    Eigen::Matrix4cd u;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
    }
    EXPECT_NEAR(fock::wootters_concurrence(u * rho * u.adjoint()),
                fock::wootters_concurrence(rho), 1e-9);
  }
}

TEST(QubitReduction, PlusChannelFirstModePartition) {
  const ChannelSpec spec{3, 0.7, Sign::plus};
  const auto rho = fock::reduce_to_qubits(build_channel(spec), {0});
  EXPECT_NEAR(fock::wootters_concurrence(rho), std::tanh(8 * 0.49), 1e-6);
  EXPECT_NEAR(std::tanh(8 * 0.49), 0.999212972, 1e-9);
}

TEST(FockLoss, IdentityAtFullTransmission) {
  const auto s = build_channel({1, 0.6, Sign::minus});
  const auto rho = fock::FockOperator::encode(CoherentOperator::pure(s),
                                              fock::cutoffs_for(s));
  const auto out = fock::apply_loss(rho, 1.0, {0, 1});
  EXPECT_NEAR((out.data() - rho.data()).norm(), 0.0, 1e-14);
}

TEST(FockLoss, ComposesMultiplicatively) {
  const auto s = build_channel({1, 0.6, Sign::minus});
  const auto rho = fock::FockOperator::encode(CoherentOperator::pure(s),
                                              fock::cutoffs_for(s));
  const auto twice = fock::apply_loss(fock::apply_loss(rho, 0.7, {0, 1}), 0.6, {0, 1});
  const auto once = fock::apply_loss(rho, 0.42, {0, 1});
  EXPECT_NEAR((twice.data() - once.data()).norm(), 0.0, 1e-12);
  EXPECT_NEAR(twice.trace().real(), 1.0, 1e-10);
  EXPECT_TRUE(twice.is_hermitian());
}

TEST(FockLoss, MatchesCoherentLoss) {
  const auto s = build_channel({1, 0.9, Sign::plus});
  const auto rho_c = apply_loss(s, LossModel{0.35}, {0, 1});
  const auto cutoffs = fock::cutoffs_for(s);
  const auto rho_f = fock::apply_loss(
      fock::FockOperator::encode(CoherentOperator::pure(s), cutoffs), 0.35, {0, 1});
  const auto rho_cf = fock::FockOperator::encode(rho_c, cutoffs);
  EXPECT_NEAR((rho_f.data() - rho_cf.data()).norm(), 0.0, 1e-9);
}

TEST(FockLoss, FullLossLeavesVacuum) {
  const auto s = build_channel({1, 0.9, Sign::minus});
  const auto rho = fock::apply_loss(
      fock::FockOperator::encode(CoherentOperator::pure(s), fock::cutoffs_for(s)),
      0.0, {0, 1});
  EXPECT_NEAR(std::abs(rho.data()(0, 0) - Complex(1.0)), 0.0, 1e-10);
}

TEST(FockLoss, TransmissivityOutOfRangeRejected) {
  const auto rho = fock::FockOperator::pure(fock::FockVector::vacuum({3}));
  EXPECT_THROW(fock::apply_loss(rho, 1.5, {0}), DomainError);
}

}  // namespace
}  // namespace ecsim
