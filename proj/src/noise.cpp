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

#include "ecsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecsim/channels.hpp"
#include "ecsim/error.hpp"

namespace ecsim {

namespace {

double one_minus_exp(double x) { return -std::expm1(-x); }

ModeSet all_modes(std::size_t count) {
  ModeSet modes(count);
  std::iota(modes.begin(), modes.end(), std::size_t{0});
  return modes;
}

}  // namespace

void validate(const LossModel& model) {
  if (!(model.eta >= 0.0 && model.eta <= 1.0)) {
    throw DomainError("transmissivity must lie in [0, 1]");
  }
}

CoherentOperator apply_loss(const CoherentSuperposition& state,
                            const LossModel& model, const ModeSet& modes) {
  return apply_loss(CoherentOperator::pure(state), model, modes);
}

CoherentOperator apply_loss(const CoherentOperator& rho, const LossModel& model,
                            const ModeSet& modes) {
  validate(model);
  for (std::size_t m : modes) {
    if (m >= rho.mode_count()) throw IndexError("loss mode out of range");
  }
  const double keep = std::sqrt(model.eta);
  const double leak = std::sqrt(1.0 - model.eta);
  std::vector<CoherentLabel> dict = rho.dictionary();
  Eigen::MatrixXcd coeffs = rho.coefficients();
  const auto size = static_cast<Eigen::Index>(dict.size());
  for (std::size_t mode : modes) {
    // Tracing the environment leaves <e_k|e_j> on coefficient (j, k).
    for (Eigen::Index j = 0; j < size; ++j) {
      for (Eigen::Index k = 0; k < size; ++k) {
        coeffs(j, k) *= overlap(leak * dict[k][mode], leak * dict[j][mode]);
      }
    }
    for (auto& d : dict) d = d.with(mode, keep * d[mode]);
  }
  return CoherentOperator(rho.mode_count(), std::move(dict), std::move(coeffs))
      .deduplicated();
}

double channel_fidelity_closed_form(int m, Complex alpha, double eta) {
  validate(ChannelSpec{m, alpha, Sign::minus});
  validate(LossModel{eta});
  const double x = std::ldexp(std::norm(alpha), m + 1);
  return one_minus_exp(eta * x) * (1.0 + std::exp(-(1.0 - eta) * x)) /
         (2.0 * one_minus_exp(x));
}

double channel_fidelity(int m, Complex alpha, double eta) {
  const ChannelSpec spec{m, alpha, Sign::minus};
  validate(spec);
  validate(LossModel{eta});
  const Complex scaled = std::sqrt(eta) * alpha;
  if (std::abs(scaled) < kMinAlpha) return 0.0;
  const CoherentSuperposition channel = build_channel(spec);
  const CoherentOperator lossy =
      apply_loss(channel, LossModel{eta}, all_modes(channel.mode_count()));
  const CoherentOperator reference =
      CoherentOperator::pure(build_channel(ChannelSpec{m, scaled, Sign::minus}));
  return operator_fidelity(reference, lossy);
}

double unscaled_channel_fidelity(int m, Complex alpha, double eta) {
  const ChannelSpec spec{m, alpha, Sign::minus};
  const CoherentSuperposition channel = build_channel(spec);
  const CoherentOperator lossy =
      apply_loss(channel, LossModel{eta}, all_modes(channel.mode_count()));
  return operator_fidelity(CoherentOperator::pure(channel), lossy);
}

ProtocolReport teleport_through_noise(const TeleportSetup& setup,
                                      const LossModel& model,
                                      LossPlacement placement) {
  validate(setup.channel);
  validate(model);
  const CoherentSuperposition channel = build_channel(setup.channel);
  ModeSet lossy = all_modes(channel.mode_count());
  if (placement == LossPlacement::receiver_modes) lossy.erase(lossy.begin());
  return run_protocol(setup, apply_loss(channel, model, lossy),
                      std::sqrt(model.eta));
}

const char* to_string(FidelityVariant v) {
  switch (v) {
    case FidelityVariant::printed:
      return "printed";
    case FidelityVariant::missing_alpha:
      return "missing_alpha";
    case FidelityVariant::linear_loss:
      return "linear_loss";
  }
  return "unknown";
}

double teleported_fidelity_closed_form(int m, Complex alpha, double eta,
                                       FidelityVariant variant) {
  validate(ChannelSpec{m, alpha, Sign::minus});
  validate(LossModel{eta});
  const double a2 = std::norm(alpha);
  const double lost = 1.0 - eta;
  double exponent = 0.0;
  switch (variant) {
    case FidelityVariant::printed:
      exponent = lost * lost;
      break;
    case FidelityVariant::missing_alpha:
      exponent = lost * lost * a2;
      break;
    case FidelityVariant::linear_loss:
      exponent = lost * a2;
      break;
  }
  const double scale = std::ldexp(1.0, m);
  return (1.0 + std::exp(-scale * exponent)) * one_minus_exp(scale * eta * a2) /
         (2.0 * one_minus_exp(scale * a2));
}

double teleported_fidelity(int m, Complex alpha, double eta,
                           LossPlacement placement) {
  const double h = 0.70710678118654752440;
  const TeleportSetup setup{ChannelSpec{m, alpha, Sign::minus}, h, -h};
  return teleport_through_noise(setup, LossModel{eta}, placement)
      .mean_reference_fidelity;
}

FidelityAdjudication adjudicate_teleported_fidelity(
    int m, const std::vector<double>& alphas, const std::vector<double>& etas,
    LossPlacement placement) {
  if (alphas.empty() || etas.empty()) throw DomainError("empty adjudication grid");
  FidelityAdjudication out;
  for (double a : alphas) {
    for (double eta : etas) {
      const double engine = teleported_fidelity(m, a, eta, placement);
      for (std::size_t v = 0; v < kFidelityVariants.size(); ++v) {
        const double dev =
            std::abs(engine - teleported_fidelity_closed_form(m, a, eta, kFidelityVariants[v]));
        out.max_deviation[v] = std::max(out.max_deviation[v], dev);
      }
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(out.max_deviation.begin(), out.max_deviation.end()) -
      out.max_deviation.begin());
  out.winner = kFidelityVariants[best];
  out.definitive = out.max_deviation[best] < 1e-6;
  for (std::size_t v = 0; v < kFidelityVariants.size(); ++v) {
    if (v != best && out.max_deviation[v] <= 1e-3) out.definitive = false;
  }
  return out;
}

}  // namespace ecsim
