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

// Photon loss. Each lossy mode meets a vacuum environment mode at a beam
// splitter of transmissivity eta, |a>|0>_E -> |sqrt(eta) a>|sqrt(1-eta) a>_E,
// and the environment is traced out straight away.

#pragma once

#include <array>
#include <vector>

#include "ecsim/coherent.hpp"
#include "ecsim/teleport.hpp"

namespace ecsim {

struct LossModel {
  /// Transmissivity in [0, 1]; 1 is lossless.
  double eta = 1.0;
};

/// Throws DomainError unless 0 <= eta <= 1.
void validate(const LossModel& model);

/// Which channel modes suffer loss during teleportation.
enum class LossPlacement {
  /// Every channel mode, the sender's included.
  all_channel_modes,
  /// Only the modes travelling to the receiver.
  receiver_modes,
};

CoherentOperator apply_loss(const CoherentSuperposition& state,
                            const LossModel& model, const ModeSet& modes);
CoherentOperator apply_loss(const CoherentOperator& rho, const LossModel& model,
                            const ModeSet& modes);

/// (1 - e^{-2^{m+1} eta |a|^2}) (1 + e^{-2^{m+1} (1-eta) |a|^2})
///   / (2 (1 - e^{-2^{m+1} |a|^2})).
double channel_fidelity_closed_form(int m, Complex alpha, double eta);

/// tr(rho_ref rho_lossy), where rho_lossy is the minus channel after loss on
/// every mode and rho_ref is the minus channel at amplitude sqrt(eta) alpha.
/// At amplitudes below kMinAlpha the reference is odd in the field and the
/// lossy state is vacuum, so the value is 0.
double channel_fidelity(int m, Complex alpha, double eta);

/// tr(rho rho_lossy) against the channel at its original amplitude.
double unscaled_channel_fidelity(int m, Complex alpha, double eta);

/// Protocol with loss applied to the channel before the fold. Each outcome's
/// reference_fidelity uses the input rescaled by sqrt(eta).
ProtocolReport teleport_through_noise(
    const TeleportSetup& setup, const LossModel& model,
    LossPlacement placement = LossPlacement::all_channel_modes);

/// Candidate closed forms for the teleported fidelity
/// (1 + e^{-2^m X}) (1 - e^{-2^m eta |a|^2}) / (2 (1 - e^{-2^m |a|^2})),
/// differing only in X.
enum class FidelityVariant {
  /// X = (1 - eta)^2.
  printed,
  /// X = (1 - eta)^2 |a|^2.
  missing_alpha,
  /// X = (1 - eta) |a|^2.
  linear_loss,
};

inline constexpr std::array<FidelityVariant, 3> kFidelityVariants{
    FidelityVariant::printed, FidelityVariant::missing_alpha,
    FidelityVariant::linear_loss};

const char* to_string(FidelityVariant v);

double teleported_fidelity_closed_form(
    int m, Complex alpha, double eta,
    FidelityVariant variant = FidelityVariant::linear_loss);

/// Mean heralded fidelity of an odd-cat input (kappa1 = -kappa2) through the
/// lossy minus channel, against the input at the attenuated amplitude.
double teleported_fidelity(
    int m, Complex alpha, double eta,
    LossPlacement placement = LossPlacement::receiver_modes);

struct FidelityAdjudication {
  /// Variant closest to the engine over the grid.
  FidelityVariant winner = FidelityVariant::linear_loss;
  /// max |engine - variant| over the grid, indexed like kFidelityVariants.
  std::array<double, 3> max_deviation{};
  /// Winner within 1e-6 and every other variant off by more than 1e-3.
  bool definitive = false;
};

FidelityAdjudication adjudicate_teleported_fidelity(
    int m, const std::vector<double>& alphas, const std::vector<double>& etas,
    LossPlacement placement = LossPlacement::receiver_modes);

}  // namespace ecsim
