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

// Teleportation of an m-mode entangled coherent state through an (m+1)-mode
// channel.
//
// Joint mode layout: input modes 0..m-1, then channel modes m..2m. The sender
// holds modes 0..m; the receiver holds m+1..2m. The fold network mixes the
// input into mode m-1 and leaves modes 0..m-2 in vacuum; the sender then
// counts photons on mode m-1 (l) and mode m (n).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecsim/channels.hpp"
#include "ecsim/coherent.hpp"

namespace ecsim {

/// Operation the receiver must apply to recover the input exactly.
/// `phase_only` is a pi phase shift on every receiver mode. `sign_only` and
/// the sign part of `phase_plus_sign` flip the sign of the minus branch,
/// which is not a unitary operation.
enum class Correction { none, phase_only, phase_plus_sign, sign_only };

const char* to_string(Correction c);

enum class CorrectionPolicy {
  /// Apply only the phase shift part of a correction.
  unitary_only,
  /// Also apply the branch sign flip.
  allow_sign_flip,
};

struct ProtocolOutcome {
  int l = 0;
  int n = 0;
  double probability = 0.0;
  Correction correction = Correction::none;
  /// True when the outcome is correctable by a unitary and (l, n) != (0, 0).
  bool heralded = false;
  /// Normalized receiver state before any correction.
  CoherentOperator bob_state;
  /// <u|rho|u> after the unitary part of the correction, against the input.
  double fidelity = 0.0;
  /// Same, against the input rescaled to the attenuated amplitude.
  double reference_fidelity = 0.0;
};

struct ProtocolReport {
  /// Rows with l = 0 or n = 0, ordered by (l, n).
  std::vector<ProtocolOutcome> outcomes;
  /// Sum of heralded probabilities.
  double success_probability = 0.0;
  /// Probability-weighted fidelity over heralded outcomes.
  double mean_fidelity = 0.0;
  /// Same with reference_fidelity.
  double mean_reference_fidelity = 0.0;
  /// Total probability of every outcome with l > 0 and n > 0.
  double both_nonzero_probability = 0.0;
  /// Upper bound on the probability beyond the enumerated counts.
  double truncation_bound = 0.0;
  /// Sum of all enumerated probabilities plus both_nonzero_probability.
  double total_probability = 0.0;
};

struct TeleportSetup {
  ChannelSpec channel;
  Complex kappa1 = 0.70710678118654752440;
  Complex kappa2 = 0.70710678118654752440;
};

enum class Engine { coherent, oracle };

/// Beam splitters (m-1, m-2), ..., (m-1, 0), then (m-1, m) on a joint state
/// of 2m+1 modes. Throws DimensionError on any other mode count.
CoherentSuperposition fold_network(const CoherentSuperposition& joint, int m);
CoherentOperator fold_network(const CoherentOperator& joint, int m);

/// Largest photon count enumerated: the cutoff rule at 2^{m/2} |alpha|.
int outcome_cutoff(int m, Complex alpha);

/// Correction prescribed for outcome (l, n) on a channel of the given sign.
Correction required_correction(Sign channel, int l, int n);

/// Enumerates the (0, n) and (l, 0) outcomes of a folded joint state.
/// `reference_scale` rescales the input amplitude for reference_fidelity.
/// Throws UnsupportedStructureError if modes 0..m-2 are not vacuum.
ProtocolReport enumerate_outcomes(const CoherentOperator& folded,
                                  const TeleportSetup& setup, int n_max,
                                  double reference_scale = 1.0);
ProtocolReport enumerate_outcomes(const CoherentSuperposition& folded,
                                  const TeleportSetup& setup, int n_max);

/// Applies an outcome's correction to its receiver state.
CoherentOperator bob_correction(const ProtocolOutcome& outcome,
                                const TeleportSetup& setup,
                                CorrectionPolicy policy);

/// Builds input and channel, folds, and enumerates outcomes. The oracle
/// engine works in the truncated number basis and is only practical for
/// small m and |alpha|.
ProtocolReport run_protocol(const TeleportSetup& setup,
                            Engine engine = Engine::coherent);

/// Protocol with an arbitrary (possibly mixed) channel state on m+1 modes.
ProtocolReport run_protocol(const TeleportSetup& setup,
                            const CoherentOperator& channel_state,
                            double reference_scale);

/// Probability of a single correctable outcome with photon count n >= 1:
/// e^{-x} x^n / (2 n! (1 -/+ e^{-2x})), x = 2^m |alpha|^2, minus sign for
/// the minus channel (n odd) and plus for the plus channel (n even).
/// Throws DomainError when n has the wrong parity for the channel.
double outcome_probability_closed_form(int m, Complex alpha, Sign channel,
                                       int n);

/// Aggregate probability of every correctable outcome on both counters:
/// 1/2 for the minus channel, (1 - e^{-x})^2 / (2 (1 + e^{-2x})) for plus.
double success_probability_closed_form(int m, Complex alpha, Sign channel);

/// The plus-channel aggregate with the first factor not squared,
/// (1 - e^{-x}) / (2 (1 + e^{-2x})).
double unsquared_success_probability(int m, Complex alpha);

}  // namespace ecsim
