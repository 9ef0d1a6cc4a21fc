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

// Entangled coherent channels and the states they teleport.
//
// A channel for m teleported modes lives on m+1 modes with amplitudes
//
//   (2^{(m-1)/2}, 2^{(m-2)/2}, ..., sqrt2, 1, 1) * alpha,
//
// and is A (|+pattern> +/- |-pattern>). Mode 0 stays with the sender; modes
// 1..m go to the receiver. The m-mode input state uses the pattern of the
// (m-1)-mode channel, so after the fold network its branches line up with the
// receiver's modes.

#pragma once

#include <cstddef>
#include <vector>

#include "ecsim/coherent.hpp"

namespace ecsim {

enum class Sign { plus, minus };

/// +1 or -1.
inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

/// Smallest |alpha| accepted by every constructor.
inline constexpr double kMinAlpha = 1e-8;

struct ChannelSpec {
  int m = 1;
  Complex alpha = 1.0;
  Sign sign = Sign::minus;
};

/// Throws DomainError unless m >= 1 and |alpha| >= kMinAlpha.
void validate(const ChannelSpec& spec);

/// Amplitude multipliers of the (m+1)-mode channel's plus branch.
std::vector<double> channel_pattern(int m);
/// Amplitude multipliers of the m-mode input's plus branch: (1) for m = 1,
/// channel_pattern(m - 1) otherwise.
std::vector<double> input_pattern(int m);

/// [2 (1 +/- exp(-2^{m+1} |alpha|^2))]^{-1/2}.
double channel_normalization(const ChannelSpec& spec);

/// Normalized channel; the plus branch is the first term.
CoherentSuperposition build_channel(const ChannelSpec& spec);

/// Normalized kappa1 |+pattern alpha> + kappa2 |-pattern alpha> on m modes.
/// Throws DomainError when both weights vanish.
CoherentSuperposition build_input(int m, Complex alpha, Complex kappa1,
                                  Complex kappa2);

/// Closed-form concurrence between channel mode `mode` and the other modes.
/// Mode 0 is defined for every m (1 for minus, tanh(2^m |alpha|^2) for
/// plus); modes 1..3 are defined for m = 3 only. Anything else throws
/// DomainError.
double concurrence_closed_form(const ChannelSpec& spec, std::size_t mode);

/// Wootters concurrence of the channel's two-qubit reduction across
/// `side_a` | rest, computed in the truncated number basis.
double oracle_concurrence(const ChannelSpec& spec, const ModeSet& side_a);

/// Coefficients of a two-branch state in the basis |0> = plus branch,
/// |1> = minus branch orthogonalized against it, on each side.
struct SchmidtPair {
  Complex x00;
  Complex x01;
  Complex x10;
  Complex x11;

  /// 2 |x00 x11 - x01 x10|.
  double concurrence() const;
};

/// Throws UnsupportedStructureError unless the state has exactly two distinct
/// branches that differ on both sides of the partition.
SchmidtPair schmidt_coefficients(const CoherentSuperposition& state,
                                 const ModeSet& side_a);

/// Closed-form coefficients of the channel across mode 0 | rest.
SchmidtPair schmidt_closed_form(const ChannelSpec& spec);

}  // namespace ecsim
