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

#include "ecsim/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecsim/error.hpp"
#include "ecsim/fock.hpp"

namespace ecsim {

namespace {

// 1 - exp(-x) without cancellation.
double one_minus_exp(double x) { return -std::expm1(-x); }

CoherentLabel pattern_label(const std::vector<double>& pattern, Complex alpha) {
  std::vector<Complex> amps;
  amps.reserve(pattern.size());
  for (double p : pattern) amps.push_back(p * alpha);
  return CoherentLabel(std::move(amps));
}

}  // namespace

void validate(const ChannelSpec& spec) {
  if (spec.m < 1) throw DomainError("m must be at least 1");
  if (!(std::abs(spec.alpha) >= kMinAlpha)) {
    throw DomainError("|alpha| must be at least 1e-8");
  }
}

std::vector<double> channel_pattern(int m) {
  if (m < 1) throw DomainError("m must be at least 1");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(m) + 1);
  for (int k = m - 1; k >= 0; --k) p.push_back(std::pow(2.0, 0.5 * k));
  p.push_back(1.0);
  return p;
}

std::vector<double> input_pattern(int m) {
  if (m < 1) throw DomainError("m must be at least 1");
  return m == 1 ? std::vector<double>{1.0} : channel_pattern(m - 1);
}

double channel_normalization(const ChannelSpec& spec) {
  validate(spec);
  const double x = std::ldexp(std::norm(spec.alpha), spec.m + 1);
  const double bracket = spec.sign == Sign::plus ? 2.0 * (1.0 + std::exp(-x))
                                                 : 2.0 * one_minus_exp(x);
  return 1.0 / std::sqrt(bracket);
}

CoherentSuperposition build_channel(const ChannelSpec& spec) {
  validate(spec);
  const CoherentLabel plus = pattern_label(channel_pattern(spec.m), spec.alpha);
  CoherentSuperposition s(plus.mode_count());
  s.add(1.0, plus);
  s.add(sign_value(spec.sign), plus.negated());
  return s.normalized();
}

CoherentSuperposition build_input(int m, Complex alpha, Complex kappa1,
                                  Complex kappa2) {
  validate(ChannelSpec{m, alpha, Sign::plus});
  if (kappa1 == 0.0 && kappa2 == 0.0) {
    throw DomainError("input weights must not both vanish");
  }
  const CoherentLabel plus = pattern_label(input_pattern(m), alpha);
  CoherentSuperposition s(plus.mode_count());
  s.add(kappa1, plus);
  s.add(kappa2, plus.negated());
  return s.normalized();
}

double concurrence_closed_form(const ChannelSpec& spec, std::size_t mode) {
  validate(spec);
  const double a2 = std::norm(spec.alpha);
  const double s = sign_value(spec.sign);
  if (mode == 0) {
    return spec.sign == Sign::minus ? 1.0 : std::tanh(std::ldexp(a2, spec.m));
  }
  if (spec.m == 3 && mode <= 3) {
    const double denom = 1.0 + s * std::exp(-16.0 * a2);
    if (mode == 1) {
      return std::sqrt(one_minus_exp(8.0 * a2)) *
             std::sqrt(one_minus_exp(24.0 * a2)) / denom;
    }
    return std::sqrt(one_minus_exp(4.0 * a2)) *
           std::sqrt(one_minus_exp(28.0 * a2)) / denom;
  }
  throw DomainError("no closed-form concurrence for mode " +
                    std::to_string(mode) + " at m = " + std::to_string(spec.m));
}

double oracle_concurrence(const ChannelSpec& spec, const ModeSet& side_a) {
  return fock::wootters_concurrence(
      fock::reduce_to_qubits(build_channel(spec), side_a));
}

double SchmidtPair::concurrence() const {
  const double norm =
      std::norm(x00) + std::norm(x01) + std::norm(x10) + std::norm(x11);
  return 2.0 * std::abs(x00 * x11 - x01 * x10) / norm;
}

SchmidtPair schmidt_coefficients(const CoherentSuperposition& state,
                                 const ModeSet& side_a) {
  const CoherentSuperposition s = state.deduplicated();
  if (s.size() != 2) {
    throw UnsupportedStructureError(
        "Schmidt coefficients need exactly two distinct branches");
  }
  ModeSet side_b;
  for (std::size_t k = 0; k < s.mode_count(); ++k) {
    bool in_a = false;
    for (std::size_t a : side_a) {
      if (a >= s.mode_count()) throw IndexError("partition mode out of range");
      in_a = in_a || a == k;
    }
    if (!in_a) side_b.push_back(k);
  }
  if (side_a.empty() || side_b.empty()) {
    throw DomainError("bipartition needs modes on both sides");
  }
  const Complex c1 = s.terms()[0].coeff;
  const Complex c2 = s.terms()[1].coeff;
  const CoherentLabel& p = s.terms()[0].label;
  const CoherentLabel& q = s.terms()[1].label;

  const Complex pa = overlap(p.restricted(side_a), q.restricted(side_a));
  const Complex pb = overlap(p.restricted(side_b), q.restricted(side_b));
  const double sa = std::sqrt(std::max(0.0, 1.0 - std::norm(pa)));
  const double sb = std::sqrt(std::max(0.0, 1.0 - std::norm(pb)));
  if (sa < 1e-9 || sb < 1e-9) {
    throw UnsupportedStructureError(
        "branches are not linearly independent on one side of the partition");
  }
  const double norm = std::sqrt(s.squared_norm());
  return SchmidtPair{(c1 + c2 * pa * pb) / norm, c2 * pa * sb / norm,
                     c2 * sa * pb / norm, c2 * sa * sb / norm};
}

SchmidtPair schmidt_closed_form(const ChannelSpec& spec) {
  const double a = channel_normalization(spec);
  const double c = sign_value(spec.sign);
  const double x = std::ldexp(std::norm(spec.alpha), spec.m);
  const double overlap_half = std::exp(-x);
  const double root = std::sqrt(one_minus_exp(2.0 * x));
  const double x00 = spec.sign == Sign::minus ? a * one_minus_exp(2.0 * x)
                                              : a * (1.0 + std::exp(-2.0 * x));
  return SchmidtPair{x00, c * a * overlap_half * root, c * a * overlap_half * root,
                     c * a * root * root};
}

}  // namespace ecsim
