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

#include "ecsim/teleport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ecsim/error.hpp"
#include "ecsim/fock.hpp"

namespace ecsim {

namespace {

ModeSet mode_range(std::size_t first, std::size_t last_exclusive) {
  ModeSet modes(last_exclusive - first);
  std::iota(modes.begin(), modes.end(), first);
  return modes;
}

// (i, j) pairs of the fold cascade over the sender's modes 0..m.
std::vector<std::pair<std::size_t, std::size_t>> fold_pairs(int m) {
  const auto folded = static_cast<std::size_t>(m - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = folded; k-- > 0;) pairs.emplace_back(folded, k);
  pairs.emplace_back(folded, folded + 1);
  return pairs;
}

template <typename State>
State fold_impl(const State& joint, int m) {
  if (m < 1) throw DomainError("m must be at least 1");
  if (joint.mode_count() != static_cast<std::size_t>(2 * m + 1)) {
    throw DimensionError("fold network expects " + std::to_string(2 * m + 1) +
                         " modes, got " + std::to_string(joint.mode_count()));
  }
  State out = joint;
  for (const auto& [i, j] : fold_pairs(m)) out = beam_splitter(out, i, j);
  return out;
}

bool applies_phase(Correction c) {
  return c == Correction::phase_only || c == Correction::phase_plus_sign;
}

bool applies_sign(Correction c) {
  return c == Correction::phase_plus_sign || c == Correction::sign_only;
}

bool is_heralded(int l, int n, Correction c) {
  return (l == 0) != (n == 0) &&
         (c == Correction::none || c == Correction::phase_only);
}

// Input reference at a rescaled amplitude. Below the smallest accepted
// amplitude the reference degenerates; its limit is vacuum unless the two
// weights cancel, in which case nothing is returned.
bool scaled_reference(const TeleportSetup& setup, double scale,
                      CoherentSuperposition& out) {
  const Complex alpha = setup.channel.alpha * scale;
  if (std::abs(alpha) >= kMinAlpha) {
    out = build_input(setup.channel.m, alpha, setup.kappa1, setup.kappa2);
    return true;
  }
  if (std::abs(setup.kappa1 + setup.kappa2) < 1e-12) return false;
  out = CoherentSuperposition::single(
      CoherentLabel::vacuum(static_cast<std::size_t>(setup.channel.m)));
  return true;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

void finish_report(ProtocolReport& report) {
  double success = 0.0;
  double weighted = 0.0;
  double weighted_ref = 0.0;
  double total = report.both_nonzero_probability;
  for (const auto& o : report.outcomes) {
    total += o.probability;
    if (!o.heralded) continue;
    success += o.probability;
    weighted += o.probability * o.fidelity;
    weighted_ref += o.probability * o.reference_fidelity;
  }
  report.success_probability = success;
  report.mean_fidelity = success > 0.0 ? weighted / success : 0.0;
  report.mean_reference_fidelity = success > 0.0 ? weighted_ref / success : 0.0;
  report.total_probability = total;
}

// Sign of the branch a receiver label belongs to, relative to the input's
// plus branch. Vacuum labels count as plus.
double branch_sign(const CoherentLabel& label, Complex alpha) {
  if (label.mode_count() == 0) return 1.0;
  const double proj = std::real(std::conj(alpha) * label[0]);
  return proj < 0.0 ? -1.0 : 1.0;
}

// Fock-basis engine. The sender's m+1 modes are held as one dense vector per
// channel branch; the receiver's modes are never expanded jointly, only
// through per-mode overlaps of their two possible product states.
ProtocolReport run_oracle(const TeleportSetup& setup) {
  const int m = setup.channel.m;
  const Complex alpha = setup.channel.alpha;
  const CoherentSuperposition input =
      build_input(m, alpha, setup.kappa1, setup.kappa2);
  const CoherentSuperposition channel = build_channel(setup.channel);
  const ModeSet sender_channel{0};
  const ModeSet receiver = mode_range(1, static_cast<std::size_t>(m) + 1);
  const int n_max = outcome_cutoff(m, alpha);
  const auto pairs = fold_pairs(m);

  std::array<CoherentSuperposition, 2> sender;
  std::array<CoherentLabel, 2> bob;
  std::vector<double> peak(static_cast<std::size_t>(m) + 1, 0.0);
  for (std::size_t t = 0; t < 2; ++t) {
    const Term& ch = channel.terms()[t];
    bob[t] = ch.label.restricted(receiver);
    sender[t] = CoherentSuperposition(static_cast<std::size_t>(m) + 1);
    for (const Term& in : input.terms()) {
      CoherentLabel label = tensor(in.label, ch.label.restricted(sender_channel));
      sender[t].add(in.coeff * ch.coeff, label);
      // Track the largest amplitude each mode reaches to size the cutoffs.
      for (std::size_t k = 0; k < peak.size(); ++k) peak[k] = std::max(peak[k], std::abs(label[k]));
      for (const auto& [i, j] : pairs) {
        label = beam_splitter(label, i, j);
        for (std::size_t k = 0; k < peak.size(); ++k) peak[k] = std::max(peak[k], std::abs(label[k]));
      }
    }
  }
  std::vector<int> cutoffs(peak.size());
  for (std::size_t k = 0; k < peak.size(); ++k) cutoffs[k] = fock::cutoff_for_amplitude(peak[k]);
  const auto l_mode = static_cast<std::size_t>(m - 1);
  const auto n_mode = static_cast<std::size_t>(m);
  cutoffs[l_mode] = std::max(cutoffs[l_mode], n_max);
  cutoffs[n_mode] = std::max(cutoffs[n_mode], n_max);

  std::array<fock::FockVector, 2> folded;
  for (std::size_t t = 0; t < 2; ++t) {
    fock::FockVector v = fock::encode(sender[t], cutoffs);
    for (const auto& [i, j] : pairs) v = fock::bs_unitary(v, i, j);
    folded[t] = std::move(v);
  }

  // Receiver overlaps from per-mode number-basis vectors.
  auto mode_overlap = [](Complex a, Complex b) {
    const int c = fock::cutoff_for_amplitude(std::max(std::abs(a), std::abs(b)));
    const auto ca = fock::coherent_coefficients(a, c);
    const auto cb = fock::coherent_coefficients(b, c);
    Complex sum = 0.0;
    for (int k = 0; k <= c; ++k) sum += std::conj(ca[k]) * cb[k];
    return sum;
  };
  auto label_overlap = [&](const CoherentLabel& a, const CoherentLabel& b) {
    Complex prod = 1.0;
    for (std::size_t k = 0; k < a.mode_count(); ++k) prod *= mode_overlap(a[k], b[k]);
    return prod;
  };
  Eigen::Matrix2cd gram;
  for (int t = 0; t < 2; ++t) {
    for (int u = 0; u < 2; ++u) gram(t, u) = label_overlap(bob[t], bob[u]);
  }
  // ref_overlap[t] = <input|bob[t]>.
  std::array<Complex, 2> ref_overlap{};
  for (std::size_t t = 0; t < 2; ++t) {
    for (const Term& in : input.terms()) {
      ref_overlap[t] += std::conj(in.coeff) * label_overlap(in.label, bob[t]);
    }
  }

  auto weights_at = [&](int l, int n) {
    std::vector<int> photons(static_cast<std::size_t>(m) + 1, 0);
    photons[l_mode] = l;
    photons[n_mode] = n;
    return Eigen::Vector2cd(folded[0].at(photons), folded[1].at(photons));
  };
  auto probability_of = [&](const Eigen::Vector2cd& w) {
    return (w.adjoint() * gram * w).value().real();
  };

  ProtocolReport report;
  auto add_row = [&](int l, int n) {
    const Eigen::Vector2cd w = weights_at(l, n);
    ProtocolOutcome o;
    o.l = l;
    o.n = n;
    o.probability = probability_of(w);
    o.correction = required_correction(setup.channel.sign, l, n);
    o.heralded = is_heralded(l, n, o.correction);
    CoherentSuperposition state(static_cast<std::size_t>(m));
    for (std::size_t t = 0; t < 2; ++t) state.add(w(t), bob[t]);
    if (o.probability > 0.0) {
      state = state.scaled(1.0 / std::sqrt(o.probability));
      // The phase shift maps bob[t] onto bob[1 - t].
      const bool swap = applies_phase(o.correction);
      Complex amp = 0.0;
      for (std::size_t t = 0; t < 2; ++t) amp += w(t) * ref_overlap[swap ? 1 - t : t];
      o.fidelity = clamp_unit(std::norm(amp) / o.probability);
    }
    o.reference_fidelity = o.fidelity;
    o.bob_state = CoherentOperator::pure(state);
    report.outcomes.push_back(std::move(o));
  };
  for (int n = 0; n <= n_max; ++n) add_row(0, n);
  for (int l = 1; l <= n_max; ++l) add_row(l, 0);

  double both = 0.0;
  for (int l = 1; l <= cutoffs[l_mode]; ++l) {
    for (int n = 1; n <= cutoffs[n_mode]; ++n) both += probability_of(weights_at(l, n));
  }
  report.both_nonzero_probability = both;
  report.truncation_bound =
      2.0 * fock::poisson_tail(std::abs(alpha) * std::pow(2.0, 0.5 * m), n_max);
  finish_report(report);
  return report;
}

}  // namespace

const char* to_string(Correction c) {
  switch (c) {
    case Correction::none:
      return "none";
    case Correction::phase_only:
      return "phase_only";
    case Correction::phase_plus_sign:
      return "phase_plus_sign";
    case Correction::sign_only:
      return "sign_only";
  }
  return "unknown";
}

CoherentSuperposition fold_network(const CoherentSuperposition& joint, int m) {
  return fold_impl(joint, m);
}

CoherentOperator fold_network(const CoherentOperator& joint, int m) {
  return fold_impl(joint, m);
}

int outcome_cutoff(int m, Complex alpha) {
  return fock::cutoff_for_amplitude(std::pow(2.0, 0.5 * m) * std::abs(alpha));
}

Correction required_correction(Sign channel, int l, int n) {
  if ((l == 0) == (n == 0)) return Correction::none;
  const int count = l == 0 ? n : l;
  // Counts on the channel mode swap the receiver's branches.
  const bool swapped = l == 0;
  const bool exact = (count % 2 == 1) == (channel == Sign::minus);
  if (exact) return swapped ? Correction::phase_only : Correction::none;
  return swapped ? Correction::phase_plus_sign : Correction::sign_only;
}

ProtocolReport enumerate_outcomes(const CoherentOperator& folded,
                                  const TeleportSetup& setup, int n_max,
                                  double reference_scale) {
  validate(setup.channel);
  const int m = setup.channel.m;
  if (folded.mode_count() != static_cast<std::size_t>(2 * m + 1)) {
    throw DimensionError("folded state must have 2m+1 modes");
  }
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  const double tol = 1e-12 * (1.0 + folded.max_abs_amplitude());
  for (const auto& d : folded.dictionary()) {
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(m); ++k) {
      if (std::abs(d[k]) > tol) {
        throw UnsupportedStructureError("fold network left mode " + std::to_string(k) +
                                        " out of vacuum");
      }
    }
  }

  const CoherentOperator reduced =
      trace_out(folded, mode_range(0, static_cast<std::size_t>(m - 1)));
  const CoherentSuperposition ideal =
      build_input(m, setup.channel.alpha, setup.kappa1, setup.kappa2);
  CoherentSuperposition attenuated;
  const bool has_reference = scaled_reference(setup, reference_scale, attenuated);
  const ModeSet bob_modes = mode_range(0, static_cast<std::size_t>(m));

  ProtocolReport report;
  auto add_row = [&](int l, int n, const OperatorProjection& proj) {
    ProtocolOutcome o;
    o.l = l;
    o.n = n;
    o.probability = proj.probability;
    o.correction = required_correction(setup.channel.sign, l, n);
    o.heralded = is_heralded(l, n, o.correction);
    o.bob_state = proj.probability > 0.0 ? proj.state.scaled(1.0 / proj.probability)
                                         : proj.state;
    if (proj.probability > 0.0) {
      const CoherentOperator corrected = applies_phase(o.correction)
                                             ? phase_shift_pi(o.bob_state, bob_modes)
                                             : o.bob_state;
      o.fidelity = clamp_unit(pure_fidelity(ideal, corrected));
      o.reference_fidelity =
          has_reference ? clamp_unit(pure_fidelity(attenuated, corrected)) : 0.0;
    }
    report.outcomes.push_back(std::move(o));
  };

  // Mode 0 of `reduced` is the folded input mode (l), mode 1 the sender's
  // channel mode (n).
  const OperatorProjection l_vacuum = project_photon_number(reduced, 0, 0);
  const OperatorProjection n_vacuum = project_photon_number(reduced, 1, 0);
  double p00 = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    OperatorProjection proj = project_photon_number(l_vacuum.state, 0, n);
    if (n == 0) p00 = proj.probability;
    add_row(0, n, proj);
  }
  for (int l = 1; l <= n_max; ++l) {
    add_row(l, 0, project_photon_number(n_vacuum.state, 0, l));
  }

  report.both_nonzero_probability =
      reduced.trace().real() - l_vacuum.probability - n_vacuum.probability + p00;
  double counter_peak = 0.0;
  for (const auto& d : reduced.dictionary()) {
    counter_peak = std::max({counter_peak, std::abs(d[0]), std::abs(d[1])});
  }
  report.truncation_bound = 2.0 * fock::poisson_tail(counter_peak, n_max);
  finish_report(report);
  return report;
}

ProtocolReport enumerate_outcomes(const CoherentSuperposition& folded,
                                  const TeleportSetup& setup, int n_max) {
  return enumerate_outcomes(CoherentOperator::pure(folded), setup, n_max, 1.0);
}

CoherentOperator bob_correction(const ProtocolOutcome& outcome,
                                const TeleportSetup& setup,
                                CorrectionPolicy policy) {
  CoherentOperator op = outcome.bob_state;
  if (applies_phase(outcome.correction)) {
    op = phase_shift_pi(op, mode_range(0, op.mode_count()));
  }
  if (applies_sign(outcome.correction) && policy == CorrectionPolicy::allow_sign_flip) {
    const auto& dict = op.dictionary();
    Eigen::VectorXd signs(static_cast<Eigen::Index>(dict.size()));
    for (std::size_t j = 0; j < dict.size(); ++j) {
      signs(static_cast<Eigen::Index>(j)) = branch_sign(dict[j], setup.channel.alpha);
    }
    Eigen::MatrixXcd c = signs.asDiagonal() * op.coefficients() * signs.asDiagonal();
    // The flip is not unitary, so the result needs renormalizing.
    op = CoherentOperator(op.mode_count(), dict, std::move(c)).normalized();
  }
  return op;
}

ProtocolReport run_protocol(const TeleportSetup& setup, Engine engine) {
  validate(setup.channel);
  if (engine == Engine::oracle) return run_oracle(setup);
  const int m = setup.channel.m;
  const CoherentSuperposition joint =
      tensor(build_input(m, setup.channel.alpha, setup.kappa1, setup.kappa2),
             build_channel(setup.channel));
  return enumerate_outcomes(fold_network(joint, m), setup,
                            outcome_cutoff(m, setup.channel.alpha));
}

ProtocolReport run_protocol(const TeleportSetup& setup,
                            const CoherentOperator& channel_state,
                            double reference_scale) {
  validate(setup.channel);
  const int m = setup.channel.m;
  if (channel_state.mode_count() != static_cast<std::size_t>(m + 1)) {
    throw DimensionError("channel state must have m+1 modes");
  }
  const CoherentOperator joint = tensor(
      CoherentOperator::pure(
          build_input(m, setup.channel.alpha, setup.kappa1, setup.kappa2)),
      channel_state);
  return enumerate_outcomes(fold_network(joint, m), setup,
                            outcome_cutoff(m, setup.channel.alpha), reference_scale);
}

double outcome_probability_closed_form(int m, Complex alpha, Sign channel,
                                       int n) {
  validate(ChannelSpec{m, alpha, channel});
  if (n < 1) throw DomainError("photon count must be at least 1");
  const bool odd = n % 2 == 1;
  if (odd != (channel == Sign::minus)) {
    throw DomainError("photon count has the wrong parity for this channel");
  }
  const double x = std::ldexp(std::norm(alpha), m);
  const double log_denominator = channel == Sign::minus
                                     ? std::log(-std::expm1(-2.0 * x))
                                     : std::log1p(std::exp(-2.0 * x));
  return std::exp(-x + n * std::log(x) - std::lgamma(n + 1.0) - std::log(2.0) -
                  log_denominator);
}

double success_probability_closed_form(int m, Complex alpha, Sign channel) {
  validate(ChannelSpec{m, alpha, channel});
  if (channel == Sign::minus) return 0.5;
  const double x = std::ldexp(std::norm(alpha), m);
  const double a = -std::expm1(-x);
  return a * a / (2.0 * (1.0 + std::exp(-2.0 * x)));
}

double unsquared_success_probability(int m, Complex alpha) {
  validate(ChannelSpec{m, alpha, Sign::plus});
  const double x = std::ldexp(std::norm(alpha), m);
  return -std::expm1(-x) / (2.0 * (1.0 + std::exp(-2.0 * x)));
}

}  // namespace ecsim
