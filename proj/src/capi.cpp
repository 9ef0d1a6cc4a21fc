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

#include "ecsim/ecsim.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <exception>
#include <iostream>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "ecsim/channels.hpp"
#include "ecsim/error.hpp"
#include "ecsim/fock.hpp"
#include "ecsim/noise.hpp"
#include "ecsim/teleport.hpp"
#include "ecsim/verify.hpp"

struct ecsim_state {
  ecsim::CoherentSuperposition value;
};

struct ecsim_report {
  ecsim::ProtocolReport value;
  ecsim::TeleportSetup setup;
};

namespace {

thread_local std::string g_last_error;

ecsim_status to_status(ecsim::ErrorCode code) {
  switch (code) {
    case ecsim::ErrorCode::domain:
      return ECSIM_ERR_DOMAIN;
    case ecsim::ErrorCode::dimension:
      return ECSIM_ERR_DIMENSION;
    case ecsim::ErrorCode::index:
      return ECSIM_ERR_INDEX;
    case ecsim::ErrorCode::unsupported_structure:
      return ECSIM_ERR_UNSUPPORTED;
    case ecsim::ErrorCode::resource:
      return ECSIM_ERR_RESOURCE;
  }
  return ECSIM_ERR_INTERNAL;
}

ecsim_status fail(ecsim_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
ecsim_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return ECSIM_OK;
  } catch (const ecsim::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ECSIM_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(ECSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ECSIM_ERR_INTERNAL, "unknown exception");
  }
}

#define ECSIM_REQUIRE(ptr)                                       \
  do {                                                           \
    if ((ptr) == nullptr) {                                      \
      return fail(ECSIM_ERR_NULL_ARGUMENT, #ptr " is NULL");     \
    }                                                            \
  } while (0)

ecsim::Complex to_cpp(ecsim_complex z) { return {z.re, z.im}; }
ecsim_complex to_c(ecsim::Complex z) { return {z.real(), z.imag()}; }
ecsim::Sign to_cpp(ecsim_sign s) {
  return s == ECSIM_SIGN_PLUS ? ecsim::Sign::plus : ecsim::Sign::minus;
}
ecsim::LossPlacement to_cpp(ecsim_loss_placement p) {
  return p == ECSIM_LOSS_RECEIVER_MODES ? ecsim::LossPlacement::receiver_modes
                                        : ecsim::LossPlacement::all_channel_modes;
}

ecsim::FidelityVariant to_cpp(ecsim_fidelity_variant v) {
  switch (v) {
    case ECSIM_VARIANT_PRINTED:
      return ecsim::FidelityVariant::printed;
    case ECSIM_VARIANT_MISSING_ALPHA:
      return ecsim::FidelityVariant::missing_alpha;
    case ECSIM_VARIANT_LINEAR_LOSS:
      return ecsim::FidelityVariant::linear_loss;
  }
  throw ecsim::DomainError("unknown fidelity variant");
}

ecsim_fidelity_variant to_c(ecsim::FidelityVariant v) {
  switch (v) {
    case ecsim::FidelityVariant::printed:
      return ECSIM_VARIANT_PRINTED;
    case ecsim::FidelityVariant::missing_alpha:
      return ECSIM_VARIANT_MISSING_ALPHA;
    case ecsim::FidelityVariant::linear_loss:
      return ECSIM_VARIANT_LINEAR_LOSS;
  }
  return ECSIM_VARIANT_LINEAR_LOSS;
}

ecsim_correction to_c(ecsim::Correction c) {
  switch (c) {
    case ecsim::Correction::none:
      return ECSIM_CORRECTION_NONE;
    case ecsim::Correction::phase_only:
      return ECSIM_CORRECTION_PHASE_ONLY;
    case ecsim::Correction::phase_plus_sign:
      return ECSIM_CORRECTION_PHASE_PLUS_SIGN;
    case ecsim::Correction::sign_only:
      return ECSIM_CORRECTION_SIGN_ONLY;
  }
  return ECSIM_CORRECTION_NONE;
}

ecsim::TeleportSetup to_cpp(const ecsim_teleport_setup& s) {
  return ecsim::TeleportSetup{
      ecsim::ChannelSpec{s.m, to_cpp(s.alpha), to_cpp(s.sign)}, to_cpp(s.kappa1),
      to_cpp(s.kappa2)};
}

}  // namespace

extern "C" {

const char* ecsim_version(void) { return "1.0.0"; }

const char* ecsim_last_error(void) { return g_last_error.c_str(); }

const char* ecsim_status_name(ecsim_status status) {
  switch (status) {
    case ECSIM_OK:
      return "ok";
    case ECSIM_ERR_DOMAIN:
      return "domain error";
    case ECSIM_ERR_DIMENSION:
      return "dimension error";
    case ECSIM_ERR_INDEX:
      return "index error";
    case ECSIM_ERR_UNSUPPORTED:
      return "unsupported structure";
    case ECSIM_ERR_RESOURCE:
      return "resource limit";
    case ECSIM_ERR_NULL_ARGUMENT:
      return "null argument";
    case ECSIM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* ecsim_correction_name(ecsim_correction correction) {
  switch (correction) {
    case ECSIM_CORRECTION_NONE:
      return ecsim::to_string(ecsim::Correction::none);
    case ECSIM_CORRECTION_PHASE_ONLY:
      return ecsim::to_string(ecsim::Correction::phase_only);
    case ECSIM_CORRECTION_PHASE_PLUS_SIGN:
      return ecsim::to_string(ecsim::Correction::phase_plus_sign);
    case ECSIM_CORRECTION_SIGN_ONLY:
      return ecsim::to_string(ecsim::Correction::sign_only);
  }
  return "unknown";
}

const char* ecsim_fidelity_variant_name(ecsim_fidelity_variant v) {
  switch (v) {
    case ECSIM_VARIANT_PRINTED:
    case ECSIM_VARIANT_MISSING_ALPHA:
    case ECSIM_VARIANT_LINEAR_LOSS:
      return ecsim::to_string(to_cpp(v));
  }
  return "unknown";
}

void ecsim_set_warning_callback(ecsim_warning_callback callback, void* user) {
  if (callback == nullptr) {
    ecsim::fock::set_warning_handler(
        [](const std::string& msg) { std::clog << "ecsim warning: " << msg << '\n'; });
    return;
  }
  ecsim::fock::set_warning_handler(
      [callback, user](const std::string& msg) { callback(msg.c_str(), user); });
}

ecsim_status ecsim_channel_create(int m, ecsim_complex alpha, ecsim_sign sign,
                                  ecsim_state** out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = new ecsim_state{
        ecsim::build_channel(ecsim::ChannelSpec{m, to_cpp(alpha), to_cpp(sign)})};
  });
}

ecsim_status ecsim_input_create(int m, ecsim_complex alpha, ecsim_complex kappa1,
                                ecsim_complex kappa2, ecsim_state** out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = new ecsim_state{
        ecsim::build_input(m, to_cpp(alpha), to_cpp(kappa1), to_cpp(kappa2))};
  });
}

void ecsim_state_destroy(ecsim_state* state) { delete state; }

ecsim_status ecsim_state_mode_count(const ecsim_state* state, size_t* out) {
  ECSIM_REQUIRE(state);
  ECSIM_REQUIRE(out);
  *out = state->value.mode_count();
  return ECSIM_OK;
}

ecsim_status ecsim_state_term_count(const ecsim_state* state, size_t* out) {
  ECSIM_REQUIRE(state);
  ECSIM_REQUIRE(out);
  *out = state->value.size();
  return ECSIM_OK;
}

ecsim_status ecsim_state_term(const ecsim_state* state, size_t index,
                              ecsim_complex* coeff, ecsim_complex* amplitudes,
                              size_t amplitudes_len) {
  ECSIM_REQUIRE(state);
  ECSIM_REQUIRE(coeff);
  ECSIM_REQUIRE(amplitudes);
  if (index >= state->value.size()) return fail(ECSIM_ERR_INDEX, "term index out of range");
  if (amplitudes_len < state->value.mode_count()) {
    return fail(ECSIM_ERR_DIMENSION, "amplitude buffer shorter than the mode count");
  }
  const ecsim::Term& t = state->value.terms()[index];
  *coeff = to_c(t.coeff);
  for (std::size_t k = 0; k < t.label.mode_count(); ++k) amplitudes[k] = to_c(t.label[k]);
  return ECSIM_OK;
}

ecsim_status ecsim_state_inner_product(const ecsim_state* x, const ecsim_state* y,
                                       ecsim_complex* out) {
  ECSIM_REQUIRE(x);
  ECSIM_REQUIRE(y);
  ECSIM_REQUIRE(out);
  return guarded([&] { *out = to_c(ecsim::inner_product(x->value, y->value)); });
}

ecsim_status ecsim_channel_pattern(int m, double* out, size_t len) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    const auto p = ecsim::channel_pattern(m);
    if (len < p.size()) throw ecsim::DimensionError("buffer shorter than m+1");
    std::copy(p.begin(), p.end(), out);
  });
}

ecsim_status ecsim_channel_normalization(int m, ecsim_complex alpha, ecsim_sign sign,
                                         double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::channel_normalization(ecsim::ChannelSpec{m, to_cpp(alpha), to_cpp(sign)});
  });
}

ecsim_status ecsim_concurrence_closed_form(int m, ecsim_complex alpha, ecsim_sign sign,
                                           size_t mode, double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::concurrence_closed_form(
        ecsim::ChannelSpec{m, to_cpp(alpha), to_cpp(sign)}, mode);
  });
}

ecsim_status ecsim_concurrence_oracle(int m, ecsim_complex alpha, ecsim_sign sign,
                                      size_t mode, double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::oracle_concurrence(ecsim::ChannelSpec{m, to_cpp(alpha), to_cpp(sign)},
                                     {mode});
  });
}

ecsim_status ecsim_schmidt_coefficients(const ecsim_state* state, const size_t* side_a,
                                        size_t side_a_len, ecsim_complex out[4]) {
  ECSIM_REQUIRE(state);
  ECSIM_REQUIRE(side_a);
  ECSIM_REQUIRE(out);
  return guarded([&] {
    const ecsim::ModeSet modes(side_a, side_a + side_a_len);
    const ecsim::SchmidtPair p = ecsim::schmidt_coefficients(state->value, modes);
    out[0] = to_c(p.x00);
    out[1] = to_c(p.x01);
    out[2] = to_c(p.x10);
    out[3] = to_c(p.x11);
  });
}

ecsim_status ecsim_teleport_run(const ecsim_teleport_setup* setup, ecsim_engine engine,
                                ecsim_report** out) {
  ECSIM_REQUIRE(setup);
  ECSIM_REQUIRE(out);
  return guarded([&] {
    const ecsim::TeleportSetup s = to_cpp(*setup);
    const auto e = engine == ECSIM_ENGINE_ORACLE ? ecsim::Engine::oracle
                                                 : ecsim::Engine::coherent;
    *out = new ecsim_report{ecsim::run_protocol(s, e), s};
  });
}

ecsim_status ecsim_teleport_run_lossy(const ecsim_teleport_setup* setup, double eta,
                                      ecsim_loss_placement placement,
                                      ecsim_report** out) {
  ECSIM_REQUIRE(setup);
  ECSIM_REQUIRE(out);
  return guarded([&] {
    const ecsim::TeleportSetup s = to_cpp(*setup);
    *out = new ecsim_report{
        ecsim::teleport_through_noise(s, ecsim::LossModel{eta}, to_cpp(placement)), s};
  });
}

void ecsim_report_destroy(ecsim_report* report) { delete report; }

ecsim_status ecsim_report_outcome_count(const ecsim_report* report, size_t* out) {
  ECSIM_REQUIRE(report);
  ECSIM_REQUIRE(out);
  *out = report->value.outcomes.size();
  return ECSIM_OK;
}

ecsim_status ecsim_report_outcome(const ecsim_report* report, size_t index,
                                  ecsim_outcome* out) {
  ECSIM_REQUIRE(report);
  ECSIM_REQUIRE(out);
  if (index >= report->value.outcomes.size()) {
    return fail(ECSIM_ERR_INDEX, "outcome index out of range");
  }
  const ecsim::ProtocolOutcome& o = report->value.outcomes[index];
  *out = ecsim_outcome{o.l,           o.n,        o.probability,        to_c(o.correction),
                       o.heralded ? 1 : 0, o.fidelity, o.reference_fidelity};
  return ECSIM_OK;
}

ecsim_status ecsim_report_summary_get(const ecsim_report* report,
                                      ecsim_report_summary* out) {
  ECSIM_REQUIRE(report);
  ECSIM_REQUIRE(out);
  const ecsim::ProtocolReport& r = report->value;
  *out = ecsim_report_summary{r.success_probability,      r.mean_fidelity,
                              r.mean_reference_fidelity,  r.both_nonzero_probability,
                              r.truncation_bound,         r.total_probability};
  return ECSIM_OK;
}

ecsim_status ecsim_report_corrected_fidelity(const ecsim_report* report, size_t index,
                                             int allow_sign_flip, double* out) {
  ECSIM_REQUIRE(report);
  ECSIM_REQUIRE(out);
  if (index >= report->value.outcomes.size()) {
    return fail(ECSIM_ERR_INDEX, "outcome index out of range");
  }
  return guarded([&] {
    const ecsim::ProtocolOutcome& o = report->value.outcomes[index];
    if (o.probability <= 0.0) throw ecsim::DomainError("outcome has zero probability");
    const auto policy = allow_sign_flip ? ecsim::CorrectionPolicy::allow_sign_flip
                                        : ecsim::CorrectionPolicy::unitary_only;
    const ecsim::TeleportSetup& s = report->setup;
    const ecsim::CoherentSuperposition input =
        ecsim::build_input(s.channel.m, s.channel.alpha, s.kappa1, s.kappa2);
    *out = ecsim::pure_fidelity(input, ecsim::bob_correction(o, s, policy));
  });
}

ecsim_status ecsim_outcome_probability(int m, ecsim_complex alpha, ecsim_sign sign,
                                       int n, double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::outcome_probability_closed_form(m, to_cpp(alpha), to_cpp(sign), n);
  });
}

ecsim_status ecsim_success_probability(int m, ecsim_complex alpha, ecsim_sign sign,
                                       double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::success_probability_closed_form(m, to_cpp(alpha), to_cpp(sign));
  });
}

ecsim_status ecsim_unsquared_success_probability(int m, ecsim_complex alpha,
                                                 double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] { *out = ecsim::unsquared_success_probability(m, to_cpp(alpha)); });
}

ecsim_status ecsim_channel_fidelity_closed_form(int m, ecsim_complex alpha, double eta,
                                                double* out) {
  ECSIM_REQUIRE(out);
  return guarded(
      [&] { *out = ecsim::channel_fidelity_closed_form(m, to_cpp(alpha), eta); });
}

ecsim_status ecsim_channel_fidelity(int m, ecsim_complex alpha, double eta, double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] { *out = ecsim::channel_fidelity(m, to_cpp(alpha), eta); });
}

ecsim_status ecsim_unscaled_channel_fidelity(int m, ecsim_complex alpha, double eta,
                                             double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] { *out = ecsim::unscaled_channel_fidelity(m, to_cpp(alpha), eta); });
}

ecsim_status ecsim_teleported_fidelity_closed_form(int m, ecsim_complex alpha, double eta,
                                                   ecsim_fidelity_variant variant,
                                                   double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::teleported_fidelity_closed_form(m, to_cpp(alpha), eta, to_cpp(variant));
  });
}

ecsim_status ecsim_teleported_fidelity(int m, ecsim_complex alpha, double eta,
                                       ecsim_loss_placement placement, double* out) {
  ECSIM_REQUIRE(out);
  return guarded([&] {
    *out = ecsim::teleported_fidelity(m, to_cpp(alpha), eta, to_cpp(placement));
  });
}

ecsim_status ecsim_adjudicate_teleported_fidelity(int m, const double* alphas,
                                                  size_t alphas_len, const double* etas,
                                                  size_t etas_len,
                                                  ecsim_loss_placement placement,
                                                  ecsim_fidelity_variant* winner,
                                                  double deviations[3], int* definitive) {
  ECSIM_REQUIRE(alphas);
  ECSIM_REQUIRE(etas);
  ECSIM_REQUIRE(winner);
  ECSIM_REQUIRE(deviations);
  ECSIM_REQUIRE(definitive);
  return guarded([&] {
    const ecsim::FidelityAdjudication adj = ecsim::adjudicate_teleported_fidelity(
        m, std::vector<double>(alphas, alphas + alphas_len),
        std::vector<double>(etas, etas + etas_len), to_cpp(placement));
    *winner = to_c(adj.winner);
    std::copy(adj.max_deviation.begin(), adj.max_deviation.end(), deviations);
    *definitive = adj.definitive ? 1 : 0;
  });
}

ecsim_status ecsim_verify(uint64_t seed, int trials, ecsim_check_callback on_check,
                          ecsim_verdict_callback on_verdict, void* user, int* passed,
                          char* first_failure, size_t first_failure_len) {
  ECSIM_REQUIRE(passed);
  if (trials < 1) return fail(ECSIM_ERR_DOMAIN, "trials must be at least 1");
  return guarded([&] {
    const ecsim::VerifyReport report = ecsim::run_verify({seed, trials});
    if (on_check != nullptr) {
      for (const auto& c : report.checks) {
        on_check(c.suite.c_str(), c.name.c_str(), c.passed ? 1 : 0, c.observed,
                 c.tolerance, user);
      }
    }
    if (on_verdict != nullptr) {
      for (const auto& v : report.verdicts) on_verdict(v.c_str(), user);
    }
    *passed = report.passed() ? 1 : 0;
    if (first_failure != nullptr && first_failure_len > 0) {
      first_failure[0] = '\0';
      if (const ecsim::CheckResult* f = report.first_failure()) {
        std::snprintf(first_failure, first_failure_len,
                      "%s/%s (m=%d, alpha=%.9g): observed %.9g, tolerance %.9g",
                      f->suite.c_str(), f->name.c_str(), f->m, f->alpha, f->observed,
                      f->tolerance);
      }
    }
  });
}

ecsim_status ecsim_oracle_equivalence(uint64_t seed, int scenarios, double max_amplitude,
                                      double out[4]) {
  ECSIM_REQUIRE(out);
  if (scenarios < 1) return fail(ECSIM_ERR_DOMAIN, "scenarios must be at least 1");
  return guarded([&] {
    const ecsim::EquivalenceSummary s =
        ecsim::oracle_equivalence(seed, scenarios, max_amplitude);
    out[0] = s.inner_product;
    out[1] = s.beam_splitter;
    out[2] = s.probability;
    out[3] = s.fidelity;
  });
}

}  // extern "C"
