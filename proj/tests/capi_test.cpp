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

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ecsim/ecsim.h"

namespace {

const ecsim_complex kAlpha{1.0, 0.0};

TEST(CApi, VersionAndNames) {
  EXPECT_STRNE(ecsim_version(), "");
  EXPECT_STREQ(ecsim_status_name(ECSIM_ERR_DOMAIN), "domain error");
  EXPECT_STREQ(ecsim_correction_name(ECSIM_CORRECTION_PHASE_ONLY), "phase_only");
  EXPECT_STREQ(ecsim_fidelity_variant_name(ECSIM_VARIANT_LINEAR_LOSS), "linear_loss");
}

TEST(CApi, ChannelLifecycle) {
  ecsim_state* s = nullptr;
  ASSERT_EQ(ecsim_channel_create(3, kAlpha, ECSIM_SIGN_MINUS, &s), ECSIM_OK);
  size_t modes = 0;
  size_t terms = 0;
  ASSERT_EQ(ecsim_state_mode_count(s, &modes), ECSIM_OK);
  ASSERT_EQ(ecsim_state_term_count(s, &terms), ECSIM_OK);
  EXPECT_EQ(modes, 4u);
  EXPECT_EQ(terms, 2u);
  ecsim_complex coeff;
  std::vector<ecsim_complex> amps(modes);
  ASSERT_EQ(ecsim_state_term(s, 0, &coeff, amps.data(), amps.size()), ECSIM_OK);
  EXPECT_NEAR(amps[0].re, 2.0, 1e-15);
  ecsim_complex ip;
  ASSERT_EQ(ecsim_state_inner_product(s, s, &ip), ECSIM_OK);
  EXPECT_NEAR(ip.re, 1.0, 1e-12);
  EXPECT_EQ(ecsim_state_term(s, 7, &coeff, amps.data(), amps.size()), ECSIM_ERR_INDEX);
  EXPECT_EQ(ecsim_state_term(s, 0, &coeff, amps.data(), 1), ECSIM_ERR_DIMENSION);
  ecsim_state_destroy(s);
  ecsim_state_destroy(nullptr);
}

TEST(CApi, ErrorsAreReported) {
  ecsim_state* s = nullptr;
  EXPECT_EQ(ecsim_channel_create(0, kAlpha, ECSIM_SIGN_MINUS, &s), ECSIM_ERR_DOMAIN);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(ecsim_last_error()).find("m must be"), std::string::npos);
  EXPECT_EQ(ecsim_channel_create(3, kAlpha, ECSIM_SIGN_MINUS, nullptr),
            ECSIM_ERR_NULL_ARGUMENT);
  double x = 0.0;
  EXPECT_EQ(ecsim_concurrence_closed_form(4, kAlpha, ECSIM_SIGN_MINUS, 2, &x),
            ECSIM_ERR_DOMAIN);
  EXPECT_EQ(ecsim_channel_fidelity(3, kAlpha, 2.0, &x), ECSIM_ERR_DOMAIN);
}

TEST(CApi, ResourceLimitSurfaces) {
  double c = 0.0;
  EXPECT_EQ(ecsim_concurrence_oracle(6, ecsim_complex{2.0, 0.0}, ECSIM_SIGN_MINUS, 0, &c),
            ECSIM_ERR_RESOURCE);
}

TEST(CApi, Concurrences) {
  double c = 0.0;
  ASSERT_EQ(ecsim_concurrence_closed_form(3, ecsim_complex{0.5, 0.0}, ECSIM_SIGN_PLUS, 0, &c),
            ECSIM_OK);
  EXPECT_NEAR(c, std::tanh(2.0), 1e-12);
  ASSERT_EQ(ecsim_concurrence_oracle(3, ecsim_complex{0.5, 0.0}, ECSIM_SIGN_PLUS, 0, &c),
            ECSIM_OK);
  EXPECT_NEAR(c, std::tanh(2.0), 1e-6);

  ecsim_state* s = nullptr;
  ASSERT_EQ(ecsim_channel_create(4, kAlpha, ECSIM_SIGN_MINUS, &s), ECSIM_OK);
  ecsim_complex x[4];
  const size_t side[] = {0};
  ASSERT_EQ(ecsim_schmidt_coefficients(s, side, 1, x), ECSIM_OK);
  const double det_re = x[0].re * x[3].re - x[0].im * x[3].im -
                        (x[1].re * x[2].re - x[1].im * x[2].im);
  const double det_im = x[0].re * x[3].im + x[0].im * x[3].re -
                        (x[1].re * x[2].im + x[1].im * x[2].re);
  EXPECT_NEAR(2.0 * std::hypot(det_re, det_im), 1.0, 1e-9);
  ecsim_state_destroy(s);
}

TEST(CApi, TeleportReport) {
  const ecsim_teleport_setup setup{3, kAlpha, ECSIM_SIGN_MINUS, {0.6, 0.0}, {0.0, 0.8}};
  ecsim_report* r = nullptr;
  ASSERT_EQ(ecsim_teleport_run(&setup, ECSIM_ENGINE_COHERENT, &r), ECSIM_OK);
  size_t count = 0;
  ASSERT_EQ(ecsim_report_outcome_count(r, &count), ECSIM_OK);
  ASSERT_GT(count, 4u);
  ecsim_report_summary summary;
  ASSERT_EQ(ecsim_report_summary_get(r, &summary), ECSIM_OK);
  EXPECT_NEAR(summary.success_probability, 0.5, 1e-9);
  EXPECT_NEAR(summary.total_probability, 1.0, 1e-9);
  for (size_t k = 0; k < count; ++k) {
    ecsim_outcome o;
    ASSERT_EQ(ecsim_report_outcome(r, k, &o), ECSIM_OK);
    if (o.heralded) EXPECT_NEAR(o.fidelity, 1.0, 1e-9);
    if (o.correction == ECSIM_CORRECTION_PHASE_PLUS_SIGN && o.probability > 1e-12) {
      double f = 0.0;
      ASSERT_EQ(ecsim_report_corrected_fidelity(r, k, 1, &f), ECSIM_OK);
      EXPECT_NEAR(f, 1.0, 1e-9);
    }
  }
  ecsim_outcome o;
  EXPECT_EQ(ecsim_report_outcome(r, count, &o), ECSIM_ERR_INDEX);
  ecsim_report_destroy(r);
}

TEST(CApi, LossyTeleport) {
  const ecsim_teleport_setup setup{3, kAlpha, ECSIM_SIGN_MINUS, {0.6, 0.0}, {0.8, 0.0}};
  ecsim_report* r = nullptr;
  ASSERT_EQ(ecsim_teleport_run_lossy(&setup, 0.7, ECSIM_LOSS_RECEIVER_MODES, &r), ECSIM_OK);
  ecsim_report_summary summary;
  ASSERT_EQ(ecsim_report_summary_get(r, &summary), ECSIM_OK);
  EXPECT_NEAR(summary.total_probability, 1.0, 1e-9);
  ecsim_report_destroy(r);
  EXPECT_EQ(ecsim_teleport_run_lossy(&setup, -0.5, ECSIM_LOSS_RECEIVER_MODES, &r),
            ECSIM_ERR_DOMAIN);
}

TEST(CApi, ClosedForms) {
  double p = 0.0;
  ASSERT_EQ(ecsim_outcome_probability(3, kAlpha, ECSIM_SIGN_MINUS, 1, &p), ECSIM_OK);
  EXPECT_NEAR(p, 0.00134185066, 1e-11);
  ASSERT_EQ(ecsim_success_probability(3, ecsim_complex{0.7, 0.0}, ECSIM_SIGN_PLUS, &p),
            ECSIM_OK);
  EXPECT_NEAR(p, 0.480166713, 1e-9);
  ASSERT_EQ(ecsim_unsquared_success_probability(3, ecsim_complex{0.7, 0.0}, &p), ECSIM_OK);
  EXPECT_NEAR(p, 0.489886599, 1e-9);
  ASSERT_EQ(ecsim_channel_fidelity_closed_form(3, ecsim_complex{0.5, 0.0}, 0.8, &p),
            ECSIM_OK);
  EXPECT_NEAR(p, 0.708094769, 1e-9);
}

TEST(CApi, Adjudication) {
  const double alphas[] = {0.6, 1.2};
  const double etas[] = {0.3, 0.8};
  ecsim_fidelity_variant winner;
  double dev[3];
  int definitive = 0;
  ASSERT_EQ(ecsim_adjudicate_teleported_fidelity(3, alphas, 2, etas, 2,
                                                 ECSIM_LOSS_RECEIVER_MODES, &winner, dev,
                                                 &definitive),
            ECSIM_OK);
  EXPECT_EQ(winner, ECSIM_VARIANT_LINEAR_LOSS);
  EXPECT_EQ(definitive, 1);
  EXPECT_LT(dev[ECSIM_VARIANT_LINEAR_LOSS], 1e-6);
}

TEST(CApi, OracleEquivalence) {
  double out[4];
  ASSERT_EQ(ecsim_oracle_equivalence(5, 10, 1.2, out), ECSIM_OK);
  for (double d : out) EXPECT_LT(d, 1e-6);
}

}  // namespace
