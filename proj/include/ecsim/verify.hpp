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

// Self-check suite shared by the command-line `verify` subcommand and the
// tests: cross-engine agreement, protocol invariants and the closed-form
// adjudications.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecsim {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Observed discrepancy (or value) and the bound it was held to.
  double observed = 0.0;
  double tolerance = 0.0;
  /// Scenario size, used to pick the smallest failing reproducer.
  int m = 0;
  double alpha = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  /// Human-readable adjudication outcomes.
  std::vector<std::string> verdicts;

  bool passed() const;
  /// Failing check with the smallest (m, alpha), or nullptr.
  const CheckResult* first_failure() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Random scenarios per randomized suite.
  int trials = 20;
};

VerifyReport run_verify(const VerifyOptions& options);

/// Largest engine disagreements over a batch of random scenarios.
struct EquivalenceSummary {
  int scenarios = 0;
  double inner_product = 0.0;
  double beam_splitter = 0.0;
  double probability = 0.0;
  double fidelity = 0.0;
  /// Scenario (mode count, largest amplitude) with the worst disagreement.
  int worst_modes = 0;
  double worst_amplitude = 0.0;

  double max() const;
};

/// Random states with 1..4 branches on 1..4 modes and amplitudes up to
/// `max_amplitude`, compared between the coherent algebra and the
/// number-basis engine.
EquivalenceSummary oracle_equivalence(std::uint64_t seed, int scenarios,
                                      double max_amplitude = 1.2);

}  // namespace ecsim
