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

// Brute-force photon-number-basis engine.
//
// Everything here works on dense, truncated Fock-space arrays and never calls
// the closed-form coherent overlap. Coherent states enter only through the
// series recursion c_n = c_{n-1} beta / sqrt(n), so agreement with
// ecsim/coherent.hpp is an independent check of that module.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ecsim/coherent.hpp"

namespace ecsim::fock {

/// Photon-number cutoff that keeps the Poisson tail of an amplitude up to
/// `beta_max` below 1e-10: ceil(|b|^2 + 10 sqrt(|b|^2 + 1) + 20).
int cutoff_for_amplitude(double beta_max);

/// sum_{n > cutoff} exp(-|b|^2) |b|^{2n} / n!.
double poisson_tail(double beta_abs, int cutoff);

/// Dense allocations above this many amplitudes throw ResourceError.
inline constexpr std::size_t kMaxDenseAmplitudes = std::size_t{1} << 25;

using WarningHandler = std::function<void(const std::string&)>;
/// Receives non-fatal diagnostics (e.g. a cutoff below the rule of thumb).
/// The default handler writes to std::clog. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

/// Truncated Fock coefficients <n|beta>, n = 0..cutoff.
std::vector<Complex> coherent_coefficients(Complex beta, int cutoff);

/// Dense state over a product of truncated modes. Mode 0 is the most
/// significant index; mode k holds photon numbers 0..cutoffs[k].
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::vector<int> cutoffs);

  static FockVector vacuum(std::vector<int> cutoffs);

  std::size_t mode_count() const { return cutoffs_.size(); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  std::size_t size() const { return data_.size(); }
  std::size_t stride(std::size_t mode) const { return strides_[mode]; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  /// Amplitude of |n_0, ..., n_{k-1}>.
  Complex at(const std::vector<int>& photons) const;

  double squared_norm() const;

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> data_;
};

Complex inner_product(const FockVector& x, const FockVector& y);

/// Expands a coherent superposition in the truncated number basis. A cutoff
/// below cutoff_for_amplitude() of the state's largest amplitude is reported
/// through the warning handler but not rejected.
FockVector encode(const CoherentSuperposition& state, int cutoff);
FockVector encode(const CoherentSuperposition& state,
                  const std::vector<int>& cutoffs);

/// 50/50 beam splitter with a_i^dag -> (a_i^dag + a_j^dag)/sqrt2 and
/// a_j^dag -> (a_i^dag - a_j^dag)/sqrt2, which maps |mu>|nu> to
/// |(mu+nu)/sqrt2>|(mu-nu)/sqrt2> exactly. Output components beyond the
/// cutoffs are discarded.
FockVector bs_unitary(const FockVector& v, std::size_t i, std::size_t j);

/// (-1)^{n} on each listed mode.
FockVector phase_shift_pi(const FockVector& v, const ModeSet& modes);

struct FockProjection {
  FockVector state;
  double probability;
};

/// Projects `mode` onto |n> and removes it. Throws DomainError if n exceeds
/// the mode's cutoff or is negative.
FockProjection measure_number(const FockVector& v, std::size_t mode, int n);

/// Dense density matrix over a truncated product basis. Intended for small
/// systems only.
class FockOperator {
 public:
  FockOperator() = default;
  FockOperator(std::vector<int> cutoffs, Eigen::MatrixXcd data);

  static FockOperator pure(const FockVector& v);
  /// Expands every dictionary label and sums C_jk |d_j><d_k|.
  static FockOperator encode(const CoherentOperator& op,
                             const std::vector<int>& cutoffs);

  const std::vector<int>& cutoffs() const { return cutoffs_; }
  std::size_t mode_count() const { return cutoffs_.size(); }
  const Eigen::MatrixXcd& data() const { return data_; }

  Complex trace() const { return data_.trace(); }
  bool is_hermitian(double tol = 1e-10) const;

 private:
  std::vector<int> cutoffs_;
  Eigen::MatrixXcd data_;
};

/// Amplitude damping with transmissivity `eta` on each listed mode, applied
/// through its Kraus operators.
FockOperator apply_loss(const FockOperator& rho, double eta,
                        const ModeSet& modes);
/// Partial trace over `modes`.
FockOperator trace_out(const FockOperator& rho, const ModeSet& modes);
/// tr(a b).
double trace_product(const FockOperator& a, const FockOperator& b);
/// <v|rho|v>.
double expectation(const FockVector& v, const FockOperator& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit density
/// matrix. Throws DomainError unless the input is Hermitian, unit-trace and
/// positive semidefinite to 1e-9.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

/// Two-qubit reduction of a state supported on two product branches. The
/// qubit basis on each side is |0> = plus branch, |1> = minus branch
/// orthogonalized against it, built numerically from truncated Fock vectors.
/// `side_a` lists the modes of the first qubit; the rest form the second.
/// Throws UnsupportedStructureError when the branches coincide on a side or
/// the state leaves the two-branch span.
Eigen::Matrix4cd reduce_to_qubits(const FockVector& state,
                                  const CoherentLabel& plus_branch,
                                  const CoherentLabel& minus_branch,
                                  const ModeSet& side_a);

/// Same reduction for a two-term coherent superposition: the state is first
/// expanded in the number basis with per-mode cutoffs from the cutoff rule.
Eigen::Matrix4cd reduce_to_qubits(const CoherentSuperposition& state,
                                  const ModeSet& side_a);

/// Per-mode cutoffs from cutoff_for_amplitude() applied to the largest
/// amplitude each mode takes in `state`.
std::vector<int> cutoffs_for(const CoherentSuperposition& state);
std::vector<int> cutoffs_for(const CoherentOperator& op);

/// <ref| L(rho) |ref>, where L is amplitude damping `eta` on `lossy_modes`.
/// Evaluated mode by mode with truncated Fock vectors and explicit Kraus
/// sums, so it scales to states far beyond what a dense FockOperator holds.
double lossy_expectation(const CoherentSuperposition& ref,
                         const CoherentOperator& rho, double eta,
                         const ModeSet& lossy_modes);

}  // namespace ecsim::fock
