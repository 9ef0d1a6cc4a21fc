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

// Exact algebra over finite superpositions of multimode coherent states.
//
// Every state in this library is a finite sum of coherent product states
// |a_0, a_1, ..., a_{k-1}>, so inner products, linear-optics transformations
// and photon-number projections all have closed forms and no basis
// truncation is ever needed. Coherent states use the standard normalization
//
//   |a> = exp(-|a|^2 / 2) sum_n a^n / sqrt(n!) |n>,
//
// which gives <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ecsim {

using Complex = std::complex<double>;
using ModeSet = std::vector<std::size_t>;

/// Two labels are the same coherent state when every amplitude agrees to this.
inline constexpr double kAmplitudeTolerance = 1e-12;

/// Amplitudes of one multimode coherent product state. A label with zero
/// modes represents the scalar 1 (what is left after every mode has been
/// measured or traced out).
class CoherentLabel {
 public:
  CoherentLabel() = default;
  /// Throws DomainError if any amplitude is NaN or infinite.
  explicit CoherentLabel(std::vector<Complex> amps);

  static CoherentLabel vacuum(std::size_t mode_count);

  std::size_t mode_count() const { return amps_.size(); }
  const Complex& operator[](std::size_t mode) const { return amps_[mode]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  /// Copy with one amplitude replaced.
  CoherentLabel with(std::size_t mode, Complex amp) const;
  /// Copy keeping only `modes`, in the order given.
  CoherentLabel restricted(const ModeSet& modes) const;
  /// Copy with `modes` removed; remaining modes keep their relative order.
  CoherentLabel without(const ModeSet& modes) const;
  CoherentLabel scaled(double factor) const;
  CoherentLabel negated() const { return scaled(-1.0); }

  bool approx_equal(const CoherentLabel& other,
                    double tol = kAmplitudeTolerance) const;

  /// Largest |a_k|; 0 for the empty label.
  double max_abs_amplitude() const;
  /// Sum of |a_k|^2, the mean photon number of the product state.
  double energy() const;

 private:
  std::vector<Complex> amps_;
};

CoherentLabel tensor(const CoherentLabel& a, const CoherentLabel& b);

/// Single-mode overlap <a|b>.
Complex overlap(Complex a, Complex b);
/// Product of single-mode overlaps; labels must share a mode count.
Complex overlap(const CoherentLabel& a, const CoherentLabel& b);

/// Fock amplitude <n|beta> of a single-mode coherent state.
Complex number_amplitude(Complex beta, int n);

struct Term {
  Complex coeff;
  CoherentLabel label;
};

/// Finite complex-weighted sum of coherent product states.
class CoherentSuperposition {
 public:
  explicit CoherentSuperposition(std::size_t mode_count = 0)
      : mode_count_(mode_count) {}
  /// Throws DimensionError if a label has the wrong mode count.
  CoherentSuperposition(std::size_t mode_count, std::vector<Term> terms);

  static CoherentSuperposition single(CoherentLabel label,
                                      Complex coeff = 1.0);

  void add(Complex coeff, CoherentLabel label);

  std::size_t mode_count() const { return mode_count_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// <self|self>.
  double squared_norm() const;
  /// Throws DomainError when the squared norm is below 1e-300.
  CoherentSuperposition normalized() const;
  CoherentSuperposition scaled(Complex factor) const;
  /// Merges labels equal within `tol` per mode and drops zero coefficients.
  CoherentSuperposition deduplicated(double tol = kAmplitudeTolerance) const;

  /// Largest amplitude magnitude over all terms and modes.
  double max_abs_amplitude() const;

  template <typename F>
  CoherentSuperposition map_labels(std::size_t new_mode_count, F&& f) const {
    CoherentSuperposition out(new_mode_count);
    for (const auto& t : terms_) out.add(t.coeff, f(t.label));
    return out;
  }

 private:
  std::size_t mode_count_ = 0;
  std::vector<Term> terms_;
};

CoherentSuperposition operator+(const CoherentSuperposition& a,
                                const CoherentSuperposition& b);
CoherentSuperposition tensor(const CoherentSuperposition& a,
                             const CoherentSuperposition& b);

/// <x|y>. Throws DimensionError on a mode-count mismatch.
Complex inner_product(const CoherentSuperposition& x,
                      const CoherentSuperposition& y);

/// 50/50 beam splitter: (mu, nu) at modes (i, j) becomes
/// ((mu + nu)/sqrt2, (mu - nu)/sqrt2). Throws IndexError for i == j or an
/// out-of-range mode.
CoherentLabel beam_splitter(const CoherentLabel& label, std::size_t i,
                            std::size_t j);
CoherentSuperposition beam_splitter(const CoherentSuperposition& state,
                                    std::size_t i, std::size_t j);

/// exp(-i pi a^dag a) on every listed mode, i.e. a -> -a.
CoherentLabel phase_shift_pi(const CoherentLabel& label, const ModeSet& modes);
CoherentSuperposition phase_shift_pi(const CoherentSuperposition& state,
                                     const ModeSet& modes);

struct PhotonProjection {
  /// Unnormalized conditional state on the remaining modes.
  CoherentSuperposition state;
  /// Squared norm of `state`, the Born probability for a normalized input.
  double probability;
};

/// Projects `mode` onto |n> and removes it. Throws DomainError for n < 0.
PhotonProjection project_photon_number(const CoherentSuperposition& state,
                                       std::size_t mode, int n);

/// Gram matrix G(j, k) = <labels[j]|labels[k]>.
Eigen::MatrixXcd gram_matrix(std::span<const CoherentLabel> labels);

/// rho = sum_jk coeffs(j, k) |dict[j]><dict[k]|.
class CoherentOperator {
 public:
  CoherentOperator() = default;
  /// Throws DimensionError on a non-square matrix, a size mismatch with the
  /// dictionary, or labels with differing mode counts.
  CoherentOperator(std::size_t mode_count, std::vector<CoherentLabel> dict,
                   Eigen::MatrixXcd coeffs);

  /// |state><state|.
  static CoherentOperator pure(const CoherentSuperposition& state);

  std::size_t mode_count() const { return mode_count_; }
  const std::vector<CoherentLabel>& dictionary() const { return dict_; }
  const Eigen::MatrixXcd& coefficients() const { return coeffs_; }

  /// tr(rho), evaluated with the non-orthogonal Gram matrix.
  Complex trace() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Throws DomainError when the trace vanishes.
  CoherentOperator normalized() const;
  CoherentOperator scaled(Complex factor) const;
  CoherentOperator deduplicated(double tol = kAmplitudeTolerance) const;
  double max_abs_amplitude() const;

  template <typename F>
  CoherentOperator map_labels(std::size_t new_mode_count, F&& f) const {
    std::vector<CoherentLabel> dict;
    dict.reserve(dict_.size());
    for (const auto& d : dict_) dict.push_back(f(d));
    return CoherentOperator(new_mode_count, std::move(dict), coeffs_);
  }

 private:
  std::size_t mode_count_ = 0;
  std::vector<CoherentLabel> dict_;
  Eigen::MatrixXcd coeffs_;
};

CoherentOperator tensor(const CoherentOperator& a, const CoherentOperator& b);
CoherentOperator beam_splitter(const CoherentOperator& op, std::size_t i,
                               std::size_t j);
CoherentOperator phase_shift_pi(const CoherentOperator& op,
                                const ModeSet& modes);

struct OperatorProjection {
  CoherentOperator state;
  double probability;
};

/// <n|_mode rho |n>_mode, with the mode removed.
OperatorProjection project_photon_number(const CoherentOperator& op,
                                         std::size_t mode, int n);

/// Partial trace over `modes`. Tracing every mode yields a zero-mode 1x1
/// operator holding the trace.
CoherentOperator trace_out(const CoherentOperator& op, const ModeSet& modes);

/// tr(a b). Throws DimensionError on a mode-count mismatch.
double operator_fidelity(const CoherentOperator& a, const CoherentOperator& b);

/// <x|rho|x>.
double pure_fidelity(const CoherentSuperposition& x,
                     const CoherentOperator& rho);

}  // namespace ecsim
