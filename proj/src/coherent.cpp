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

#include "ecsim/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecsim/error.hpp"

namespace ecsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_mode(std::size_t mode, std::size_t mode_count) {
  if (mode >= mode_count) {
    throw IndexError("mode index " + std::to_string(mode) +
                     " out of range for " + std::to_string(mode_count) +
                     " modes");
  }
}

void check_modes(const ModeSet& modes, std::size_t mode_count) {
  for (std::size_t m : modes) check_mode(m, mode_count);
}

void check_pair(std::size_t i, std::size_t j, std::size_t mode_count) {
  check_mode(i, mode_count);
  check_mode(j, mode_count);
  if (i == j) throw IndexError("beam splitter needs two distinct modes");
}

bool contains(const ModeSet& modes, std::size_t m) {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

// Index of the first label in `dict` equal to `label`, or dict.size().
std::size_t find_label(const std::vector<CoherentLabel>& dict,
                       const CoherentLabel& label, double tol) {
  for (std::size_t k = 0; k < dict.size(); ++k) {
    if (dict[k].approx_equal(label, tol)) return k;
  }
  return dict.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// CoherentLabel

CoherentLabel::CoherentLabel(std::vector<Complex> amps)
    : amps_(std::move(amps)) {
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DomainError("coherent amplitude must be finite");
    }
  }
}

CoherentLabel CoherentLabel::vacuum(std::size_t mode_count) {
  return CoherentLabel(std::vector<Complex>(mode_count, 0.0));
}

CoherentLabel CoherentLabel::with(std::size_t mode, Complex amp) const {
  check_mode(mode, mode_count());
  auto amps = amps_;
  amps[mode] = amp;
  return CoherentLabel(std::move(amps));
}

CoherentLabel CoherentLabel::restricted(const ModeSet& modes) const {
  check_modes(modes, mode_count());
  std::vector<Complex> amps;
  amps.reserve(modes.size());
  for (std::size_t m : modes) amps.push_back(amps_[m]);
  return CoherentLabel(std::move(amps));
}

CoherentLabel CoherentLabel::without(const ModeSet& modes) const {
  check_modes(modes, mode_count());
  std::vector<Complex> amps;
  amps.reserve(amps_.size());
  for (std::size_t m = 0; m < amps_.size(); ++m) {
    if (!contains(modes, m)) amps.push_back(amps_[m]);
  }
  return CoherentLabel(std::move(amps));
}

CoherentLabel CoherentLabel::scaled(double factor) const {
  auto amps = amps_;
  for (auto& a : amps) a *= factor;
  return CoherentLabel(std::move(amps));
}

bool CoherentLabel::approx_equal(const CoherentLabel& other,
                                 double tol) const {
  if (other.mode_count() != mode_count()) return false;
  for (std::size_t m = 0; m < amps_.size(); ++m) {
    if (std::abs(amps_[m].real() - other.amps_[m].real()) > tol ||
        std::abs(amps_[m].imag() - other.amps_[m].imag()) > tol) {
      return false;
    }
  }
  return true;
}

double CoherentLabel::max_abs_amplitude() const {
  double best = 0.0;
  for (const auto& a : amps_) best = std::max(best, std::abs(a));
  return best;
}

double CoherentLabel::energy() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

CoherentLabel tensor(const CoherentLabel& a, const CoherentLabel& b) {
  std::vector<Complex> amps(a.amplitudes().begin(), a.amplitudes().end());
  amps.insert(amps.end(), b.amplitudes().begin(), b.amplitudes().end());
  return CoherentLabel(std::move(amps));
}

Complex overlap(Complex a, Complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

Complex overlap(const CoherentLabel& a, const CoherentLabel& b) {
  if (a.mode_count() != b.mode_count()) {
    throw DimensionError("overlap of labels with different mode counts");
  }
  // Summing exponents keeps tiny overlaps from underflowing mode by mode.
  Complex exponent = 0.0;
  for (std::size_t m = 0; m < a.mode_count(); ++m) {
    exponent += -0.5 * std::norm(a[m]) - 0.5 * std::norm(b[m]) +
                std::conj(a[m]) * b[m];
  }
  return std::exp(exponent);
}

Complex number_amplitude(Complex beta, int n) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  const double r = std::abs(beta);
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_mag =
      -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
  return std::polar(std::exp(log_mag), n * std::arg(beta));
}

// ---------------------------------------------------------------------------
// CoherentSuperposition

CoherentSuperposition::CoherentSuperposition(std::size_t mode_count,
                                             std::vector<Term> terms)
    : mode_count_(mode_count) {
  terms_.reserve(terms.size());
  for (auto& t : terms) add(t.coeff, std::move(t.label));
}

CoherentSuperposition CoherentSuperposition::single(CoherentLabel label,
                                                    Complex coeff) {
  CoherentSuperposition s(label.mode_count());
  s.add(coeff, std::move(label));
  return s;
}

void CoherentSuperposition::add(Complex coeff, CoherentLabel label) {
  if (label.mode_count() != mode_count_) {
    throw DimensionError("label has " + std::to_string(label.mode_count()) +
                         " modes, superposition has " +
                         std::to_string(mode_count_));
  }
  terms_.push_back({coeff, std::move(label)});
}

double CoherentSuperposition::squared_norm() const {
  return inner_product(*this, *this).real();
}

CoherentSuperposition CoherentSuperposition::normalized() const {
  const double n2 = squared_norm();
  if (!(n2 > 1e-300)) throw DomainError("cannot normalize a null state");
  return scaled(1.0 / std::sqrt(n2));
}

CoherentSuperposition CoherentSuperposition::scaled(Complex factor) const {
  CoherentSuperposition out(mode_count_);
  for (const auto& t : terms_) out.add(t.coeff * factor, t.label);
  return out;
}

CoherentSuperposition CoherentSuperposition::deduplicated(double tol) const {
  std::vector<CoherentLabel> labels;
  std::vector<Complex> coeffs;
  for (const auto& t : terms_) {
    const std::size_t k = find_label(labels, t.label, tol);
    if (k == labels.size()) {
      labels.push_back(t.label);
      coeffs.push_back(t.coeff);
    } else {
      coeffs[k] += t.coeff;
    }
  }
  CoherentSuperposition out(mode_count_);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (coeffs[k] != 0.0) out.add(coeffs[k], std::move(labels[k]));
  }
  return out;
}

double CoherentSuperposition::max_abs_amplitude() const {
  double best = 0.0;
  for (const auto& t : terms_) best = std::max(best, t.label.max_abs_amplitude());
  return best;
}

CoherentSuperposition operator+(const CoherentSuperposition& a,
                                const CoherentSuperposition& b) {
  if (a.mode_count() != b.mode_count()) {
    throw DimensionError("sum of superpositions with different mode counts");
  }
  CoherentSuperposition out = a;
  for (const auto& t : b.terms()) out.add(t.coeff, t.label);
  return out;
}

CoherentSuperposition tensor(const CoherentSuperposition& a,
                             const CoherentSuperposition& b) {
  CoherentSuperposition out(a.mode_count() + b.mode_count());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.add(ta.coeff * tb.coeff, tensor(ta.label, tb.label));
    }
  }
  return out;
}

Complex inner_product(const CoherentSuperposition& x,
                      const CoherentSuperposition& y) {
  if (x.mode_count() != y.mode_count()) {
    throw DimensionError("inner product of states with different mode counts");
  }
  Complex sum = 0.0;
  for (const auto& tx : x.terms()) {
    for (const auto& ty : y.terms()) {
      sum += std::conj(tx.coeff) * ty.coeff * overlap(tx.label, ty.label);
    }
  }
  return sum;
}

CoherentLabel beam_splitter(const CoherentLabel& label, std::size_t i,
                            std::size_t j) {
  check_pair(i, j, label.mode_count());
  const Complex mu = label[i];
  const Complex nu = label[j];
  return label.with(i, (mu + nu) * kInvSqrt2).with(j, (mu - nu) * kInvSqrt2);
}

CoherentSuperposition beam_splitter(const CoherentSuperposition& state,
                                    std::size_t i, std::size_t j) {
  check_pair(i, j, state.mode_count());
  return state.map_labels(state.mode_count(), [&](const CoherentLabel& l) {
    return beam_splitter(l, i, j);
  });
}

CoherentLabel phase_shift_pi(const CoherentLabel& label, const ModeSet& modes) {
  check_modes(modes, label.mode_count());
  std::vector<Complex> amps(label.amplitudes().begin(),
                            label.amplitudes().end());
  for (std::size_t m : modes) amps[m] = -amps[m];
  return CoherentLabel(std::move(amps));
}

CoherentSuperposition phase_shift_pi(const CoherentSuperposition& state,
                                     const ModeSet& modes) {
  check_modes(modes, state.mode_count());
  return state.map_labels(state.mode_count(), [&](const CoherentLabel& l) {
    return phase_shift_pi(l, modes);
  });
}

PhotonProjection project_photon_number(const CoherentSuperposition& state,
                                       std::size_t mode, int n) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  check_mode(mode, state.mode_count());
  CoherentSuperposition reduced(state.mode_count() - 1);
  for (const auto& t : state.terms()) {
    const Complex amp = number_amplitude(t.label[mode], n);
    if (amp == 0.0) continue;
    reduced.add(t.coeff * amp, t.label.without({mode}));
  }
  reduced = reduced.deduplicated();
  return {reduced, std::max(0.0, reduced.squared_norm())};
}

Eigen::MatrixXcd gram_matrix(std::span<const CoherentLabel> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      g(j, k) = overlap(labels[j], labels[k]);
      g(k, j) = std::conj(g(j, k));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// CoherentOperator

CoherentOperator::CoherentOperator(std::size_t mode_count,
                                   std::vector<CoherentLabel> dict,
                                   Eigen::MatrixXcd coeffs)
    : mode_count_(mode_count), dict_(std::move(dict)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != coeffs_.cols() ||
      static_cast<std::size_t>(coeffs_.rows()) != dict_.size()) {
    throw DimensionError("operator coefficients must be square and match the "
                         "dictionary size");
  }
  for (const auto& d : dict_) {
    if (d.mode_count() != mode_count_) {
      throw DimensionError("dictionary label has the wrong mode count");
    }
  }
}

CoherentOperator CoherentOperator::pure(const CoherentSuperposition& state) {
  const auto n = static_cast<Eigen::Index>(state.size());
  std::vector<CoherentLabel> dict;
  Eigen::VectorXcd c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    dict.push_back(state.terms()[k].label);
    c(k) = state.terms()[k].coeff;
  }
  return CoherentOperator(state.mode_count(), std::move(dict), c * c.adjoint());
}

Complex CoherentOperator::trace() const {
  // tr(sum C_jk |d_j><d_k|) = sum C_jk <d_k|d_j> = sum_jk C_jk G_kj.
  const Eigen::MatrixXcd g = gram_matrix(dict_);
  return (coeffs_.array() * g.transpose().array()).sum();
}

bool CoherentOperator::is_hermitian(double tol) const {
  return (coeffs_ - coeffs_.adjoint()).cwiseAbs().maxCoeff() <= tol ||
         coeffs_.size() == 0;
}

CoherentOperator CoherentOperator::normalized() const {
  const Complex tr = trace();
  if (!(std::abs(tr) > 1e-300)) {
    throw DomainError("cannot normalize an operator with zero trace");
  }
  return scaled(1.0 / tr.real());
}

CoherentOperator CoherentOperator::scaled(Complex factor) const {
  return CoherentOperator(mode_count_, dict_, coeffs_ * factor);
}

CoherentOperator CoherentOperator::deduplicated(double tol) const {
  std::vector<CoherentLabel> labels;
  std::vector<std::size_t> slot(dict_.size());
  for (std::size_t j = 0; j < dict_.size(); ++j) {
    const std::size_t k = find_label(labels, dict_[j], tol);
    if (k == labels.size()) labels.push_back(dict_[j]);
    slot[j] = k;
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < dict_.size(); ++j) {
    for (std::size_t k = 0; k < dict_.size(); ++k) {
      c(slot[j], slot[k]) += coeffs_(j, k);
    }
  }
  return CoherentOperator(mode_count_, std::move(labels), std::move(c));
}

double CoherentOperator::max_abs_amplitude() const {
  double best = 0.0;
  for (const auto& d : dict_) best = std::max(best, d.max_abs_amplitude());
  return best;
}

CoherentOperator tensor(const CoherentOperator& a, const CoherentOperator& b) {
  std::vector<CoherentLabel> dict;
  for (const auto& da : a.dictionary()) {
    for (const auto& db : b.dictionary()) dict.push_back(tensor(da, db));
  }
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  Eigen::MatrixXcd c(ca.rows() * cb.rows(), ca.cols() * cb.cols());
  for (Eigen::Index i = 0; i < ca.rows(); ++i) {
    for (Eigen::Index j = 0; j < ca.cols(); ++j) {
      c.block(i * cb.rows(), j * cb.cols(), cb.rows(), cb.cols()) = ca(i, j) * cb;
    }
  }
  return CoherentOperator(a.mode_count() + b.mode_count(), std::move(dict),
                          std::move(c));
}

CoherentOperator beam_splitter(const CoherentOperator& op, std::size_t i,
                               std::size_t j) {
  check_pair(i, j, op.mode_count());
  return op.map_labels(op.mode_count(), [&](const CoherentLabel& l) {
    return beam_splitter(l, i, j);
  });
}

CoherentOperator phase_shift_pi(const CoherentOperator& op,
                                const ModeSet& modes) {
  check_modes(modes, op.mode_count());
  return op.map_labels(op.mode_count(), [&](const CoherentLabel& l) {
    return phase_shift_pi(l, modes);
  });
}

OperatorProjection project_photon_number(const CoherentOperator& op,
                                         std::size_t mode, int n) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  check_mode(mode, op.mode_count());
  const auto size = static_cast<Eigen::Index>(op.dictionary().size());
  Eigen::VectorXcd amp(size);
  std::vector<CoherentLabel> dict;
  dict.reserve(op.dictionary().size());
  for (Eigen::Index k = 0; k < size; ++k) {
    amp(k) = number_amplitude(op.dictionary()[k][mode], n);
    dict.push_back(op.dictionary()[k].without({mode}));
  }
  // <n|d_j><d_k|n> = amp_j conj(amp_k).
  Eigen::MatrixXcd c = amp.asDiagonal() * op.coefficients() * amp.conjugate().asDiagonal();
  CoherentOperator reduced =
      CoherentOperator(op.mode_count() - 1, std::move(dict), std::move(c))
          .deduplicated();
  return {reduced, std::max(0.0, reduced.trace().real())};
}

CoherentOperator trace_out(const CoherentOperator& op, const ModeSet& modes) {
  check_modes(modes, op.mode_count());
  ModeSet traced = modes;
  std::sort(traced.begin(), traced.end());
  traced.erase(std::unique(traced.begin(), traced.end()), traced.end());

  const auto& d = op.dictionary();
  const auto size = static_cast<Eigen::Index>(d.size());
  std::vector<CoherentLabel> env;
  std::vector<CoherentLabel> kept;
  for (const auto& label : d) {
    env.push_back(label.restricted(traced));
    kept.push_back(label.without(traced));
  }
  Eigen::MatrixXcd c = op.coefficients();
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index k = 0; k < size; ++k) {
      // tr_E |e_j><e_k| = <e_k|e_j>.
      c(j, k) *= overlap(env[k], env[j]);
    }
  }
  return CoherentOperator(op.mode_count() - traced.size(), std::move(kept),
                          std::move(c))
      .deduplicated();
}

double operator_fidelity(const CoherentOperator& a, const CoherentOperator& b) {
  if (a.mode_count() != b.mode_count()) {
    throw DimensionError("fidelity of operators with different mode counts");
  }
  const auto na = static_cast<Eigen::Index>(a.dictionary().size());
  const auto nb = static_cast<Eigen::Index>(b.dictionary().size());
  // tr(A B) = tr(Ca X Cb X^dag) with X(k, l) = <a_k|b_l>.
  Eigen::MatrixXcd x(na, nb);
  for (Eigen::Index k = 0; k < na; ++k) {
    for (Eigen::Index l = 0; l < nb; ++l) {
      x(k, l) = overlap(a.dictionary()[k], b.dictionary()[l]);
    }
  }
  const Eigen::MatrixXcd prod =
      a.coefficients() * x * b.coefficients() * x.adjoint();
  return prod.trace().real();
}

double pure_fidelity(const CoherentSuperposition& x,
                     const CoherentOperator& rho) {
  if (x.mode_count() != rho.mode_count()) {
    throw DimensionError("fidelity of states with different mode counts");
  }
  const auto n = static_cast<Eigen::Index>(rho.dictionary().size());
  Eigen::VectorXcd w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    w(j) = inner_product(x, CoherentSuperposition::single(rho.dictionary()[j]));
  }
  // <x|rho|x> = sum_jk w_j C_jk conj(w_k).
  return (w.transpose() * rho.coefficients() * w.conjugate()).value().real();
}

}  // namespace ecsim
