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

#include "ecsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "ecsim/error.hpp"

namespace ecsim::fock {

namespace {

std::mutex g_warning_mutex;
WarningHandler g_warning_handler = [](const std::string& msg) {
  std::clog << "ecsim warning: " << msg << '\n';
};

void warn(const std::string& msg) {
  WarningHandler handler;
  {
    std::lock_guard<std::mutex> lock(g_warning_mutex);
    handler = g_warning_handler;
  }
  if (handler) handler(msg);
}

void check_mode(std::size_t mode, std::size_t count) {
  if (mode >= count) {
    throw IndexError("mode index " + std::to_string(mode) +
                     " out of range for " + std::to_string(count) + " modes");
  }
}

std::size_t dense_size(const std::vector<int>& cutoffs) {
  std::size_t size = 1;
  for (int c : cutoffs) {
    if (c < 0) throw DomainError("cutoff must be nonnegative");
    const auto dim = static_cast<std::size_t>(c) + 1;
    if (size > kMaxDenseAmplitudes / dim) {
      throw ResourceError("dense Fock array exceeds " +
                          std::to_string(kMaxDenseAmplitudes) + " amplitudes");
    }
    size *= dim;
  }
  return size;
}

std::vector<std::size_t> strides_for(const std::vector<int>& cutoffs) {
  std::vector<std::size_t> strides(cutoffs.size());
  std::size_t s = 1;
  for (std::size_t k = cutoffs.size(); k-- > 0;) {
    strides[k] = s;
    s *= static_cast<std::size_t>(cutoffs[k]) + 1;
  }
  return strides;
}

int digit(std::size_t index, std::size_t stride, int cutoff) {
  return static_cast<int>((index / stride) % (static_cast<std::size_t>(cutoff) + 1));
}

// Offsets of every basis index whose digits at the excluded modes are zero.
std::vector<std::size_t> base_offsets(const std::vector<int>& cutoffs,
                                      const std::vector<std::size_t>& strides,
                                      const ModeSet& excluded) {
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (std::find(excluded.begin(), excluded.end(), k) == excluded.end()) {
      others.push_back(k);
    }
  }
  std::vector<std::size_t> offsets{0};
  for (std::size_t k : others) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * (static_cast<std::size_t>(cutoffs[k]) + 1));
    for (std::size_t base : offsets) {
      for (int n = 0; n <= cutoffs[k]; ++n) next.push_back(base + n * strides[k]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

// sqrt(C(n, r) eta^(n-r) (1-eta)^r), the Kraus weight taking |n> to |n-r>.
double kraus_weight(int n, int r, double eta) {
  if (r > n) return 0.0;
  const double keep = n - r;
  if (eta == 0.0) return keep == 0 ? 1.0 : 0.0;
  if (eta == 1.0) return r == 0 ? 1.0 : 0.0;
  const double log_binom =
      std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(keep + 1.0);
  return std::exp(0.5 * (log_binom + keep * std::log(eta) + r * std::log1p(-eta)));
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("transmissivity must lie in [0, 1]");
  }
}

}  // namespace

int cutoff_for_amplitude(double beta_max) {
  const double b2 = beta_max * beta_max;
  return static_cast<int>(std::ceil(b2 + 10.0 * std::sqrt(b2 + 1.0) + 20.0));
}

double poisson_tail(double beta_abs, int cutoff) {
  const double mean = beta_abs * beta_abs;
  if (mean == 0.0) return 0.0;
  double sum = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double term =
        std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    sum += term;
    if (n > mean && term < sum * 1e-17) break;
    if (n > cutoff + 100000) break;
  }
  return sum;
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  std::swap(handler, g_warning_handler);
  return handler;
}

std::vector<Complex> coherent_coefficients(Complex beta, int cutoff) {
  if (cutoff < 0) throw DomainError("cutoff must be nonnegative");
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
  c[0] = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * beta / std::sqrt(double(n));
  return c;
}

// ---------------------------------------------------------------------------
// FockVector

FockVector::FockVector(std::vector<int> cutoffs)
    : cutoffs_(std::move(cutoffs)),
      strides_(strides_for(cutoffs_)),
      data_(dense_size(cutoffs_), Complex(0.0)) {}

FockVector FockVector::vacuum(std::vector<int> cutoffs) {
  FockVector v(std::move(cutoffs));
  v.data_[0] = 1.0;
  return v;
}

Complex FockVector::at(const std::vector<int>& photons) const {
  if (photons.size() != cutoffs_.size()) {
    throw DimensionError("photon-number tuple has the wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < photons.size(); ++k) {
    if (photons[k] < 0 || photons[k] > cutoffs_[k]) {
      throw IndexError("photon number outside the truncated basis");
    }
    idx += photons[k] * strides_[k];
  }
  return data_[idx];
}

double FockVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& a : data_) sum += std::norm(a);
  return sum;
}

Complex inner_product(const FockVector& x, const FockVector& y) {
  if (x.cutoffs() != y.cutoffs()) {
    throw DimensionError("inner product of Fock vectors with different shapes");
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += std::conj(x.data()[k]) * y.data()[k];
  return sum;
}

FockVector encode(const CoherentSuperposition& state, int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  return encode(state, std::vector<int>(state.mode_count(), cutoff));
}

FockVector encode(const CoherentSuperposition& state,
                  const std::vector<int>& cutoffs) {
  if (cutoffs.size() != state.mode_count()) {
    throw DimensionError("one cutoff per mode is required");
  }
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    double amp = 0.0;
    for (const auto& t : state.terms()) amp = std::max(amp, std::abs(t.label[k]));
    if (cutoffs[k] < cutoff_for_amplitude(amp)) {
      warn("cutoff " + std::to_string(cutoffs[k]) + " on mode " +
           std::to_string(k) + " is below the recommended " +
           std::to_string(cutoff_for_amplitude(amp)));
    }
  }
  FockVector out(cutoffs);
  for (const auto& t : state.terms()) {
    std::vector<Complex> buffer{t.coeff};
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
      const auto coeffs = coherent_coefficients(t.label[k], cutoffs[k]);
      std::vector<Complex> next;
      next.reserve(buffer.size() * coeffs.size());
      for (const auto& b : buffer) {
        for (const auto& c : coeffs) next.push_back(b * c);
      }
      buffer = std::move(next);
    }
    for (std::size_t idx = 0; idx < buffer.size(); ++idx) out.data()[idx] += buffer[idx];
  }
  return out;
}

FockVector bs_unitary(const FockVector& v, std::size_t i, std::size_t j) {
  check_mode(i, v.mode_count());
  check_mode(j, v.mode_count());
  if (i == j) throw IndexError("beam splitter needs two distinct modes");
  const int ci = v.cutoffs()[i];
  const int cj = v.cutoffs()[j];

  // columns[n1][n2][k] = <k, n1+n2-k| R |n1, n2>, built by applying the
  // transformed creation operators to the vacuum one photon at a time.
  std::vector<std::vector<std::vector<double>>> columns(
      ci + 1, std::vector<std::vector<double>>(cj + 1));
  auto create = [](const std::vector<double>& u, double sign_j) {
    // u lives on total photon number N-1; result on N.
    const int total = static_cast<int>(u.size());
    std::vector<double> w(total + 1, 0.0);
    for (int k = 0; k < total; ++k) {
      w[k + 1] += std::sqrt(double(k + 1)) * u[k];
      w[k] += sign_j * std::sqrt(double(total - k)) * u[k];
    }
    return w;
  };
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  columns[0][0] = {1.0};
  for (int n2 = 1; n2 <= cj; ++n2) {
    auto w = create(columns[0][n2 - 1], -1.0);
    for (auto& x : w) x *= kInvSqrt2 / std::sqrt(double(n2));
    columns[0][n2] = std::move(w);
  }
  for (int n1 = 1; n1 <= ci; ++n1) {
    for (int n2 = 0; n2 <= cj; ++n2) {
      auto w = create(columns[n1 - 1][n2], 1.0);
      for (auto& x : w) x *= kInvSqrt2 / std::sqrt(double(n1));
      columns[n1][n2] = std::move(w);
    }
  }

  FockVector out(v.cutoffs());
  const std::size_t si = v.stride(i);
  const std::size_t sj = v.stride(j);
  std::vector<std::size_t> strides(v.mode_count());
  for (std::size_t k = 0; k < v.mode_count(); ++k) strides[k] = v.stride(k);
  for (std::size_t base : base_offsets(v.cutoffs(), strides, {i, j})) {
    for (int n1 = 0; n1 <= ci; ++n1) {
      for (int n2 = 0; n2 <= cj; ++n2) {
        const Complex in = v.data()[base + n1 * si + n2 * sj];
        if (in == 0.0) continue;
        const auto& col = columns[n1][n2];
        const int total = n1 + n2;
        const int k_lo = std::max(0, total - cj);
        const int k_hi = std::min(ci, total);
        for (int k = k_lo; k <= k_hi; ++k) {
          out.data()[base + k * si + (total - k) * sj] += col[k] * in;
        }
      }
    }
  }
  return out;
}

FockVector phase_shift_pi(const FockVector& v, const ModeSet& modes) {
  for (std::size_t m : modes) check_mode(m, v.mode_count());
  FockVector out = v;
  for (std::size_t m : modes) {
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      if (digit(idx, out.stride(m), out.cutoffs()[m]) % 2 == 1) {
        out.data()[idx] = -out.data()[idx];
      }
    }
  }
  return out;
}

FockProjection measure_number(const FockVector& v, std::size_t mode, int n) {
  check_mode(mode, v.mode_count());
  if (n < 0 || n > v.cutoffs()[mode]) {
    throw DomainError("photon number " + std::to_string(n) +
                      " outside the truncated basis of mode " +
                      std::to_string(mode));
  }
  std::vector<int> cutoffs = v.cutoffs();
  cutoffs.erase(cutoffs.begin() + static_cast<std::ptrdiff_t>(mode));
  FockVector out(cutoffs);
  const std::size_t lo_size = v.stride(mode);
  const std::size_t block = lo_size * (static_cast<std::size_t>(v.cutoffs()[mode]) + 1);
  const std::size_t hi_count = v.size() / block;
  for (std::size_t hi = 0; hi < hi_count; ++hi) {
    const std::size_t src = hi * block + n * lo_size;
    std::copy_n(v.data().begin() + static_cast<std::ptrdiff_t>(src), lo_size,
                out.data().begin() + static_cast<std::ptrdiff_t>(hi * lo_size));
  }
  return {out, out.squared_norm()};
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(std::vector<int> cutoffs, Eigen::MatrixXcd data)
    : cutoffs_(std::move(cutoffs)), data_(std::move(data)) {
  const auto dim = static_cast<Eigen::Index>(dense_size(cutoffs_));
  if (data_.rows() != dim || data_.cols() != dim) {
    throw DimensionError("Fock operator matrix does not match its cutoffs");
  }
}

FockOperator FockOperator::pure(const FockVector& v) {
  Eigen::Map<const Eigen::VectorXcd> x(v.data().data(),
                                       static_cast<Eigen::Index>(v.size()));
  return FockOperator(v.cutoffs(), x * x.adjoint());
}

FockOperator FockOperator::encode(const CoherentOperator& op,
                                  const std::vector<int>& cutoffs) {
  const auto dim = static_cast<Eigen::Index>(dense_size(cutoffs));
  const auto n = static_cast<Eigen::Index>(op.dictionary().size());
  Eigen::MatrixXcd basis(dim, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const FockVector v =
        fock::encode(CoherentSuperposition::single(op.dictionary()[k]), cutoffs);
    basis.col(k) = Eigen::Map<const Eigen::VectorXcd>(v.data().data(), dim);
  }
  return FockOperator(cutoffs, basis * op.coefficients() * basis.adjoint());
}

bool FockOperator::is_hermitian(double tol) const {
  return data_.size() == 0 ||
         (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

FockOperator apply_loss(const FockOperator& rho, double eta,
                        const ModeSet& modes) {
  check_eta(eta);
  for (std::size_t m : modes) check_mode(m, rho.mode_count());
  const auto strides = strides_for(rho.cutoffs());
  Eigen::MatrixXcd current = rho.data();
  const auto dim = current.rows();
  for (std::size_t m : modes) {
    const int c = rho.cutoffs()[m];
    const std::size_t s = strides[m];
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const int na = digit(static_cast<std::size_t>(a), s, c);
      for (Eigen::Index b = 0; b < dim; ++b) {
        const Complex value = current(a, b);
        if (value == 0.0) continue;
        const int nb = digit(static_cast<std::size_t>(b), s, c);
        for (int r = 0; r <= std::min(na, nb); ++r) {
          const double w = kraus_weight(na, r, eta) * kraus_weight(nb, r, eta);
          if (w == 0.0) continue;
          next(a - static_cast<Eigen::Index>(r * s),
               b - static_cast<Eigen::Index>(r * s)) += w * value;
        }
      }
    }
    current = std::move(next);
  }
  return FockOperator(rho.cutoffs(), std::move(current));
}

FockOperator trace_out(const FockOperator& rho, const ModeSet& modes) {
  for (std::size_t m : modes) check_mode(m, rho.mode_count());
  const auto strides = strides_for(rho.cutoffs());
  std::vector<int> kept_cutoffs;
  std::vector<std::size_t> kept_modes;
  std::vector<std::size_t> traced_modes;
  for (std::size_t k = 0; k < rho.mode_count(); ++k) {
    if (std::find(modes.begin(), modes.end(), k) == modes.end()) {
      kept_cutoffs.push_back(rho.cutoffs()[k]);
      kept_modes.push_back(k);
    } else {
      traced_modes.push_back(k);
    }
  }
  const auto kept_strides = strides_for(kept_cutoffs);
  const auto dim = rho.data().rows();
  std::vector<std::size_t> kept_index(static_cast<std::size_t>(dim));
  std::vector<std::size_t> traced_index(static_cast<std::size_t>(dim));
  for (Eigen::Index a = 0; a < dim; ++a) {
    std::size_t ki = 0;
    std::size_t ti = 0;
    for (std::size_t q = 0; q < kept_modes.size(); ++q) {
      const std::size_t k = kept_modes[q];
      ki += digit(static_cast<std::size_t>(a), strides[k], rho.cutoffs()[k]) * kept_strides[q];
    }
    for (std::size_t k : traced_modes) {
      ti = ti * (static_cast<std::size_t>(rho.cutoffs()[k]) + 1) +
           digit(static_cast<std::size_t>(a), strides[k], rho.cutoffs()[k]);
    }
    kept_index[a] = ki;
    traced_index[a] = ti;
  }
  const auto kept_dim = static_cast<Eigen::Index>(dense_size(kept_cutoffs));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (traced_index[a] == traced_index[b]) {
        out(kept_index[a], kept_index[b]) += rho.data()(a, b);
      }
    }
  }
  return FockOperator(kept_cutoffs, std::move(out));
}

double trace_product(const FockOperator& a, const FockOperator& b) {
  if (a.cutoffs() != b.cutoffs()) {
    throw DimensionError("trace product of operators with different shapes");
  }
  return (a.data().array() * b.data().transpose().array()).sum().real();
}

double expectation(const FockVector& v, const FockOperator& rho) {
  if (v.cutoffs() != rho.cutoffs()) {
    throw DimensionError("expectation with mismatched shapes");
  }
  Eigen::Map<const Eigen::VectorXcd> x(v.data().data(),
                                       static_cast<Eigen::Index>(v.size()));
  return (x.adjoint() * rho.data() * x).value().real();
}

// ---------------------------------------------------------------------------
// Concurrence

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
  constexpr double kTol = 1e-9;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTol) {
    throw DomainError("two-qubit density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kTol) {
    throw DomainError("two-qubit density matrix does not have unit trace");
  }
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(herm);
  if (eig.eigenvalues().minCoeff() < -kTol) {
    throw DomainError("two-qubit density matrix is not positive semidefinite");
  }
  const Eigen::Vector4d clamped = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix4cd sqrt_rho = eig.eigenvectors() *
                                    clamped.cwiseSqrt().cast<Complex>().asDiagonal() *
                                    eig.eigenvectors().adjoint();
  // sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd flipped = yy * herm.conjugate() * yy;
  const Eigen::Matrix4cd m = sqrt_rho * flipped * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> meig(0.5 * (m + m.adjoint()));
  Eigen::Vector4d lambda = meig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
  return std::clamp(lambda(0) - lambda(1) - lambda(2) - lambda(3), 0.0, 1.0);
}

Eigen::Matrix4cd reduce_to_qubits(const FockVector& state,
                                  const CoherentLabel& plus_branch,
                                  const CoherentLabel& minus_branch,
                                  const ModeSet& side_a) {
  const std::size_t count = state.mode_count();
  if (plus_branch.mode_count() != count || minus_branch.mode_count() != count) {
    throw DimensionError("branch labels do not match the state");
  }
  for (std::size_t m : side_a) check_mode(m, count);
  ModeSet side_b;
  for (std::size_t k = 0; k < count; ++k) {
    if (std::find(side_a.begin(), side_a.end(), k) == side_a.end()) side_b.push_back(k);
  }
  if (side_a.empty() || side_b.empty()) {
    throw DomainError("bipartition needs modes on both sides");
  }

  auto side_basis = [&](const ModeSet& side) {
    std::vector<int> cutoffs;
    for (std::size_t k : side) cutoffs.push_back(state.cutoffs()[k]);
    FockVector e0 = encode(CoherentSuperposition::single(plus_branch.restricted(side)), cutoffs);
    FockVector e1 = encode(CoherentSuperposition::single(minus_branch.restricted(side)), cutoffs);
    const double n0 = std::sqrt(e0.squared_norm());
    for (auto& x : e0.data()) x /= n0;
    const Complex proj = inner_product(e0, e1);
    for (std::size_t q = 0; q < e1.size(); ++q) e1.data()[q] -= proj * e0.data()[q];
    const double n1 = std::sqrt(e1.squared_norm());
    if (n1 < 1e-9) {
      throw UnsupportedStructureError(
          "branches are not linearly independent on one side of the partition");
    }
    for (auto& x : e1.data()) x /= n1;
    return std::pair{std::move(e0), std::move(e1)};
  };
  const auto [a0, a1] = side_basis(side_a);
  const auto [b0, b1] = side_basis(side_b);

  std::vector<std::size_t> a_strides(side_a.size());
  std::vector<std::size_t> b_strides(side_b.size());
  for (std::size_t q = 0; q < side_a.size(); ++q) a_strides[q] = a0.stride(q);
  for (std::size_t q = 0; q < side_b.size(); ++q) b_strides[q] = b0.stride(q);

  Eigen::Vector4cd x = Eigen::Vector4cd::Zero();
  std::vector<int> photons(count, 0);
  std::size_t ia = 0;
  std::size_t ib = 0;
  // Per-mode contribution to the side index.
  std::vector<std::size_t> side_stride(count);
  std::vector<bool> on_a(count, false);
  for (std::size_t q = 0; q < side_a.size(); ++q) {
    side_stride[side_a[q]] = a_strides[q];
    on_a[side_a[q]] = true;
  }
  for (std::size_t q = 0; q < side_b.size(); ++q) side_stride[side_b[q]] = b_strides[q];

  for (std::size_t idx = 0; idx < state.size(); ++idx) {
    const Complex v = state.data()[idx];
    if (v != 0.0) {
      x(0) += std::conj(a0.data()[ia] * b0.data()[ib]) * v;
      x(1) += std::conj(a0.data()[ia] * b1.data()[ib]) * v;
      x(2) += std::conj(a1.data()[ia] * b0.data()[ib]) * v;
      x(3) += std::conj(a1.data()[ia] * b1.data()[ib]) * v;
    }
    // Odometer increment of the photon-number tuple, last mode fastest.
    for (std::size_t k = count; k-- > 0;) {
      std::size_t& side_index = on_a[k] ? ia : ib;
      if (photons[k] < state.cutoffs()[k]) {
        ++photons[k];
        side_index += side_stride[k];
        break;
      }
      side_index -= photons[k] * side_stride[k];
      photons[k] = 0;
    }
  }

  const double captured = x.squaredNorm();
  const double total = state.squared_norm();
  if (!(captured > 0.0) || captured < total * (1.0 - 1e-6)) {
    throw UnsupportedStructureError("state is not supported on the two branches");
  }
  return x * x.adjoint() / captured;
}

std::vector<int> cutoffs_for(const CoherentSuperposition& state) {
  std::vector<int> cutoffs(state.mode_count());
  for (std::size_t k = 0; k < state.mode_count(); ++k) {
    double amp = 0.0;
    for (const auto& t : state.terms()) amp = std::max(amp, std::abs(t.label[k]));
    cutoffs[k] = cutoff_for_amplitude(amp);
  }
  return cutoffs;
}

std::vector<int> cutoffs_for(const CoherentOperator& op) {
  std::vector<int> cutoffs(op.mode_count());
  for (std::size_t k = 0; k < op.mode_count(); ++k) {
    double amp = 0.0;
    for (const auto& d : op.dictionary()) amp = std::max(amp, std::abs(d[k]));
    cutoffs[k] = cutoff_for_amplitude(amp);
  }
  return cutoffs;
}

Eigen::Matrix4cd reduce_to_qubits(const CoherentSuperposition& state,
                                  const ModeSet& side_a) {
  const CoherentSuperposition s = state.deduplicated();
  if (s.size() != 2) {
    throw UnsupportedStructureError("qubit reduction needs exactly two branches");
  }
  const FockVector v = encode(s, cutoffs_for(s));
  return reduce_to_qubits(v, s.terms()[0].label, s.terms()[1].label, side_a);
}

double lossy_expectation(const CoherentSuperposition& ref,
                         const CoherentOperator& rho, double eta,
                         const ModeSet& lossy_modes) {
  check_eta(eta);
  if (ref.mode_count() != rho.mode_count()) {
    throw DimensionError("reference and operator have different mode counts");
  }
  for (std::size_t m : lossy_modes) check_mode(m, rho.mode_count());
  const std::size_t nr = ref.size();
  const std::size_t nd = rho.dictionary().size();

  // factor[mode][((r * nd + j) * nd + k) * nr + r2] holds the mode's share of
  // <r|K d_j><d_k|K^dag r2>, summed over that mode's Kraus index.
  std::vector<Complex> total(nr * nd * nd * nr, Complex(1.0));
  for (std::size_t mode = 0; mode < rho.mode_count(); ++mode) {
    double amp = 0.0;
    for (const auto& t : ref.terms()) amp = std::max(amp, std::abs(t.label[mode]));
    for (const auto& d : rho.dictionary()) amp = std::max(amp, std::abs(d[mode]));
    const int c = cutoff_for_amplitude(amp);
    std::vector<std::vector<Complex>> fr(nr);
    std::vector<std::vector<Complex>> fd(nd);
    for (std::size_t r = 0; r < nr; ++r) fr[r] = coherent_coefficients(ref.terms()[r].label[mode], c);
    for (std::size_t j = 0; j < nd; ++j) fd[j] = coherent_coefficients(rho.dictionary()[j][mode], c);

    const bool lossy =
        std::find(lossy_modes.begin(), lossy_modes.end(), mode) != lossy_modes.end();
    const int kraus_count = lossy ? c + 1 : 1;
    // amp_s[s][r * nd + j] = <r| K_s |d_j>.
    std::vector<std::vector<Complex>> amp_s(kraus_count, std::vector<Complex>(nr * nd));
    for (int s = 0; s < kraus_count; ++s) {
      for (std::size_t j = 0; j < nd; ++j) {
        std::vector<Complex> kd(static_cast<std::size_t>(c) + 1, Complex(0.0));
        for (int n = s; n <= c; ++n) {
          const double w = lossy ? kraus_weight(n, s, eta) : 1.0;
          kd[n - s] += w * fd[j][n];
        }
        for (std::size_t r = 0; r < nr; ++r) {
          Complex dot = 0.0;
          for (int n = 0; n <= c; ++n) dot += std::conj(fr[r][n]) * kd[n];
          amp_s[s][r * nd + j] = dot;
        }
      }
    }
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t j = 0; j < nd; ++j) {
        for (std::size_t k = 0; k < nd; ++k) {
          for (std::size_t r2 = 0; r2 < nr; ++r2) {
            Complex sum = 0.0;
            for (int s = 0; s < kraus_count; ++s) {
              sum += amp_s[s][r * nd + j] * std::conj(amp_s[s][r2 * nd + k]);
            }
            total[((r * nd + j) * nd + k) * nr + r2] *= sum;
          }
        }
      }
    }
  }

  Complex value = 0.0;
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t j = 0; j < nd; ++j) {
      for (std::size_t k = 0; k < nd; ++k) {
        for (std::size_t r2 = 0; r2 < nr; ++r2) {
          value += std::conj(ref.terms()[r].coeff) * ref.terms()[r2].coeff *
                   rho.coefficients()(static_cast<Eigen::Index>(j),
                                      static_cast<Eigen::Index>(k)) *
                   total[((r * nd + j) * nd + k) * nr + r2];
        }
      }
    }
  }
  return value.real();
}

}  // namespace ecsim::fock
