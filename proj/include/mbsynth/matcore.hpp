// Copyright 2026 The mbsynth Authors
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

#pragma once

// Dense complex matrices, unitarity checks, Haar sampling and comparison of
// matrices up to an unobservable global phase.
//
// Conventions used throughout the library:
//  * a circuit acts on column state vectors by left multiplication, so an
//    element applied later multiplies on the left;
//  * mode indices in the public API are 1-based.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "mbsynth/errors.hpp"

namespace mbsynth {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/// Default tolerance for the unitarity certificate.
inline constexpr double kUnitarityTol = 1e-10;
/// Default tolerance for reconstructing a matrix from a circuit.
inline constexpr double kReconstructionTol = 1e-8;

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

/// max_ij |(m^dagger m - I)_ij|.
inline double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("unitarity test needs a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kUnitarityTol) {
  return unitarity_defect(m) <= tol;
}

/// Square complex matrix certified unitary at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitarityTol)
      : m_(std::move(m)) {
    if (m_.size() == 0) throw DimensionError("empty matrix");
    if (!m_.allFinite()) throw ValidationError("matrix has non-finite entries");
    const double defect = unitarity_defect(m_);
    if (defect > tol) {
      throw NotUnitaryError("matrix is not unitary: max|U^dagger U - I| = " +
                                std::to_string(defect),
                            defect);
    }
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }

  Eigen::Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q. Deterministic for a given seed.
inline UnitaryMatrix haar_random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("haar_random_unitary needs n >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      z(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& packed = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = packed(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return UnitaryMatrix(std::move(q));
}

struct PhaseEquivalence {
  double distance = 0.0;        ///< min over alpha of max |u - e^{i alpha} v|
  double aligning_phase = 0.0;  ///< the minimizing alpha, in (-pi, pi]
};

/// Distance between u and v modulo a global phase.
///
/// The phase is seeded from the largest-modulus entry of v, then a coarse
/// scan over the circle and a golden-section refinement locate the minimum
/// of the (piecewise smooth) max-entry error.
inline PhaseEquivalence distance_up_to_global_phase(const ComplexMatrix& u,
                                                    const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("cannot compare " + std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + " with " +
                         std::to_string(v.rows()) + "x" +
                         std::to_string(v.cols()));
  }
  if (u.size() == 0) return {};

  auto cost = [&](double alpha) {
    return (u - std::polar(1.0, alpha) * v).cwiseAbs().maxCoeff();
  };

  Eigen::Index r = 0;
  Eigen::Index c = 0;
  v.cwiseAbs().maxCoeff(&r, &c);
  double seed = 0.0;
  if (std::abs(v(r, c)) > 0.0 && std::abs(u(r, c)) > 0.0) {
    seed = std::arg(u(r, c) / v(r, c));
  }

  double best_alpha = seed;
  double best = cost(seed);
  constexpr int kScan = 256;
  const double step = 2.0 * kPi / kScan;
  for (int k = 1; k < kScan; ++k) {
    const double alpha = seed + k * step;
    const double f = cost(alpha);
    if (f < best) {
      best = f;
      best_alpha = alpha;
    }
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_alpha - step;
  double hi = best_alpha + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = cost(x1);
  double f2 = cost(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = cost(x2);
    }
  }
  for (const auto& [alpha, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f < best) {
      best = f;
      best_alpha = alpha;
    }
  }
  return {best, wrap_angle(best_alpha)};
}

/// Identity of size n with entries (m,m), (m,k), (k,m), (k,k) replaced by the
/// 2x2 block. Indices are 1-based, 1 <= m < k <= n.
inline ComplexMatrix embed_block(int n, const ComplexMatrix& block, int m,
                                 int k) {
  if (block.rows() != 2 || block.cols() != 2) {
    throw DimensionError("embed_block expects a 2x2 block");
  }
  if (n < 2 || m < 1 || k > n || m >= k) {
    throw IndexError("embed_block: need 1 <= m < k <= n, got m=" +
                     std::to_string(m) + " k=" + std::to_string(k) +
                     " n=" + std::to_string(n));
  }
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  const int a = m - 1;
  const int b = k - 1;
  out(a, a) = block(0, 0);
  out(a, b) = block(0, 1);
  out(b, a) = block(1, 0);
  out(b, b) = block(1, 1);
  return out;
}

}  // namespace mbsynth
