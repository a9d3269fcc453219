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

// Elementary optical transfer matrices: beamsplitters, the two asymmetric
// Mach-Zehnder variants, the symmetric MZI, diagonal phase layers, the
// tritter and the cascaded N-port splitter.

#include <cmath>
#include <string>
#include <vector>

#include "mbsynth/matcore.hpp"

namespace mbsynth {

/// Beamsplitter transmittance eta = |T|^2, reflectance 1 - eta.
struct BSRatio {
  double eta = 0.5;

  constexpr BSRatio() = default;
  explicit BSRatio(double value) : eta(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError("beamsplitter ratio must lie in [0, 1], got " +
                            std::to_string(value));
    }
  }
};

/// Angles of an asymmetric MZI block (two 50:50 splitters, an internal phase
/// 2*theta and an external phase 2*phi on the same arm).
struct AMZIParams {
  double theta = 0.0;
  double phi = 0.0;
};

/// Internal arm phases of a symmetric MZI.
struct SMZIParams {
  double phi11 = 0.0;
  double phi12 = 0.0;
};

/// Phases of a diagonal layer diag(exp(2i delta_1), ..., exp(2i delta_N)).
/// Note the factor two.
struct DiagPhases {
  std::vector<double> deltas;
};

/// [[sqrt(1-eta), sqrt(eta)], [sqrt(eta), -sqrt(1-eta)]]
inline UnitaryMatrix bs_matrix(BSRatio r) {
  const double t = std::sqrt(r.eta);
  const double c = std::sqrt(1.0 - r.eta);
  ComplexMatrix m(2, 2);
  m << c, t, t, -c;
  return UnitaryMatrix(std::move(m));
}

/// e^{i theta} [[e^{2i phi} cos theta, i sin theta],
///              [i e^{2i phi} sin theta, cos theta]]
inline UnitaryMatrix t_matrix(AMZIParams p) {
  const Complex i(0.0, 1.0);
  const Complex g = std::polar(1.0, p.theta);
  const Complex e = std::polar(1.0, 2.0 * p.phi);
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  ComplexMatrix m(2, 2);
  m << g * e * c, g * i * s, g * i * e * s, g * c;
  return UnitaryMatrix(std::move(m));
}

/// Variant with both phase shifters on the second arm; equals
/// e^{2i(theta+phi)} T(-theta, -phi).
inline UnitaryMatrix t_tilde_matrix(AMZIParams p) {
  const Complex i(0.0, 1.0);
  const Complex g = std::polar(1.0, p.theta);
  const Complex e = std::polar(1.0, 2.0 * p.phi);
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  ComplexMatrix m(2, 2);
  m << g * c, -g * i * e * s, -g * i * s, g * e * c;
  return UnitaryMatrix(std::move(m));
}

/// B(1/2) diag(e^{i phi11}, e^{i phi12}) B(1/2).
inline UnitaryMatrix smzi_matrix(SMZIParams p) {
  const Complex a = std::polar(1.0, p.phi11);
  const Complex b = std::polar(1.0, p.phi12);
  ComplexMatrix m(2, 2);
  m << (a + b) / 2.0, (a - b) / 2.0, (a - b) / 2.0, (a + b) / 2.0;
  return UnitaryMatrix(std::move(m));
}

inline UnitaryMatrix diag_matrix(const DiagPhases& d) {
  if (d.deltas.empty()) throw DimensionError("diag_matrix needs >= 1 phase");
  const auto n = static_cast<Eigen::Index>(d.deltas.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = std::polar(1.0, 2.0 * d.deltas[static_cast<std::size_t>(k)]);
  }
  return UnitaryMatrix(std::move(m));
}

/// Two-mode block `b` placed on adjacent modes (m, m+1) of an n-mode system.
inline ComplexMatrix embed_adjacent(int n, const ComplexMatrix& b, int m) {
  return embed_block(n, b, m, m + 1);
}

/// N-port splitter: beamsplitters between (k, k+1), k = 1..n-1, with
/// eta_k = (n-k)/(n-k+1), applied in ascending k. A photon entering mode 1
/// leaves each port with probability 1/n.
inline UnitaryMatrix mbs_matrix(int n) {
  if (n < 2) throw DimensionError("mbs_matrix needs n >= 2");
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    const BSRatio eta(static_cast<double>(n - k) / (n - k + 1));
    m = embed_adjacent(n, bs_matrix(eta), k) * m;
  }
  return UnitaryMatrix(std::move(m));
}

/// B23(1/2) B12(2/3): the balanced tritter.
inline UnitaryMatrix tritter_matrix() { return mbs_matrix(3); }

/// B23(1/2) B12(1/2): the phase-free part of the repeated tritter block used
/// by the four-block U(3) scheme.
inline UnitaryMatrix fixed_tritter_block() {
  const ComplexMatrix half = bs_matrix(BSRatio(0.5));
  return UnitaryMatrix(embed_adjacent(3, half, 2) * embed_adjacent(3, half, 1));
}

}  // namespace mbsynth
