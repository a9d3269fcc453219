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

// Verification helpers, the sMZI and three-tritter obstructions, and
// component-count reports across schemes.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mbsynth/bwc.hpp"
#include "mbsynth/circuit.hpp"
#include "mbsynth/decomp.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/mbs3.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

inline constexpr double kFeasibilityTol = 1e-10;

inline PhaseEquivalence verify_decomposition(const ComplexMatrix& u,
                                             const DecompositionResult& r) {
  if (u.rows() != r.circuit.width() || u.cols() != r.circuit.width()) {
    throw DimensionError("circuit width " + std::to_string(r.circuit.width()) +
                         " does not match a " + std::to_string(u.rows()) +
                         "x" + std::to_string(u.cols()) + " matrix");
  }
  return distance_up_to_global_phase(evaluate(r.circuit), u);
}

/// True when every FixedBlock of the circuit carries the same matrix.
inline bool fixed_blocks_identical(const Circuit& c) {
  const FixedBlock* first = nullptr;
  for (const Element& e : c.elements()) {
    const auto* b = std::get_if<FixedBlock>(&e);
    if (b == nullptr) continue;
    if (first == nullptr) {
      first = b;
    } else if (!(b->matrix.rows() == first->matrix.rows() &&
                 (b->matrix.array() == first->matrix.array()).all())) {
      return false;
    }
  }
  return true;
}

struct Obstruction {
  std::string reason;
  double residual = 0.0;
};

struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<std::vector<double>> witness;
  std::optional<Obstruction> obstruction;
  std::string text;
};

/// U2 (+) exp(-i theta sigma_y), the 4x4 matrix on which an sMZI on modes
/// (3, 4) cannot clear entry (4, 3).
inline UnitaryMatrix smzi_counterexample(
    double theta, const ComplexMatrix& u2 = ComplexMatrix::Identity(2, 2)) {
  if (u2.rows() != 2 || u2.cols() != 2) {
    throw DimensionError("upper block must be 2x2");
  }
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = u2;
  m(2, 2) = std::cos(theta);
  m(2, 3) = -std::sin(theta);
  m(3, 2) = std::sin(theta);
  m(3, 3) = std::cos(theta);
  return UnitaryMatrix(std::move(m));
}

/// Can an sMZI applied from the left on rows (m, n) zero u(row, col)?
/// The internal phases must satisfy e^{i(phi11 - phi12)} = ratio, which is
/// solvable exactly when |ratio| = 1.
inline FeasibilityVerdict smzi_can_nullify(const UnitaryMatrix& u, int row,
                                           int col, int m, int n) {
  const auto dim = static_cast<int>(u.dim());
  if (n != m + 1 || m < 1 || n > dim) {
    throw IndexError("sMZI pair must be adjacent modes inside the matrix");
  }
  if (row != m && row != n) throw IndexError("target row not in the pair");
  if (col < 1 || col > dim) throw IndexError("target column out of range");

  const Complex um = u(m - 1, col - 1);
  const Complex un = u(n - 1, col - 1);
  const Complex sum = um + un;
  const Complex diff = um - un;
  FeasibilityVerdict v;
  if (std::abs(um) <= kFeasibilityTol && std::abs(un) <= kFeasibilityTol) {
    v.feasible = true;
    v.witness = std::vector<double>{0.0, 0.0};
    v.text = "both combined entries vanish; any sMZI keeps the target zero";
    return v;
  }
  if (std::abs(sum) <= kFeasibilityTol * std::abs(diff)) {
    v.obstruction = Obstruction{"required phase ratio is unbounded",
                                std::numeric_limits<double>::infinity()};
    v.text = "infeasible: no sMZI phases clear the target entry";
    return v;
  }
  const Complex ratio = (row == n ? 1.0 : -1.0) * diff / sum;
  const double deviation = std::abs(std::abs(ratio) - 1.0);
  if (deviation > kFeasibilityTol) {
    std::ostringstream os;
    os << "infeasible: required e^{i(phi11-phi12)} has modulus "
       << std::setprecision(12) << std::abs(ratio) << ", not 1";
    v.obstruction = Obstruction{"required phase ratio is not unimodular",
                                deviation};
    v.text = os.str();
    return v;
  }

  const SMZIParams w{std::arg(ratio), 0.0};
  ComplexMatrix applied = u.matrix();
  applied.middleRows(m - 1, 2) =
      smzi_matrix(w).matrix() * u.matrix().middleRows(m - 1, 2);
  const double left = std::abs(applied(row - 1, col - 1));
  if (left > kFeasibilityTol) {
    v.obstruction = Obstruction{"witness failed to clear the target", left};
    v.text = "infeasible: witness check failed";
    return v;
  }
  v.feasible = true;
  v.witness = std::vector<double>{w.phi11, w.phi12};
  v.text = "feasible: phi11 - phi12 = arg(ratio)";
  return v;
}

inline constexpr const char* kThreeTritterAnsatz =
    "B12 D3(nu3,0,0) T~23(mu3,nu2) T12(mu2,nu1) B23";

/// Necessary condition for u = B12 D3(nu3,0,0) T~23(mu3,nu2) T12(mu2,nu1) B23:
/// row 1 of B12 u has equal moduli in columns 2 and 3.
inline FeasibilityVerdict three_tritter_feasible(const UnitaryMatrix& u) {
  if (u.dim() != 3) {
    throw DimensionError("three-tritter test needs a 3x3 matrix");
  }
  const ComplexMatrix bu = embed_adjacent(3, bs_matrix(BSRatio(0.5)), 1) *
                           u.matrix();
  const double residual = std::abs(std::abs(bu(0, 1)) - std::abs(bu(0, 2)));
  FeasibilityVerdict v;
  std::ostringstream os;
  os << std::setprecision(12);
  if (residual > kFeasibilityTol) {
    v.obstruction = Obstruction{
        "| |(B12 u)_12| - |(B12 u)_13| | is nonzero", residual};
    os << "infeasible for the ansatz " << kThreeTritterAnsatz
       << ": the necessary condition |(B12 u)_12| = |(B12 u)_13| fails by "
       << residual;
  } else {
    v.feasible = true;
    os << "necessary condition for the ansatz " << kThreeTritterAnsatz
       << " holds (no circuit constructed)";
  }
  v.text = os.str();
  return v;
}

struct ScalingRow {
  int n = 0;
  ComponentReport counts;
  double distance = 0.0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// One Haar unitary per N (seed + N), decomposed by every applicable scheme.
/// Count formulas and reconstruction are checked; failures are collected in
/// violations.
inline ScalingReport scaling_report(int n_min, int n_max,
                                    std::uint64_t seed = 1,
                                    double tol = kReconstructionTol) {
  if (n_min < 2 || n_max < n_min) {
    throw DimensionError("scaling report needs 2 <= n_min <= n_max");
  }
  ScalingReport rep;
  auto record = [&](int n, Scheme s, const Circuit& c, double dist) {
    ScalingRow row{n, count_components(c, std::string(to_string(s))), dist};
    auto fail = [&](const std::string& what) {
      rep.violations.push_back("N=" + std::to_string(n) + " " +
                               row.counts.scheme + ": " + what);
    };
    const ComponentReport& k = row.counts;
    switch (s) {
      case Scheme::Reck:
      case Scheme::Clements:
        if (k.n_bs != n * (n - 1)) fail("n_bs != N(N-1)");
        if (k.n_ps != n * n) fail("n_ps != N^2");
        break;
      case Scheme::Bwc:
        if (k.n_fixed_mbs != n - 1) fail("n_fixed_mbs != N-1");
        if (k.n_bs != n - 1) fail("n_bs != N-1");
        if (k.n_phase_masks > n + 2) fail("n_phase_masks > N+2");
        break;
      case Scheme::Mbs3:
        if (k.n_fixed_mbs != 4) fail("n_fixed_mbs != 4");
        if (!fixed_blocks_identical(c)) fail("fixed blocks differ");
        break;
      case Scheme::U2:
        break;
    }
    if (!(dist <= tol)) fail("reconstruction distance over tolerance");
    rep.rows.push_back(std::move(row));
  };

  for (int n = n_min; n <= n_max; ++n) {
    const UnitaryMatrix u =
        haar_random_unitary(n, seed + static_cast<std::uint64_t>(n));
    const auto reck = decompose_reck(u);
    record(n, Scheme::Reck, reck.circuit, verify_decomposition(u, reck).distance);
    const auto cl = decompose_clements(u);
    record(n, Scheme::Clements, cl.circuit, verify_decomposition(u, cl).distance);
    if (n == 3) {
      const auto m3 = decompose_mbs3(u);
      record(n, Scheme::Mbs3, m3.result.circuit,
             verify_decomposition(u, m3.result).distance);
    }
    if (n >= 3) {
      const auto bw = decompose_bwc(u);
      record(n, Scheme::Bwc, bw.circuit, verify_decomposition(u, bw).distance);
    }
  }
  return rep;
}

inline std::string format_table(const ScalingReport& rep) {
  std::ostringstream os;
  os << std::setw(4) << "N" << std::setw(10) << "scheme" << std::setw(7)
     << "BS" << std::setw(7) << "PS" << std::setw(7) << "masks"
     << std::setw(7) << "MBS" << std::setw(13) << "distance" << "\n";
  for (const ScalingRow& r : rep.rows) {
    os << std::setw(4) << r.n << std::setw(10) << r.counts.scheme
       << std::setw(7) << r.counts.n_bs << std::setw(7) << r.counts.n_ps
       << std::setw(7) << r.counts.n_phase_masks << std::setw(7)
       << r.counts.n_fixed_mbs << std::setw(13) << std::setprecision(3)
       << std::scientific << r.distance << std::defaultfloat << "\n";
  }
  return os.str();
}

inline std::string format_csv(const ScalingReport& rep) {
  std::ostringstream os;
  os << "N,scheme,n_bs,n_ps,n_phase_masks,n_fixed_mbs\n";
  for (const ScalingRow& r : rep.rows) {
    os << r.n << "," << r.counts.scheme << "," << r.counts.n_bs << ","
       << r.counts.n_ps << "," << r.counts.n_phase_masks << ","
       << r.counts.n_fixed_mbs << "\n";
  }
  return os.str();
}

}  // namespace mbsynth
