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

// Three-mode decomposition onto four identical fixed tritter blocks.
//
// Parameters: U' = B23 u B23 (B23 the 50:50 beamsplitter on modes 2, 3) is
// written as
//
//   U' = e^{i g} D3(delta1, 0, nu4) T12(mu4, nu3) T~23(mu3, nu2) T12(mu2, nu1)
//
// starting from the rectangular decomposition of U'.
//
// Circuit: five phase masks around four copies of B23(1/2) B12(1/2). The mask
// phases are found by a least-squares fit of the exact matrix (global phase
// included), so every block in the emitted circuit is the same matrix.

#include <unsupported/Eigen/LevenbergMarquardt>

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "mbsynth/circuit.hpp"
#include "mbsynth/decomp.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

struct MBS3Params {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu3 = 0.0;
  double nu4 = 0.0;
  double delta1 = 0.0;
  double global_phase = 0.0;
};

struct MBS3Decomposition {
  MBS3Params params;
  /// blocks and diag describe U'; the circuit realizes u itself.
  DecompositionResult result;
};

inline ComplexMatrix b23_half() {
  return embed_adjacent(3, bs_matrix(BSRatio(0.5)), 2);
}

/// e^{i g} D3(delta1, 0, nu4) T12(mu4, nu3) T~23(mu3, nu2) T12(mu2, nu1).
inline ComplexMatrix mbs3_parameter_matrix(const MBS3Params& p) {
  const ComplexMatrix d = diag_matrix({{p.delta1, 0.0, p.nu4}});
  return std::polar(1.0, p.global_phase) * d *
         embed_adjacent(3, t_matrix({p.mu4, p.nu3}), 1) *
         embed_adjacent(3, t_tilde_matrix({p.mu3, p.nu2}), 2) *
         embed_adjacent(3, t_matrix({p.mu2, p.nu1}), 1);
}

/// B23, T12, T~23, T12, output phases, B23: the mirrored wiring in which the
/// outer beamsplitters turn U' back into u.
inline Circuit mbs3_mirrored_circuit(const MBS3Params& p) {
  Circuit c(3);
  c.add(Beamsplitter{2, 0.5});
  append_block(c, {1, 2, p.mu2, p.nu1, BlockFlavor::T});
  append_block(c, {2, 3, p.mu3, p.nu2, BlockFlavor::TTilde});
  append_block(c, {1, 2, p.mu4, p.nu3, BlockFlavor::T});
  c.add(PhaseShifter{1, 2.0 * p.delta1});
  c.add(PhaseShifter{3, 2.0 * p.nu4});
  c.add(Beamsplitter{2, 0.5});
  return c;
}

namespace detail {

inline constexpr int kTritterMasks = 5;
inline constexpr int kTritterFitRestarts = 64;
inline constexpr double kTritterFitTol = 1e-12;
inline constexpr std::uint64_t kTritterFitSeed = 0x7a11c0ffee;

inline ComplexMatrix phase_diag(const Eigen::VectorXd& x, int mask) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  for (int q = 0; q < 3; ++q) m(q, q) = std::polar(1.0, x(3 * mask + q));
  return m;
}

/// M4 F M3 F M2 F M1 F M0 with M_j = diag(e^{i x_{3j..3j+2}}).
inline ComplexMatrix tritter_mesh(const Eigen::VectorXd& x,
                                  const ComplexMatrix& f) {
  ComplexMatrix c = phase_diag(x, 0);
  for (int j = 1; j < kTritterMasks; ++j) c = phase_diag(x, j) * f * c;
  return c;
}

struct TritterMeshFit : Eigen::DenseFunctor<double> {
  TritterMeshFit(const ComplexMatrix& target, const ComplexMatrix& block)
      : Eigen::DenseFunctor<double>(3 * kTritterMasks, 18),
        u(target),
        f(block) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    const ComplexMatrix d = tritter_mesh(x, f) - u;
    for (int k = 0; k < 9; ++k) {
      fvec(k) = d(k / 3, k % 3).real();
      fvec(9 + k) = d(k / 3, k % 3).imag();
    }
    return 0;
  }

  // With C = L_j M_j R_j, dC/dx_{j,q} = i L_j[:, q] (M_j R_j)[q, :].
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    std::array<ComplexMatrix, kTritterMasks> right;
    std::array<ComplexMatrix, kTritterMasks> left;
    right[0] = ComplexMatrix::Identity(3, 3);
    for (int j = 1; j < kTritterMasks; ++j) {
      right[j] = f * phase_diag(x, j - 1) * right[j - 1];
    }
    left[kTritterMasks - 1] = ComplexMatrix::Identity(3, 3);
    for (int j = kTritterMasks - 2; j >= 0; --j) {
      left[j] = left[j + 1] * phase_diag(x, j + 1) * f;
    }
    const Complex i(0.0, 1.0);
    for (int j = 0; j < kTritterMasks; ++j) {
      const ComplexMatrix mr = phase_diag(x, j) * right[j];
      for (int q = 0; q < 3; ++q) {
        const ComplexMatrix g = i * left[j].col(q) * mr.row(q);
        for (int k = 0; k < 9; ++k) {
          jac(k, 3 * j + q) = g(k / 3, k % 3).real();
          jac(9 + k, 3 * j + q) = g(k / 3, k % 3).imag();
        }
      }
    }
    return 0;
  }

  ComplexMatrix u;
  ComplexMatrix f;
};

/// Fits the 15 mask phases. Restarts are drawn from a fixed seed so the
/// result depends on u alone.
inline Eigen::VectorXd fit_tritter_masks(const ComplexMatrix& u) {
  const ComplexMatrix f = fixed_tritter_block();
  TritterMeshFit functor(u, f);
  std::mt19937_64 gen(kTritterFitSeed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Eigen::VectorXd best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < kTritterFitRestarts; ++attempt) {
    Eigen::VectorXd x(3 * kTritterMasks);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = angle(gen);
    Eigen::LevenbergMarquardt<TritterMeshFit> lm(functor);
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.setGtol(0.0);
    lm.setMaxfev(2000);
    lm.minimize(x);
    const double err = (tritter_mesh(x, f) - u).cwiseAbs().maxCoeff();
    if (err < best_err) {
      best_err = err;
      best = x;
    }
    if (best_err <= kTritterFitTol) return best;
  }
  throw DecompositionError(
      "tritter mesh fit did not converge: best residual " +
      std::to_string(best_err));
}

}  // namespace detail

inline MBS3Decomposition decompose_mbs3(const UnitaryMatrix& u) {
  if (u.dim() != 3) {
    throw DimensionError("mbs3 needs a 3x3 matrix, got dimension " +
                         std::to_string(u.dim()));
  }
  const ComplexMatrix b = b23_half();
  const UnitaryMatrix uprime(b * u.matrix() * b);
  const DecompositionResult cl = decompose_clements(uprime);
  // Application order is T12 (c), T23 (b), T12 (a).
  const MeshBlock& bc = cl.blocks.at(0);
  const MeshBlock& bb = cl.blocks.at(1);
  const MeshBlock& ba = cl.blocks.at(2);

  // 1 (+) T(t, f) = e^{2i(t+f)} diag(e^{-2i(t+f)}, 1, 1) (1 (+) T~(-t, -f)),
  // and the leading diagonal is absorbed by T12(a) as a shift of its phi.
  MBS3Params p;
  p.mu2 = bc.theta;
  p.nu1 = bc.phi;
  p.mu3 = -bb.theta;
  p.nu2 = -bb.phi;
  p.mu4 = ba.theta;
  p.nu3 = wrap_angle(2.0 * (ba.phi - bb.theta - bb.phi)) / 2.0;
  p.delta1 = cl.diag.deltas[0];
  p.nu4 = cl.diag.deltas[2];
  p.global_phase = wrap_angle(cl.global_phase + 2.0 * (bb.theta + bb.phi));

  MBS3Decomposition out;
  out.params = p;
  DecompositionResult& r = out.result;
  r.scheme = Scheme::Mbs3;
  r.blocks = {{1, 2, p.mu2, p.nu1, BlockFlavor::T},
              {2, 3, p.mu3, p.nu2, BlockFlavor::TTilde},
              {1, 2, p.mu4, p.nu3, BlockFlavor::T}};
  r.diag.deltas = {p.delta1, 0.0, p.nu4};
  r.global_phase = p.global_phase;

  const Eigen::VectorXd x = detail::fit_tritter_masks(u.matrix());
  const UnitaryMatrix f = fixed_tritter_block();
  Circuit c(3);
  for (int j = 0; j < detail::kTritterMasks; ++j) {
    if (j > 0) c.add(FixedBlock{1, std::string(kTritterTag), f.matrix()});
    PhaseMask mask;
    for (int q = 0; q < 3; ++q) mask.phases.push_back(wrap_angle(x(3 * j + q)));
    c.add(std::move(mask));
  }
  r.circuit = std::move(c);
  return out;
}

}  // namespace mbsynth
