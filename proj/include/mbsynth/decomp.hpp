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

// Two-mode mesh decompositions: nullification of single entries with aMZI
// blocks, the triangular (Reck) and rectangular (Clements) sweeps and the
// single-block U(2) case.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbsynth/circuit.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

enum class Scheme { Reck, Clements, U2, Mbs3, Bwc };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Reck:
      return "reck";
    case Scheme::Clements:
      return "clements";
    case Scheme::U2:
      return "u2";
    case Scheme::Mbs3:
      return "mbs3";
    case Scheme::Bwc:
      return "bwc";
  }
  return "unknown";
}

inline std::optional<Scheme> scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::Reck, Scheme::Clements, Scheme::U2, Scheme::Mbs3,
                   Scheme::Bwc}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

enum class BlockFlavor { T, TTilde, SMZI };

inline std::string_view to_string(BlockFlavor f) {
  switch (f) {
    case BlockFlavor::T:
      return "T";
    case BlockFlavor::TTilde:
      return "T~";
    case BlockFlavor::SMZI:
      return "sMZI";
  }
  return "?";
}

/// A two-mode block on modes (m, n), 1-based. For the sMZI flavor theta and
/// phi hold the two internal phases (phi11, phi12).
struct MeshBlock {
  int m = 1;
  int n = 2;
  double theta = 0.0;
  double phi = 0.0;
  BlockFlavor flavor = BlockFlavor::T;
};

inline UnitaryMatrix block_matrix(const MeshBlock& b) {
  switch (b.flavor) {
    case BlockFlavor::TTilde:
      return t_tilde_matrix({b.theta, b.phi});
    case BlockFlavor::SMZI:
      return smzi_matrix({b.theta, b.phi});
    case BlockFlavor::T:
      break;
  }
  return t_matrix({b.theta, b.phi});
}

struct DecompositionResult {
  Scheme scheme = Scheme::Clements;
  std::vector<MeshBlock> blocks;  ///< in the order they act on the input
  DiagPhases diag;                ///< output phases, D_N = diag(e^{2i delta})
  double global_phase = 0.0;      ///< u = e^{i global_phase} D_N * blocks
  Circuit circuit{1};
};

/// e^{i global_phase} * D_N * B_K * ... * B_1, with B_1 = blocks.front().
inline ComplexMatrix block_product(int n, const std::vector<MeshBlock>& blocks,
                                   const DiagPhases& diag,
                                   double global_phase = 0.0) {
  ComplexMatrix acc = ComplexMatrix::Identity(n, n);
  for (const MeshBlock& b : blocks) {
    acc = embed_block(n, block_matrix(b), b.m, b.n) * acc;
  }
  if (!diag.deltas.empty()) {
    if (static_cast<int>(diag.deltas.size()) != n) {
      throw DimensionError("diagonal phase count does not match dimension");
    }
    acc = diag_matrix(diag).matrix() * acc;
  }
  return std::polar(1.0, global_phase) * acc;
}

inline ComplexMatrix block_product(const DecompositionResult& r) {
  return block_product(r.circuit.width(), r.blocks, r.diag, r.global_phase);
}

/// Appends the physical realization of a T or T~ block: PS, BS(1/2), PS,
/// BS(1/2). The phase shifters sit on the upper mode for T and on the lower
/// mode for T~.
inline void append_block(Circuit& c, const MeshBlock& b) {
  if (b.n != b.m + 1) {
    throw StructuralError("mesh blocks must couple adjacent modes");
  }
  if (b.flavor == BlockFlavor::SMZI) {
    c.add(Beamsplitter{b.m, 0.5});
    c.add(PhaseShifter{b.m, b.theta});
    c.add(PhaseShifter{b.n, b.phi});
    c.add(Beamsplitter{b.m, 0.5});
    return;
  }
  const int mode = b.flavor == BlockFlavor::T ? b.m : b.n;
  c.add(PhaseShifter{mode, 2.0 * b.phi});
  c.add(Beamsplitter{b.m, 0.5});
  c.add(PhaseShifter{mode, 2.0 * b.theta});
  c.add(Beamsplitter{b.m, 0.5});
}

/// One phase shifter per mode with phase 2 delta_k.
inline void append_diag(Circuit& c, const DiagPhases& d) {
  for (std::size_t k = 0; k < d.deltas.size(); ++k) {
    c.add(PhaseShifter{static_cast<int>(k) + 1, 2.0 * d.deltas[k]});
  }
}

enum class Side { Left, Right };

inline constexpr double kNullTol = 1e-12;

/// Angles of a T block on the adjacent pair (m, n) that zero u(row, col).
///
/// Right: u * T^{-1} acting on columns m, n; col must be m or n.
/// Left:  T * u acting on rows m, n; row must be m or n.
/// Indices are 1-based.
inline AMZIParams nullification_angles(const ComplexMatrix& u, int row, int col,
                                       Side side, int m, int n) {
  if (n != m + 1) throw IndexError("nullification pair must be adjacent");
  const auto rows = static_cast<int>(u.rows());
  const auto cols = static_cast<int>(u.cols());
  if (row < 1 || row > rows || col < 1 || col > cols) {
    throw IndexError("target entry outside the matrix");
  }
  const int lim = side == Side::Right ? cols : rows;
  if (m < 1 || n > lim) throw IndexError("pair outside the matrix");
  const int r = row - 1;
  const int c = col - 1;
  if (std::abs(u(r, c)) <= kNullTol) return {0.0, 0.0};

  Complex target;
  Complex pivot;
  double shift = 0.0;
  Complex upper;
  Complex lower;
  if (side == Side::Right) {
    if (col != m && col != n) throw IndexError("target column not in pair");
    upper = u(r, m - 1);
    lower = u(r, n - 1);
    target = col == m ? upper : lower;
    pivot = col == m ? lower : upper;
    shift = col == m ? -kPi / 2.0 : kPi / 2.0;
  } else {
    if (row != m && row != n) throw IndexError("target row not in pair");
    upper = u(m - 1, c);
    lower = u(n - 1, c);
    target = row == n ? lower : upper;
    pivot = row == n ? upper : lower;
    shift = row == n ? kPi / 2.0 : -kPi / 2.0;
  }
  if (pivot == Complex(0.0, 0.0)) return {kPi / 2.0, 0.0};
  const double theta = std::atan2(std::abs(target), std::abs(pivot));
  const double two_phi =
      side == Side::Right ? std::arg(upper) - std::arg(lower) + shift
                          : std::arg(lower) - std::arg(upper) + shift;
  return {theta, wrap_angle(two_phi) / 2.0};
}

namespace detail {

inline void right_apply_inverse(ComplexMatrix& w, int m, AMZIParams p) {
  const ComplexMatrix tinv = t_matrix(p).matrix().adjoint();
  const auto cols = w.middleCols(m - 1, 2).eval();
  w.middleCols(m - 1, 2) = cols * tinv;
}

inline void left_apply(ComplexMatrix& w, int m, AMZIParams p) {
  const ComplexMatrix t = t_matrix(p);
  const auto rows = w.middleRows(m - 1, 2).eval();
  w.middleRows(m - 1, 2) = t * rows;
}

/// Splits the phases of a diagonal matrix into a global phase and D_N
/// deltas, fixing the delta of the second mode (or the only mode) to 0.
inline void normalise_diag(const std::vector<double>& lambda,
                           DecompositionResult& out) {
  const std::size_t ref = lambda.size() > 1 ? 1 : 0;
  out.global_phase = wrap_angle(lambda[ref]);
  out.diag.deltas.clear();
  for (double l : lambda) {
    out.diag.deltas.push_back(wrap_angle(l - lambda[ref]) / 2.0);
  }
}

inline std::vector<double> diagonal_phases(const ComplexMatrix& w) {
  std::vector<double> lambda;
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    lambda.push_back(std::arg(w(k, k)));
  }
  return lambda;
}

inline void emit_mesh(DecompositionResult& out, int n) {
  Circuit c(n);
  for (const MeshBlock& b : out.blocks) append_block(c, b);
  append_diag(c, out.diag);
  out.circuit = std::move(c);
}

}  // namespace detail

/// Triangular sweep: rows N, N-1, ..., 2 are cleared left to right by right
/// multiplication, giving u = e^{i g} D_N T_K ... T_1.
inline DecompositionResult decompose_reck(const UnitaryMatrix& u) {
  const int n = static_cast<int>(u.dim());
  ComplexMatrix w = u.matrix();
  DecompositionResult out;
  out.scheme = Scheme::Reck;
  for (int r = n; r >= 2; --r) {
    for (int c = 1; c < r; ++c) {
      const AMZIParams p = nullification_angles(w, r, c, Side::Right, c, c + 1);
      detail::right_apply_inverse(w, c, p);
      out.blocks.push_back({c, c + 1, p.theta, p.phi, BlockFlavor::T});
    }
  }
  detail::normalise_diag(detail::diagonal_phases(w), out);
  detail::emit_mesh(out, n);
  return out;
}

/// Rectangular sweep over anti-diagonals alternating right and left
/// multiplications. Left blocks are then moved through the diagonal so the
/// result has the form u = e^{i g} D_N T_K ... T_1.
inline DecompositionResult decompose_clements(const UnitaryMatrix& u) {
  const int n = static_cast<int>(u.dim());
  ComplexMatrix w = u.matrix();
  std::vector<MeshBlock> right;
  std::vector<MeshBlock> left;
  for (int i = 0; i + 1 < n; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) {
        const int r = n - j;  // 1-based
        const int c = i - j + 1;
        const AMZIParams p =
            nullification_angles(w, r, c, Side::Right, c, c + 1);
        detail::right_apply_inverse(w, c, p);
        right.push_back({c, c + 1, p.theta, p.phi, BlockFlavor::T});
      }
    } else {
      for (int j = 1; j <= i + 1; ++j) {
        const int r = n + j - i - 1;
        const int c = j;
        const AMZIParams p =
            nullification_angles(w, r, c, Side::Left, r - 1, r);
        detail::left_apply(w, r - 1, p);
        left.push_back({r - 1, r, p.theta, p.phi, BlockFlavor::T});
      }
    }
  }

  // T^{-1}(t, f) diag(e^{i lm}, e^{i ln}) = diag(e^{i(ln - 2f)}, e^{i ln})
  //                                         T(-t, (lm - ln) / 2)
  std::vector<double> lambda = detail::diagonal_phases(w);
  DecompositionResult out;
  out.scheme = Scheme::Clements;
  out.blocks = std::move(right);
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    const double lm = lambda[static_cast<std::size_t>(it->m - 1)];
    const double ln = lambda[static_cast<std::size_t>(it->n - 1)];
    out.blocks.push_back(
        {it->m, it->n, -it->theta, wrap_angle(lm - ln) / 2.0, BlockFlavor::T});
    lambda[static_cast<std::size_t>(it->m - 1)] = ln - 2.0 * it->phi;
  }
  detail::normalise_diag(lambda, out);
  detail::emit_mesh(out, n);
  return out;
}

/// u = e^{i g} D_2(phi2, 0) T(theta1, phi1). The circuit is one T block
/// followed by a single phase shifter of 2 phi2 on mode 1.
inline DecompositionResult decompose_u2(const UnitaryMatrix& u) {
  if (u.dim() != 2) {
    throw DimensionError("decompose_u2 needs a 2x2 matrix, got dimension " +
                         std::to_string(u.dim()));
  }
  ComplexMatrix w = u.matrix();
  const AMZIParams p = nullification_angles(w, 2, 1, Side::Right, 1, 2);
  detail::right_apply_inverse(w, 1, p);
  DecompositionResult out;
  out.scheme = Scheme::U2;
  out.blocks.push_back({1, 2, p.theta, p.phi, BlockFlavor::T});
  detail::normalise_diag(detail::diagonal_phases(w), out);
  Circuit c(2);
  append_block(c, out.blocks.front());
  c.add(PhaseShifter{1, 2.0 * out.diag.deltas[0]});
  out.circuit = std::move(c);
  return out;
}

}  // namespace mbsynth
