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

// Multiport-beamsplitter mesh for N >= 3.
//
// Each T(t, f) of the rectangular decomposition equals
// B diag(e^{2it}, 1) B diag(e^{2if}, 1) with B = B(1/2). The blocks are packed
// into N columns of disjoint pairs, so the mesh reads
//
//   L  Bc(N-1) Q(N-1) Bc(N-1) P(N-1) ... Bc(0) Q(0) Bc(0) P(0)
//
// where Bc(k) holds every 50:50 beamsplitter of column k. Each P(k), k >= 1,
// is split as A(k) C(k-1) with A(k) commuting with Bc(k) and C(k-1) commuting
// with Bc(k-1). That moves it off the neighbouring pair Bc(k) Bc(k-1), which
// becomes one fixed N-mode block, and leaves N + 2 phase masks:
//
//   P(0) | Bc(0) | Q(0)+C(0) | Bc(1)Bc(0) | A(1)+Q(1)+C(1) | ... | Bc(N-1) | L

#include <optional>
#include <string>
#include <vector>

#include "mbsynth/circuit.hpp"
#include "mbsynth/decomp.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

namespace detail {

/// Pairs (m, m+1), 0-based, used by column k: m = k mod 2, k mod 2 + 2, ...
inline std::vector<int> column_pairs(int n, int k) {
  std::vector<int> pairs;
  for (int m = k % 2; m + 1 < n; m += 2) pairs.push_back(m);
  return pairs;
}

inline ComplexMatrix bs_column(int n, int k) {
  const ComplexMatrix half = bs_matrix(BSRatio(0.5));
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  for (int m : column_pairs(n, k)) {
    out.block(m, m, 2, 2) = half;
  }
  return out;
}

/// Index of the mode group containing mode i in column k: a pair is keyed by
/// its upper mode, a mode left unpaired by n + i.
inline int group_of(int n, int k, int i) {
  const int s = k % 2;
  if (i >= s) {
    const int m = s + 2 * ((i - s) / 2);
    if (m + 1 < n) return m;
  }
  return n + i;
}

}  // namespace detail

inline DecompositionResult decompose_bwc(const UnitaryMatrix& u) {
  const int n = static_cast<int>(u.dim());
  if (n < 3) {
    throw DimensionError("bwc needs N >= 3, got " + std::to_string(n));
  }
  DecompositionResult out = decompose_clements(u);
  out.scheme = Scheme::Bwc;
  const auto nn = static_cast<std::size_t>(n);

  // As-soon-as-possible packing; column k only holds pairs with m = k mod 2.
  using Vec = std::vector<double>;
  std::vector<Vec> q(nn, Vec(nn, 0.0));
  std::vector<Vec> p(nn, Vec(nn, 0.0));
  std::vector<int> next_free(nn, 0);
  for (const MeshBlock& b : out.blocks) {
    const int m = b.m - 1;
    int col = std::max(next_free[static_cast<std::size_t>(m)],
                       next_free[static_cast<std::size_t>(m + 1)]);
    if (col % 2 != m % 2) ++col;
    if (col >= n) {
      throw DecompositionError("mesh does not fit in " + std::to_string(n) +
                               " columns");
    }
    const auto k = static_cast<std::size_t>(col);
    q[k][static_cast<std::size_t>(m)] = 2.0 * b.theta;
    p[k][static_cast<std::size_t>(m)] = 2.0 * b.phi;
    next_free[static_cast<std::size_t>(m)] = col + 1;
    next_free[static_cast<std::size_t>(m + 1)] = col + 1;
  }

  std::vector<Vec> a(nn, Vec(nn, 0.0));
  std::vector<Vec> c(nn, Vec(nn, 0.0));
  for (int k = 1; k < n; ++k) {
    const Vec& e = p[static_cast<std::size_t>(k)];
    std::vector<std::optional<double>> av(2 * nn);
    std::vector<std::optional<double>> cv(2 * nn);
    for (int i = 0; i < n; ++i) {
      const auto ga = static_cast<std::size_t>(detail::group_of(n, k, i));
      const auto gc = static_cast<std::size_t>(detail::group_of(n, k - 1, i));
      const double ei = e[static_cast<std::size_t>(i)];
      if (i == 0) {
        av[ga] = 0.0;
        cv[gc] = ei;
      } else if (av[ga]) {
        cv[gc] = ei - *av[ga];
      } else {
        av[ga] = ei - *cv[gc];
      }
    }
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      a[static_cast<std::size_t>(k)][ii] =
          *av[static_cast<std::size_t>(detail::group_of(n, k, i))];
      c[static_cast<std::size_t>(k - 1)][ii] =
          *cv[static_cast<std::size_t>(detail::group_of(n, k - 1, i))];
    }
  }

  auto mask = [&](const Vec& v) {
    PhaseMask pm;
    for (double x : v) pm.phases.push_back(wrap_angle(x));
    return pm;
  };
  auto add_bs_column = [&](Circuit& circ, int k) {
    for (int m : detail::column_pairs(n, k)) {
      circ.add(Beamsplitter{m + 1, 0.5});
    }
  };

  Circuit circ(n);
  circ.add(mask(p[0]));
  add_bs_column(circ, 0);
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    Vec m(nn);
    for (std::size_t i = 0; i < nn; ++i) m[i] = q[kk][i] + a[kk][i] + c[kk][i];
    circ.add(mask(m));
    if (k + 1 < n) {
      circ.add(FixedBlock{
          1, std::string(kMbsTag),
          detail::bs_column(n, k + 1) * detail::bs_column(n, k)});
    }
  }
  add_bs_column(circ, n - 1);
  Vec out_phases(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    out_phases[i] = 2.0 * out.diag.deltas[i] + out.global_phase;
  }
  circ.add(mask(out_phases));
  out.circuit = std::move(circ);
  return out;
}

}  // namespace mbsynth
