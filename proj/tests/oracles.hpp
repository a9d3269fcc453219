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

// Reference computations for tests. These avoid the library's own code paths:
// plain nested loops, dense scans and matrices typed in from their formulas.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "mbsynth/matcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline constexpr double pi = std::numbers::pi;

inline Dense identity(int n) {
  Dense m(n, std::vector<C>(n, 0.0));
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Dense from(const mbsynth::ComplexMatrix& a) {
  Dense m(a.rows(), std::vector<C>(a.cols()));
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
  }
  return m;
}

inline mbsynth::ComplexMatrix to(const Dense& m) {
  mbsynth::ComplexMatrix a(m.size(), m.front().size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) a(r, c) = m[r][c];
  }
  return a;
}

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = b.front().size();
  Dense out(n, std::vector<C>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      C s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += a[i][l] * b[l][j];
      out[i][j] = s;
    }
  }
  return out;
}

/// Identity of size n with the 2x2 block written at 0-based rows/cols (p, q).
inline Dense embed2(int n, const Dense& b, int p, int q) {
  Dense m = identity(n);
  m[p][p] = b[0][0];
  m[p][q] = b[0][1];
  m[q][p] = b[1][0];
  m[q][q] = b[1][1];
  return m;
}

inline Dense bs(double eta) {
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  return {{r, t}, {t, -r}};
}

inline Dense t_block(double th, double ph) {
  const C i(0.0, 1.0);
  const C g = std::exp(i * th);
  const C e = std::exp(2.0 * i * ph);
  return {{g * e * std::cos(th), g * i * std::sin(th)},
          {g * i * e * std::sin(th), g * std::cos(th)}};
}

inline Dense diag_phases(const std::vector<double>& phases) {
  Dense m = identity(static_cast<int>(phases.size()));
  for (std::size_t k = 0; k < phases.size(); ++k) {
    m[k][k] = std::polar(1.0, phases[k]);
  }
  return m;
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      d = std::max(d, std::abs(a[r][c] - b[r][c]));
    }
  }
  return d;
}

/// min over alpha of max |u - e^{i alpha} v| by a dense scan plus a fine
/// local scan around the best sample.
inline double phase_distance_scan(const Dense& u, const Dense& v,
                                  int samples = 20000) {
  auto cost = [&](double a) {
    const C ph = std::polar(1.0, a);
    double d = 0.0;
    for (std::size_t r = 0; r < u.size(); ++r) {
      for (std::size_t c = 0; c < u[r].size(); ++c) {
        d = std::max(d, std::abs(u[r][c] - ph * v[r][c]));
      }
    }
    return d;
  };
  double best_a = 0.0;
  double best = cost(0.0);
  const double step = 2.0 * pi / samples;
  for (int k = 1; k < samples; ++k) {
    const double f = cost(k * step);
    if (f < best) {
      best = f;
      best_a = k * step;
    }
  }
  for (int k = -2000; k <= 2000; ++k) {
    best = std::min(best, cost(best_a + k * step / 1000.0));
  }
  return best;
}

inline double unitarity_defect(const Dense& m) {
  const std::size_t n = m.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      C s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += std::conj(m[k][i]) * m[k][j];
      d = std::max(d, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return d;
}

}  // namespace oracle
