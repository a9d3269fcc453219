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

// Unambiguous discrimination of |chi+-> = a|0> +- b|1> with a three-mode
// interferometer: POVM vectors, the extended unitary, success probability
// and closed-form mesh parameters.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

#include "mbsynth/decomp.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

class USDParams {
 public:
  /// a = 1 / sqrt(1 + delta^2), b = delta a.
  static USDParams from_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ValidationError("delta must lie in (0, 1), got " +
                            std::to_string(delta));
    }
    const double a = 1.0 / std::sqrt(1.0 + delta * delta);
    return USDParams(a, delta * a, delta);
  }

  static USDParams from_amplitudes(double a, double b) {
    if (!(a > b && b > 0.0)) {
      throw ValidationError("amplitudes must satisfy a > b > 0");
    }
    if (std::abs(a * a + b * b - 1.0) > 1e-12) {
      throw ValidationError("amplitudes must satisfy a^2 + b^2 = 1");
    }
    return USDParams(a, b, b / a);
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double delta() const noexcept { return delta_; }
  /// sqrt(1 - delta^2)
  double r() const noexcept { return std::sqrt(1.0 - delta_ * delta_); }

 private:
  USDParams(double a, double b, double delta) : a_(a), b_(b), delta_(delta) {}

  double a_;
  double b_;
  double delta_;
};

using Vector3c = Eigen::Vector3cd;

struct POVMSet {
  std::array<Vector3c, 3> u;  ///< E_mu = |u_mu><u_mu| on the qubit span
  std::array<Vector3c, 3> n;  ///< completion along |2>
  std::array<Vector3c, 3> w;  ///< w_mu = u_mu + n_mu, orthonormal
};

inline POVMSet povm_set(const USDParams& p) {
  const double d = p.delta();
  const double r = p.r();
  const double s = 1.0 / std::sqrt(2.0);
  POVMSet set;
  set.u[0] << d * s, s, 0.0;
  set.u[1] << d * s, -s, 0.0;
  set.u[2] << r, 0.0, 0.0;
  set.n[0] << 0.0, 0.0, r * s;
  set.n[1] << 0.0, 0.0, r * s;
  set.n[2] << 0.0, 0.0, -d;
  for (int k = 0; k < 3; ++k) set.w[k] = set.u[k] + set.n[k];
  return set;
}

/// sum_j |j><w_j|.
inline UnitaryMatrix usd_unitary(const USDParams& p) {
  const POVMSet set = povm_set(p);
  ComplexMatrix m(3, 3);
  for (int j = 0; j < 3; ++j) m.row(j) = set.w[j].adjoint();
  return UnitaryMatrix(std::move(m));
}

inline Vector3c chi(const USDParams& p, int sign) {
  Vector3c v;
  v << p.a(), sign * p.b(), 0.0;
  return v;
}

struct USDOutputs {
  Vector3c plus;
  Vector3c minus;
};

inline USDOutputs apply_to_inputs(const USDParams& p) {
  const ComplexMatrix u = usd_unitary(p);
  return {u * chi(p, +1), u * chi(p, -1)};
}

/// 1/2 P(|0> | +) + 1/2 P(|1> | -), read off the actual output amplitudes.
inline double success_probability(const USDParams& p) {
  const USDOutputs out = apply_to_inputs(p);
  return 0.5 * std::norm(out.plus(0)) + 0.5 * std::norm(out.minus(1));
}

/// 1 - <chi+|chi->.
inline double optimal_success_probability(const USDParams& p) {
  return 1.0 - std::abs(chi(p, +1).dot(chi(p, -1)));
}

/// 50:50 beamsplitter on modes 2, 3 of a three-mode circuit.
inline ComplexMatrix usd_mode23_bs() {
  return embed_adjacent(3, bs_matrix(BSRatio(0.5)), 2);
}

/// Explicit B23 U B23 for the discrimination unitary.
inline UnitaryMatrix usd_uprime(const USDParams& p) {
  const double d = p.delta();
  const double r = p.r();
  const double s2 = std::sqrt(2.0);
  ComplexMatrix m(3, 3);
  m << d / s2, (1.0 + r) / 2.0, (1.0 - r) / 2.0,  //
      d / 2.0 + r / s2, (r - 1.0) / (2.0 * s2) - d / 2.0,
      -(1.0 + r) / (2.0 * s2) + d / 2.0,  //
      d / 2.0 - r / s2, (r - 1.0) / (2.0 * s2) + d / 2.0,
      -(1.0 + r) / (2.0 * s2) - d / 2.0;
  return UnitaryMatrix(std::move(m));
}

/// Rectangular-mesh closed form of U:
/// e^{i(t3 + pi/4)} D3(-pi/4, 0, 3pi/8) T12(-3pi/4, pi/2 - t3/2)
///   T23(-t3, pi/8 - t3/2) T12(pi/2, t3/2 + pi/8), t3 = atan(r / delta).
struct USDClementsForm {
  double theta3 = 0.0;
  std::array<MeshBlock, 3> blocks;  ///< in the order they act
  DiagPhases diag;
  double global_phase = 0.0;
  ComplexMatrix matrix;  ///< product without the global phase
  double residual = 0.0;  ///< max |e^{i g} matrix - U|
};

inline USDClementsForm usd_clements_closed_form(const USDParams& p) {
  USDClementsForm f;
  const double t3 = std::atan(p.r() / p.delta());
  f.theta3 = t3;
  f.blocks = {MeshBlock{1, 2, kPi / 2.0, t3 / 2.0 + kPi / 8.0, BlockFlavor::T},
              MeshBlock{2, 3, -t3, kPi / 8.0 - t3 / 2.0, BlockFlavor::T},
              MeshBlock{1, 2, -3.0 * kPi / 4.0, kPi / 2.0 - t3 / 2.0,
                        BlockFlavor::T}};
  f.diag.deltas = {-kPi / 4.0, 0.0, 3.0 * kPi / 8.0};
  f.global_phase = t3 + kPi / 4.0;
  f.matrix = block_product(
      3, std::vector<MeshBlock>(f.blocks.begin(), f.blocks.end()), f.diag);
  f.residual = (std::polar(1.0, f.global_phase) * f.matrix -
                usd_unitary(p).matrix())
                   .cwiseAbs()
                   .maxCoeff();
  return f;
}

struct USDClosedForm {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  double a1 = 0.0;
};

/// 6 - delta^2 - 2r - 2 sqrt2 delta - 2 sqrt2 delta r.
inline double usd_a1_squared(double delta) {
  const double r = std::sqrt(1.0 - delta * delta);
  const double s2 = std::sqrt(2.0);
  return 6.0 - delta * delta - 2.0 * r - 2.0 * s2 * delta -
         2.0 * s2 * delta * r;
}

/// Angles of the rectangular-mesh form of U'. Quadrants come from atan2 so
/// that each factor below holds over the whole range of delta.
inline USDClosedForm usd_closed_form_angles(const USDParams& p) {
  const double d = p.delta();
  const double r = p.r();
  const double s2 = std::sqrt(2.0);
  USDClosedForm f;
  f.a1 = std::sqrt(usd_a1_squared(d));
  f.theta1 = std::atan2(s2 * d - 2.0 * r, r - 1.0 + s2 * d);
  f.theta2 = std::atan2(s2 * (1.0 - r), 1.0 + r - s2 * d);
  f.theta3 = std::atan2(f.a1, 1.0 + s2 * d + r);
  f.phi1 = -kPi / 2.0;
  f.phi2 = kPi / 2.0;
  f.phi3 = -kPi / 2.0 + f.theta2;
  return f;
}

/// The four explicit 3x3 factors whose product is U'.
inline std::array<ComplexMatrix, 4> uprime_factors(const USDParams& p) {
  const USDClosedForm f = usd_closed_form_angles(p);
  const double d = p.delta();
  const double r = p.r();
  const double s2 = std::sqrt(2.0);
  const double a1 = f.a1;
  const double t1 = f.theta1;
  const double t2 = f.theta2;
  const double t3 = f.theta3;
  const Complex i(0.0, 1.0);
  auto e = [](double x) { return std::polar(1.0, x); };

  ComplexMatrix m1 = ComplexMatrix::Identity(3, 3);
  m1(0, 0) = -i * e(-t2) * (1.0 + r - s2 * d) / a1;
  m1(0, 1) = -e(-t2) * s2 * (1.0 - r) / a1;
  m1(1, 0) = -i * e(-t2) * s2 * (1.0 - r) / a1;
  m1(1, 1) = e(-t2) * (1.0 + r - s2 * d) / a1;

  ComplexMatrix m2 = ComplexMatrix::Identity(3, 3);
  const double q = 1.0 + s2 * d + r;
  m2(1, 1) = e(-t3) * q / (2.0 * s2);
  m2(1, 2) = i * e(-t3) * a1 / (2.0 * s2);
  m2(2, 1) = -e(-(t2 + t3)) * a1 / (2.0 * s2);
  m2(2, 2) = i * e(-(t2 + t3)) * q / (2.0 * s2);

  ComplexMatrix m3 = ComplexMatrix::Zero(3, 3);
  m3(0, 0) = e(t2 - t1 + kPi);
  m3(1, 1) = e(kPi + t3 + t2 - t1);
  m3(2, 2) = e(kPi / 2.0 + t2 + t3);

  ComplexMatrix m4 = ComplexMatrix::Identity(3, 3);
  m4(0, 0) = -i * e(t1) * (r - 1.0 + s2 * d) / a1;
  m4(0, 1) = i * e(t1) * s2 * (d - s2 * r) / a1;
  m4(1, 0) = e(t1) * s2 * (d - s2 * r) / a1;
  m4(1, 1) = e(t1) * (r - 1.0 + s2 * d) / a1;
  return {m1, m2, m3, m4};
}

struct UPrimeForm {
  USDClosedForm form;
  ComplexMatrix matrix;        ///< product without the global phase
  double global_phase = 0.0;   ///< 2 theta2 + theta3
  double factor_residual = 0.0;  ///< max |m1 m2 m3 m4 - U'|
  double residual = 0.0;         ///< max |e^{i g} matrix - U'|
};

/// e^{i(2t2 + t3)} D3(-pi/4, 0, pi/4 - t2/2) T12(-t2, (pi - t1 - t2 - t3)/2)
///   [1 (+) e^{-i(2t3 + t2 - pi/2)} T(t3, pi/4 - t1/2)] T12(t1, -pi/4).
inline UPrimeForm uprime_closed_form(const USDParams& p) {
  UPrimeForm out;
  out.form = usd_closed_form_angles(p);
  const double t1 = out.form.theta1;
  const double t2 = out.form.theta2;
  const double t3 = out.form.theta3;

  ComplexMatrix mid = ComplexMatrix::Identity(3, 3);
  mid.bottomRightCorner(2, 2) = std::polar(1.0, -(2.0 * t3 + t2 - kPi / 2.0)) *
                                t_matrix({t3, kPi / 4.0 - t1 / 2.0}).matrix();
  out.matrix = diag_matrix({{-kPi / 4.0, 0.0, kPi / 4.0 - t2 / 2.0}}).matrix() *
               embed_adjacent(3, t_matrix({-t2, (kPi - t1 - t2 - t3) / 2.0}),
                              1) *
               mid * embed_adjacent(3, t_matrix({t1, -kPi / 4.0}), 1);
  out.global_phase = 2.0 * t2 + t3;

  const ComplexMatrix up = usd_uprime(p);
  const auto fs = uprime_factors(p);
  out.factor_residual =
      (fs[0] * fs[1] * fs[2] * fs[3] - up).cwiseAbs().maxCoeff();
  out.residual = (std::polar(1.0, out.global_phase) * out.matrix - up)
                     .cwiseAbs()
                     .maxCoeff();
  return out;
}

}  // namespace mbsynth
