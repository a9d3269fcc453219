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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mbsynth/primitives.hpp"
#include "oracles.hpp"

using namespace mbsynth;
using Catch::Matchers::WithinAbs;

namespace {

double maxdiff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix d2(double alpha) {
  return diag_matrix({{alpha, 0.0}});
}

}  // namespace

TEST_CASE("beamsplitter matrices", "[primitives]") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(maxdiff(bs_matrix(BSRatio(0.5)), mat2(s, s, s, -s)) <= 1e-15);
  CHECK(maxdiff(bs_matrix(BSRatio(1.0)), mat2(0, 1, 1, 0)) <= 1e-15);
  const double a = 1.0 / std::sqrt(3.0);
  const double b = std::sqrt(2.0) / std::sqrt(3.0);
  CHECK(maxdiff(bs_matrix(BSRatio(2.0 / 3.0)), mat2(a, b, b, -a)) <= 1e-15);
  CHECK_THROWS_AS(BSRatio(1.5), ValidationError);
  CHECK_THROWS_AS(BSRatio(-0.1), ValidationError);
  CHECK_THROWS_AS(BSRatio(std::nan("")), ValidationError);
}

TEST_CASE("aMZI block", "[primitives]") {
  CHECK(maxdiff(t_matrix({0, 0}), ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(maxdiff(t_matrix({kPi / 2, 0}), mat2(0, -1, -1, 0)) <= 1e-15);
  CHECK(unitarity_defect(t_matrix({kPi / 4, kPi / 8})) <= 1e-12);
  for (double th = -3; th < 3; th += 0.7) {
    for (double ph = -3; ph < 3; ph += 0.9) {
      CHECK(maxdiff(t_matrix({th, ph}), oracle::to(oracle::t_block(th, ph))) <= 1e-15);
    }
  }
}

TEST_CASE("modified aMZI block", "[primitives]") {
  CHECK(maxdiff(t_tilde_matrix({0, 0}), ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(unitarity_defect(t_tilde_matrix({kPi / 3, kPi / 5})) <= 1e-12);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double th = -kPi + 2 * kPi * i / 19.0;
      const double ph = -kPi + 2 * kPi * j / 19.0;
      const ComplexMatrix rhs = std::polar(1.0, 2 * (th + ph)) * t_matrix({-th, -ph}).matrix();
      CHECK(maxdiff(t_tilde_matrix({th, ph}), rhs) <= 1e-12);
    }
  }
}

TEST_CASE("sMZI block", "[primitives]") {
  CHECK(maxdiff(smzi_matrix({0, 0}), ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(maxdiff(smzi_matrix({kPi, kPi}), -ComplexMatrix::Identity(2, 2)) <= 1e-15);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const Complex i(0, 1);
  for (int k = 0; k < 200; ++k) {
    const double p11 = angle(gen);
    const double p12 = angle(gen);
    const double d = (p11 - p12) / 2;
    const ComplexMatrix sx = std::polar(1.0, (p11 + p12) / 2) *
                             mat2(std::cos(d), i * std::sin(d), i * std::sin(d), std::cos(d));
    CHECK(maxdiff(smzi_matrix({p11, p12}), sx) <= 1e-12);
    // B(1/2) diag(e^{i p11}, e^{i p12}) B(1/2) by plain loops
    const oracle::Dense b = oracle::bs(0.5);
    const oracle::Dense m =
        oracle::mul(b, oracle::mul(oracle::diag_phases({p11, p12}), b));
    CHECK(maxdiff(smzi_matrix({p11, p12}), oracle::to(m)) <= 1e-12);
  }
}

TEST_CASE("sMZI with an external phase is an aMZI", "[primitives]") {
  for (double th = -3; th <= 3; th += 0.25) {
    for (double ph = -3; ph <= 3; ph += 0.25) {
      const ComplexMatrix lhs = smzi_matrix({2 * th, 0}).matrix() * d2(ph);
      CHECK(maxdiff(lhs, t_matrix({th, ph})) <= 1e-12);
    }
  }
}

TEST_CASE("moving an inverse aMZI through a diagonal", "[primitives]") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 500; ++k) {
    const double th = angle(gen);
    const double ph = angle(gen);
    const double al = angle(gen);
    const ComplexMatrix lhs = t_matrix({th, ph}).matrix().inverse() * d2(al);
    const ComplexMatrix rhs = d2(-ph) * t_matrix({-th, al}).matrix();
    CHECK(maxdiff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("diagonal phase matrix", "[primitives]") {
  CHECK(maxdiff(diag_matrix({{0, 0, 0, 0}}), ComplexMatrix::Identity(4, 4)) <= 1e-15);
  CHECK(maxdiff(diag_matrix({{kPi / 2}}), -ComplexMatrix::Identity(1, 1)) <= 1e-15);
  const ComplexMatrix d = diag_matrix({{-kPi / 4, 0, 3 * kPi / 8}});
  CHECK(std::abs(d(0, 0) - Complex(0, -1)) <= 1e-15);
  CHECK(std::abs(d(1, 1) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(d(2, 2) - std::polar(1.0, 3 * kPi / 4)) <= 1e-15);
  CHECK(std::abs(d(0, 2)) == 0.0);
  CHECK_THROWS_AS(diag_matrix({}), DimensionError);
}

TEST_CASE("tritter matrix", "[primitives]") {
  const double a = 1 / std::sqrt(3.0);
  const double b = std::sqrt(2.0) / std::sqrt(3.0);
  const double c = 1 / std::sqrt(6.0);
  const double h = 1 / std::sqrt(2.0);
  ComplexMatrix expected(3, 3);
  expected << a, b, 0, a, -c, h, a, -c, -h;
  const UnitaryMatrix t = tritter_matrix();
  CHECK(maxdiff(t, expected) <= 1e-12);
  CHECK_THAT(t(1, 2).real(), WithinAbs(h, 1e-15));
  for (int r = 0; r < 3; ++r) CHECK_THAT(t(r, 0).real(), WithinAbs(a, 1e-15));
  CHECK(unitarity_defect(t) <= 1e-12);
  // B23(1/2) B12(2/3) by plain loops
  const oracle::Dense p = oracle::mul(oracle::embed2(3, oracle::bs(0.5), 1, 2),
                                      oracle::embed2(3, oracle::bs(2.0 / 3.0), 0, 1));
  CHECK(maxdiff(t, oracle::to(p)) <= 1e-15);
}

TEST_CASE("fixed tritter block", "[primitives]") {
  const UnitaryMatrix f = fixed_tritter_block();
  CHECK(unitarity_defect(f) <= 1e-12);
  CHECK_THAT(f(0, 0).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  const oracle::Dense p = oracle::mul(oracle::embed2(3, oracle::bs(0.5), 1, 2),
                                      oracle::embed2(3, oracle::bs(0.5), 0, 1));
  CHECK(maxdiff(f, oracle::to(p)) <= 1e-15);
}

TEST_CASE("multiport beamsplitter", "[primitives]") {
  CHECK(maxdiff(mbs_matrix(2), bs_matrix(BSRatio(0.5))) <= 1e-15);
  CHECK(maxdiff(mbs_matrix(3), tritter_matrix()) <= 1e-15);
  for (int n = 2; n <= 10; ++n) {
    const UnitaryMatrix m = mbs_matrix(n);
    CHECK(unitarity_defect(m) <= 1e-12);
    for (int r = 0; r < n; ++r) {
      CHECK_THAT(std::norm(m(r, 0)), WithinAbs(1.0 / n, 1e-12));
    }
  }
  CHECK_THROWS_AS(mbs_matrix(1), DimensionError);
}
