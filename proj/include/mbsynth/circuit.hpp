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

// Circuit intermediate representation: an ordered list of optical elements
// over a fixed number of modes. Element 0 acts first; evaluation multiplies
// later elements on the left.

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "mbsynth/matcore.hpp"
#include "mbsynth/primitives.hpp"

namespace mbsynth {

inline constexpr std::string_view kTritterTag = "tritter";
inline constexpr std::string_view kMbsTag = "mbs";

/// Single-mode phase shifter: amplitude on `mode` picks up e^{i phase}.
struct PhaseShifter {
  int mode = 1;
  double phase = 0.0;
  friend bool operator==(const PhaseShifter&, const PhaseShifter&) = default;
};

/// B(eta) between modes (mode, mode+1).
struct Beamsplitter {
  int mode = 1;
  double eta = 0.5;
  friend bool operator==(const Beamsplitter&, const Beamsplitter&) = default;
};

/// One column of phase shifters spanning every mode of the circuit.
struct PhaseMask {
  std::vector<double> phases;
  friend bool operator==(const PhaseMask&, const PhaseMask&) = default;
};

/// Fixed multiport block acting on modes first_mode .. first_mode+dim-1.
struct FixedBlock {
  int first_mode = 1;
  std::string tag;
  ComplexMatrix matrix;

  friend bool operator==(const FixedBlock& a, const FixedBlock& b) {
    return a.first_mode == b.first_mode && a.tag == b.tag &&
           a.matrix.rows() == b.matrix.rows() &&
           a.matrix.cols() == b.matrix.cols() &&
           (a.matrix.array() == b.matrix.array()).all();
  }
};

using Element = std::variant<PhaseShifter, Beamsplitter, PhaseMask, FixedBlock>;

inline bool is_multiport_tag(std::string_view tag) {
  return tag == kTritterTag || tag == kMbsTag;
}

class Circuit {
 public:
  explicit Circuit(int width) : width_(width) {
    if (width < 1) throw StructuralError("circuit width must be >= 1");
  }

  int width() const noexcept { return width_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  /// Appends an element after checking it against the circuit width.
  Circuit& add(Element e) {
    check(e);
    elements_.push_back(std::move(e));
    return *this;
  }

  /// Appends every element of `later` (which then acts after this circuit).
  Circuit& append(const Circuit& later) {
    if (later.width() != width_) {
      throw StructuralError("cannot concatenate circuits of width " +
                            std::to_string(width_) + " and " +
                            std::to_string(later.width()));
    }
    elements_.insert(elements_.end(), later.elements_.begin(),
                     later.elements_.end());
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check(const Element& e) const {
    std::visit([this](const auto& el) { check_element(el); }, e);
  }

  void check_element(const PhaseShifter& ps) const {
    if (ps.mode < 1 || ps.mode > width_) {
      throw StructuralError("phase shifter mode " + std::to_string(ps.mode) +
                            " outside [1, " + std::to_string(width_) + "]");
    }
    if (!std::isfinite(ps.phase)) throw StructuralError("non-finite phase");
  }

  void check_element(const Beamsplitter& bs) const {
    if (bs.mode < 1 || bs.mode + 1 > width_) {
      throw StructuralError("beamsplitter on modes (" +
                            std::to_string(bs.mode) + ", " +
                            std::to_string(bs.mode + 1) +
                            ") does not fit width " + std::to_string(width_));
    }
    if (!(bs.eta >= 0.0 && bs.eta <= 1.0)) {
      throw StructuralError("beamsplitter ratio outside [0, 1]");
    }
  }

  void check_element(const PhaseMask& mask) const {
    if (static_cast<int>(mask.phases.size()) != width_) {
      throw StructuralError("phase mask has " +
                            std::to_string(mask.phases.size()) +
                            " phases for width " + std::to_string(width_));
    }
    for (double p : mask.phases) {
      if (!std::isfinite(p)) throw StructuralError("non-finite mask phase");
    }
  }

  void check_element(const FixedBlock& block) const {
    const auto dim = block.matrix.rows();
    if (dim < 1 || block.matrix.cols() != dim) {
      throw StructuralError("fixed block matrix must be square");
    }
    if (block.first_mode < 1 || block.first_mode + dim - 1 > width_) {
      throw StructuralError("fixed block '" + block.tag + "' of dimension " +
                            std::to_string(dim) + " at mode " +
                            std::to_string(block.first_mode) +
                            " does not fit width " + std::to_string(width_));
    }
    if (!block.matrix.allFinite() || !is_unitary(block.matrix)) {
      throw StructuralError("fixed block '" + block.tag + "' is not unitary");
    }
  }

  int width_;
  std::vector<Element> elements_;
};

namespace detail {

inline void apply_element(ComplexMatrix& acc, const PhaseShifter& ps) {
  acc.row(ps.mode - 1) *= std::polar(1.0, ps.phase);
}

inline void apply_element(ComplexMatrix& acc, const Beamsplitter& bs) {
  const ComplexMatrix b = bs_matrix(BSRatio(bs.eta));
  const auto rows = acc.middleRows(bs.mode - 1, 2).eval();
  acc.middleRows(bs.mode - 1, 2) = b * rows;
}

inline void apply_element(ComplexMatrix& acc, const PhaseMask& mask) {
  for (std::size_t k = 0; k < mask.phases.size(); ++k) {
    acc.row(static_cast<Eigen::Index>(k)) *= std::polar(1.0, mask.phases[k]);
  }
}

inline void apply_element(ComplexMatrix& acc, const FixedBlock& block) {
  const auto dim = block.matrix.rows();
  const auto rows = acc.middleRows(block.first_mode - 1, dim).eval();
  acc.middleRows(block.first_mode - 1, dim) = block.matrix * rows;
}

}  // namespace detail

/// Transfer matrix of the whole circuit.
inline UnitaryMatrix evaluate(const Circuit& c) {
  ComplexMatrix acc = ComplexMatrix::Identity(c.width(), c.width());
  for (const Element& e : c.elements()) {
    std::visit([&acc](const auto& el) { detail::apply_element(acc, el); }, e);
  }
  return UnitaryMatrix(std::move(acc));
}

struct ComponentReport {
  int n_bs = 0;
  int n_ps = 0;
  int n_phase_masks = 0;
  int n_fixed_mbs = 0;
  std::string scheme;

  friend bool operator==(const ComponentReport&,
                         const ComponentReport&) = default;
};

/// A mask phase counts as a physical shifter unless it is 0 mod 2 pi.
inline bool is_nonzero_phase(double phase) {
  return std::abs(wrap_angle(phase)) > 1e-12;
}

/// Counts components by kind. Standalone phase shifters always count; a mask
/// counts once as a mask and contributes its nonzero phases to n_ps. Fixed
/// blocks count towards n_fixed_mbs when tagged as a multiport.
inline ComponentReport count_components(const Circuit& c,
                                        std::string scheme = {}) {
  ComponentReport r;
  r.scheme = std::move(scheme);
  for (const Element& e : c.elements()) {
    std::visit(
        [&r](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, PhaseShifter>) {
            ++r.n_ps;
          } else if constexpr (std::is_same_v<T, Beamsplitter>) {
            ++r.n_bs;
          } else if constexpr (std::is_same_v<T, PhaseMask>) {
            ++r.n_phase_masks;
            for (double p : el.phases) r.n_ps += is_nonzero_phase(p) ? 1 : 0;
          } else {
            if (is_multiport_tag(el.tag)) ++r.n_fixed_mbs;
          }
        },
        e);
  }
  return r;
}

}  // namespace mbsynth
