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

// JSON reading and writing for matrices and circuits.
//
//   matrix:  {"n": N, "re": [[...], ...], "im": [[...], ...]}   (row-major)
//   circuit: {"width": N, "elements": [ {"kind": "ps", "mode", "phase"},
//                                       {"kind": "bs", "mode", "eta"},
//                                       {"kind": "mask", "phases"},
//                                       {"kind": "block", "first_mode", "tag",
//                                        "matrix"} ]}
//
// Doubles are written in shortest round-trip form, so reading back a written
// document reproduces every value bit for bit.

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>

#include "mbsynth/circuit.hpp"
#include "mbsynth/matcore.hpp"

namespace mbsynth {

using Json = nlohmann::json;

namespace detail {

inline std::string pointer(const std::string& base, std::string_view key) {
  return base + "/" + std::string(key);
}

inline std::string pointer(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

inline const Json& require(const Json& obj, std::string_view key,
                           const std::string& where) {
  if (!obj.is_object()) throw ParseError("expected an object", where);
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    throw ParseError("missing field '" + std::string(key) + "'", where);
  }
  return *it;
}

inline double read_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("expected a number", where);
  return v.get<double>();
}

inline int read_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError("expected an integer", where);
  const auto x = v.get<long long>();
  if (x < -(1LL << 30) || x > (1LL << 30)) {
    throw ParseError("integer out of range", where);
  }
  return static_cast<int>(x);
}

inline int read_mode(const Json& obj, std::string_view key, int width,
                     const std::string& where) {
  const std::string at = pointer(where, key);
  const int mode = read_int(require(obj, key, where), at);
  if (mode < 1 || mode > width) {
    throw ParseError("mode index " + std::to_string(mode) +
                         " outside [1, " + std::to_string(width) + "]",
                     at);
  }
  return mode;
}

inline Json read_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("malformed JSON: " + std::string(e.what()),
                     "byte " + std::to_string(e.byte));
  }
}

inline Json rows_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void rows_from_json(const Json& rows, int n, const std::string& where,
                           Eigen::MatrixXd& out) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " rows", where);
  }
  out.resize(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string at = pointer(where, static_cast<std::size_t>(r));
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("expected " + std::to_string(n) + " entries", at);
    }
    for (int c = 0; c < n; ++c) {
      out(r, c) = read_number(row[static_cast<std::size_t>(c)],
                              pointer(at, static_cast<std::size_t>(c)));
    }
  }
}

}  // namespace detail

inline Json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("only square matrices are serialized");
  }
  return Json{{"n", m.rows()},
              {"re", detail::rows_to_json(m.real())},
              {"im", detail::rows_to_json(m.imag())}};
}

inline ComplexMatrix matrix_from_json(const Json& doc,
                                      const std::string& where = "") {
  const int n = detail::read_int(detail::require(doc, "n", where),
                                 detail::pointer(where, "n"));
  if (n < 1) throw ParseError("matrix dimension must be >= 1", where + "/n");
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;
  detail::rows_from_json(detail::require(doc, "re", where), n,
                         detail::pointer(where, "re"), re);
  detail::rows_from_json(detail::require(doc, "im", where), n,
                         detail::pointer(where, "im"), im);
  ComplexMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return m;
}

inline std::string serialize_matrix(const ComplexMatrix& m) {
  return matrix_to_json(m).dump(2) + "\n";
}

inline ComplexMatrix parse_matrix(std::string_view text) {
  return matrix_from_json(detail::read_document(text));
}

namespace detail {

inline Json element_to_json(const PhaseShifter& e) {
  return Json{{"kind", "ps"}, {"mode", e.mode}, {"phase", e.phase}};
}
inline Json element_to_json(const Beamsplitter& e) {
  return Json{{"kind", "bs"}, {"mode", e.mode}, {"eta", e.eta}};
}
inline Json element_to_json(const PhaseMask& e) {
  return Json{{"kind", "mask"}, {"phases", e.phases}};
}
inline Json element_to_json(const FixedBlock& e) {
  return Json{{"kind", "block"},
              {"first_mode", e.first_mode},
              {"tag", e.tag},
              {"matrix", matrix_to_json(e.matrix)}};
}

inline Element element_from_json(const Json& obj, int width,
                                 const std::string& where) {
  const Json& kind_v = require(obj, "kind", where);
  if (!kind_v.is_string()) {
    throw ParseError("element kind must be a string", pointer(where, "kind"));
  }
  const auto kind = kind_v.get<std::string>();
  if (kind == "ps") {
    return PhaseShifter{
        read_mode(obj, "mode", width, where),
        read_number(require(obj, "phase", where), pointer(where, "phase"))};
  }
  if (kind == "bs") {
    const int mode = read_mode(obj, "mode", width, where);
    if (mode + 1 > width) {
      throw ParseError("beamsplitter needs modes " + std::to_string(mode) +
                           " and " + std::to_string(mode + 1),
                       pointer(where, "mode"));
    }
    const double eta =
        read_number(require(obj, "eta", where), pointer(where, "eta"));
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw ParseError("beamsplitter ratio outside [0, 1]",
                       pointer(where, "eta"));
    }
    return Beamsplitter{mode, eta};
  }
  if (kind == "mask") {
    const Json& phases = require(obj, "phases", where);
    const std::string at = pointer(where, "phases");
    if (!phases.is_array()) throw ParseError("expected an array", at);
    PhaseMask mask;
    for (std::size_t k = 0; k < phases.size(); ++k) {
      mask.phases.push_back(read_number(phases[k], pointer(at, k)));
    }
    return mask;
  }
  if (kind == "block") {
    FixedBlock block;
    block.first_mode = read_mode(obj, "first_mode", width, where);
    const Json& tag = require(obj, "tag", where);
    if (!tag.is_string()) {
      throw ParseError("tag must be a string", pointer(where, "tag"));
    }
    block.tag = tag.get<std::string>();
    block.matrix =
        matrix_from_json(require(obj, "matrix", where), pointer(where, "matrix"));
    return block;
  }
  throw ParseError("unknown element kind '" + kind + "'",
                   pointer(where, "kind"));
}

}  // namespace detail

inline Json circuit_to_json(const Circuit& c) {
  Json elements = Json::array();
  for (const Element& e : c.elements()) {
    elements.push_back(
        std::visit([](const auto& el) { return detail::element_to_json(el); },
                   e));
  }
  return Json{{"width", c.width()}, {"elements", std::move(elements)}};
}

inline Circuit circuit_from_json(const Json& doc) {
  const int width =
      detail::read_int(detail::require(doc, "width", ""), "/width");
  if (width < 1) throw ParseError("width must be >= 1", "/width");
  const Json& elements = detail::require(doc, "elements", "");
  if (!elements.is_array()) throw ParseError("expected an array", "/elements");
  Circuit c(width);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const std::string at = detail::pointer("/elements", k);
    Element e = detail::element_from_json(elements[k], width, at);
    try {
      c.add(std::move(e));
    } catch (const StructuralError& err) {
      throw ParseError(err.what(), at);
    }
  }
  return c;
}

inline std::string serialize(const Circuit& c) {
  return circuit_to_json(c).dump(2) + "\n";
}

inline Circuit deserialize(std::string_view text) {
  return circuit_from_json(detail::read_document(text));
}

}  // namespace mbsynth
