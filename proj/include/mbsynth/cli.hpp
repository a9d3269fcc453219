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

// Command implementations behind the mbsynth executable. Each command writes
// to the given streams and returns the process exit status.
//
//   0  success
//   2  usage, parse or dimension error
//   3  input matrix is not unitary
//   4  reconstruction distance over tolerance
//   5  scaling report failed

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "mbsynth/analysis.hpp"
#include "mbsynth/bwc.hpp"
#include "mbsynth/circuit.hpp"
#include "mbsynth/decomp.hpp"
#include "mbsynth/matcore.hpp"
#include "mbsynth/mbs3.hpp"
#include "mbsynth/serialization.hpp"
#include "mbsynth/usd.hpp"

namespace mbsynth {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNotUnitary = 3,
  kExitTolerance = 4,
  kExitReport = 5,
};

struct CliConfig {
  std::string command;
  std::optional<std::string> scheme;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> circuit_path;
  std::optional<std::string> save_input_path;
  std::optional<std::string> csv_path;
  std::optional<int> random_n;
  std::optional<std::uint64_t> seed;
  double tolerance = kReconstructionTol;
  std::optional<double> delta;
  int n_min = 2;
  int n_max = 8;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

inline std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

/// Matrix from --input or --random N (Haar, --seed default 1).
inline ComplexMatrix load_matrix(const CliConfig& cfg) {
  if (cfg.input_path && cfg.random_n) {
    throw UsageError("use either --input or --random, not both");
  }
  if (cfg.input_path) return parse_matrix(read_file(*cfg.input_path));
  if (cfg.random_n) {
    return haar_random_unitary(*cfg.random_n, cfg.seed.value_or(1)).matrix();
  }
  throw UsageError("an input matrix is required (--input or --random)");
}

inline void print_matrix(std::ostream& out, const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(6) << std::showpos << z.real()
           << z.imag() << "i";
      out << std::setw(22) << cell.str();
    }
    out << "\n";
  }
}

inline void print_blocks(std::ostream& out, const DecompositionResult& r) {
  out << "blocks (in order of action):\n";
  for (const MeshBlock& b : r.blocks) {
    out << "  " << to_string(b.flavor) << "(" << b.m << "," << b.n
        << ")  theta=" << num(b.theta) << "  phi=" << num(b.phi) << "\n";
  }
  out << "diag deltas:";
  for (double d : r.diag.deltas) out << " " << num(d);
  out << "\nglobal phase: " << num(r.global_phase) << "\n";
}

inline void print_counts(std::ostream& out, const ComponentReport& k) {
  out << "components: n_bs=" << k.n_bs << " n_ps=" << k.n_ps
      << " n_phase_masks=" << k.n_phase_masks
      << " n_fixed_mbs=" << k.n_fixed_mbs << "\n";
}

inline void emit_circuit(const CliConfig& cfg, std::ostream& out,
                         const Circuit& c) {
  const std::string text = serialize(c);
  if (cfg.output_path) {
    write_file(*cfg.output_path, text);
    out << "circuit written to " << *cfg.output_path << "\n";
  } else {
    out << "circuit:\n" << text;
  }
}

/// Runs body and maps library exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const NotUnitaryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotUnitary;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DecompositionError& e) {
    err << "decomposition failed: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

inline void check_tolerance(const CliConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw UsageError("--tolerance must be > 0");
}

}  // namespace cli_detail

inline int cmd_decompose(const CliConfig& cfg, std::ostream& out,
                         std::ostream& err) {
  using namespace cli_detail;
  return guarded(err, [&]() -> int {
    check_tolerance(cfg);
    if (!cfg.scheme) throw UsageError("--scheme is required");
    const auto scheme = scheme_from_string(*cfg.scheme);
    if (!scheme) throw UsageError("unknown scheme '" + *cfg.scheme + "'");
    const ComplexMatrix raw = load_matrix(cfg);
    if (raw.rows() != raw.cols()) throw DimensionError("matrix must be square");
    const UnitaryMatrix u(raw);
    if (cfg.save_input_path) write_file(*cfg.save_input_path, serialize_matrix(raw));

    DecompositionResult r;
    std::optional<MBS3Params> m3;
    switch (*scheme) {
      case Scheme::Reck:
        r = decompose_reck(u);
        break;
      case Scheme::Clements:
        r = decompose_clements(u);
        break;
      case Scheme::U2:
        r = decompose_u2(u);
        break;
      case Scheme::Mbs3: {
        auto d = decompose_mbs3(u);
        m3 = d.params;
        r = std::move(d.result);
        break;
      }
      case Scheme::Bwc:
        r = decompose_bwc(u);
        break;
    }

    out << "scheme: " << to_string(r.scheme) << "\nN: " << u.dim() << "\n";
    if (m3) {
      out << "parameters of B23 u B23 = D3(delta1,0,nu4) T12(mu4,nu3) "
             "T~23(mu3,nu2) T12(mu2,nu1):\n"
          << "  mu1=" << num(m3->mu1) << " mu2=" << num(m3->mu2)
          << " mu3=" << num(m3->mu3) << " mu4=" << num(m3->mu4) << "\n"
          << "  nu1=" << num(m3->nu1) << " nu2=" << num(m3->nu2)
          << " nu3=" << num(m3->nu3) << " nu4=" << num(m3->nu4) << "\n"
          << "  delta1=" << num(m3->delta1) << "\n";
    } else {
      print_blocks(out, r);
    }
    print_counts(out, count_components(r.circuit, std::string(to_string(r.scheme))));
    const PhaseEquivalence pe = verify_decomposition(u, r);
    out << "reconstruction distance: " << num(pe.distance) << "\n";
    emit_circuit(cfg, out, r.circuit);
    if (!(pe.distance <= cfg.tolerance)) {
      err << "reconstruction distance " << num(pe.distance)
          << " exceeds tolerance " << num(cfg.tolerance) << "\n";
      return kExitTolerance;
    }
    return kExitOk;
  });
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  using namespace cli_detail;
  return guarded(err, [&]() -> int {
    check_tolerance(cfg);
    if (!cfg.circuit_path) throw UsageError("--circuit is required");
    const Circuit c = deserialize(read_file(*cfg.circuit_path));
    const ComplexMatrix raw = load_matrix(cfg);
    if (raw.rows() != raw.cols()) throw DimensionError("matrix must be square");
    if (raw.rows() != c.width()) {
      throw DimensionError("circuit width " + std::to_string(c.width()) +
                           " does not match matrix dimension " +
                           std::to_string(raw.rows()));
    }
    const UnitaryMatrix u(raw);
    const PhaseEquivalence pe = distance_up_to_global_phase(evaluate(c), u);
    out << "distance: " << num(pe.distance) << "\naligning phase: "
        << num(pe.aligning_phase) << "\n";
    if (!(pe.distance <= cfg.tolerance)) {
      err << "distance exceeds tolerance " << num(cfg.tolerance) << "\n";
      return kExitTolerance;
    }
    return kExitOk;
  });
}

inline int cmd_report(const CliConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  using namespace cli_detail;
  return guarded(err, [&]() -> int {
    check_tolerance(cfg);
    if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) {
      throw UsageError("need 2 <= --min <= --max");
    }
    ScalingReport rep;
    try {
      rep = scaling_report(cfg.n_min, cfg.n_max, cfg.seed.value_or(1),
                           cfg.tolerance);
    } catch (const Error& e) {
      err << "report failed: " << e.what() << "\n";
      return kExitReport;
    }
    const std::string csv = format_csv(rep);
    out << format_table(rep) << "\n" << csv;
    if (cfg.csv_path) write_file(*cfg.csv_path, csv);
    for (const std::string& v : rep.violations) err << "violation: " << v << "\n";
    return rep.ok() ? kExitOk : kExitReport;
  });
}

inline int cmd_usd(const CliConfig& cfg, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;
  return guarded(err, [&]() -> int {
    check_tolerance(cfg);
    if (!cfg.delta) throw UsageError("--delta is required");
    const USDParams p = USDParams::from_delta(*cfg.delta);
    const UnitaryMatrix u = usd_unitary(p);
    double worst = 0.0;
    auto residual = [&](const std::string& name, double value) {
      worst = std::max(worst, value);
      out << "  " << name << ": " << num(value) << "\n";
    };

    out << "delta: " << num(p.delta()) << "  a: " << num(p.a())
        << "  b: " << num(p.b()) << "\nU_USD:\n";
    print_matrix(out, u);
    const double ps = success_probability(p);
    out << "success probability: " << num(ps)
        << "  (2b^2 = " << num(2.0 * p.b() * p.b()) << ", optimum "
        << num(optimal_success_probability(p)) << ")\n";

    const USDClementsForm cf = usd_clements_closed_form(p);
    out << "rectangular closed form: theta3=" << num(cf.theta3)
        << "  global phase=" << num(cf.global_phase) << "\n";
    for (const MeshBlock& b : cf.blocks) {
      out << "  T(" << b.m << "," << b.n << ")  theta=" << num(b.theta)
          << "  phi=" << num(b.phi) << "\n";
    }
    out << "  D3 deltas: " << num(cf.diag.deltas[0]) << " "
        << num(cf.diag.deltas[1]) << " " << num(cf.diag.deltas[2]) << "\n";

    const UPrimeForm uf = uprime_closed_form(p);
    out << "B23 U B23 closed form: theta1=" << num(uf.form.theta1)
        << " theta2=" << num(uf.form.theta2)
        << " theta3=" << num(uf.form.theta3) << "\n  phi1=" << num(uf.form.phi1)
        << " phi2=" << num(uf.form.phi2) << " phi3=" << num(uf.form.phi3)
        << "  A1=" << num(uf.form.a1) << "\n";

    const auto m3 = decompose_mbs3(u);
    const auto cl = decompose_clements(u);
    const FeasibilityVerdict three = three_tritter_feasible(u);

    out << "residuals:\n";
    residual("success probability vs 2b^2", std::abs(ps - 2.0 * p.b() * p.b()));
    residual("success probability vs optimum",
             std::abs(ps - optimal_success_probability(p)));
    residual("rectangular closed form vs U_USD", cf.residual);
    residual("rectangular closed form vs algorithm",
             distance_up_to_global_phase(evaluate(cl.circuit), cf.matrix).distance);
    residual("B23 U B23 factors", uf.factor_residual);
    residual("B23 U B23 closed form", uf.residual);
    residual("four-tritter circuit vs U_USD",
             verify_decomposition(u, m3.result).distance);
    out << "three tritters: " << three.text << "\n";
    out << "four-tritter ";
    emit_circuit(cfg, out, m3.result.circuit);

    if (!(worst <= cfg.tolerance) || three.feasible) {
      err << "a residual exceeds tolerance " << num(cfg.tolerance) << "\n";
      return kExitTolerance;
    }
    return kExitOk;
  });
}

inline int run_command(const CliConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  if (cfg.command == "decompose") return cmd_decompose(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  if (cfg.command == "report") return cmd_report(cfg, out, err);
  if (cfg.command == "usd") return cmd_usd(cfg, out, err);
  err << "unknown command '" << cfg.command << "'\n";
  return kExitUsage;
}

}  // namespace mbsynth
