// Copyright 2026 The qlaplas authors
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

#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qla/types.hpp"

namespace qla {

enum class GateKind { X, H, Ry, Rz };

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
  }
  return "?";
}

// Open (negative) and filled (positive) controls are first class, so basis
// routing never needs bracketing X gates just to flip polarities.
struct Control {
  int qubit = 0;
  bool positive = true;
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind = GateKind::X;
  double angle = 0.0;  // Ry/Rz only
  int target = 0;
  std::vector<Control> controls;
  bool operator==(const Gate&) const = default;
};

// Ordered gate list over coin + position (+ optional ancilla) qubits.
// Qubit layout: coin 0..3, x register next (p0 least significant), then the
// y register, ancilla last.
struct GateCircuit {
  int n_qubits = 0;
  int n_coin = 4;
  int n_px = 0;
  int n_py = 0;
  int n_ancilla = 0;
  std::string label;
  std::vector<Gate> gates;

  int x_qubit(int bit) const { return n_coin + bit; }
  int y_qubit(int bit) const { return n_coin + n_px + bit; }
  int ancilla_qubit() const { return n_coin + n_px + n_py; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits; }

  void push(Gate g) {
    validate_gate(g);
    gates.push_back(std::move(g));
  }

  void validate_gate(const Gate& g) const {
    if (g.target < 0 || g.target >= n_qubits)
      throw ConfigError("gate: target out of range");
    for (const auto& c : g.controls) {
      if (c.qubit < 0 || c.qubit >= n_qubits)
        throw ConfigError("gate: control out of range");
      if (c.qubit == g.target)
        throw ConfigError("gate: control and target overlap");
    }
  }
};

inline GateCircuit adjoint(const GateCircuit& circuit) {
  GateCircuit out = circuit;
  out.label = circuit.label + "_dag";
  out.gates.assign(circuit.gates.rbegin(), circuit.gates.rend());
  for (auto& g : out.gates)
    if (g.kind == GateKind::Ry || g.kind == GateKind::Rz) g.angle = -g.angle;
  return out;
}

inline GateCircuit concat(const GateCircuit& first, const GateCircuit& second) {
  if (first.n_qubits != second.n_qubits)
    throw ConfigError("concat: qubit counts differ");
  GateCircuit out = first;
  out.gates.insert(out.gates.end(), second.gates.begin(), second.gates.end());
  return out;
}

// Rewrites open controls as X-conjugation, leaving only filled controls.
inline GateCircuit lower_open_controls(const GateCircuit& circuit) {
  GateCircuit out = circuit;
  out.gates.clear();
  for (const auto& g : circuit.gates) {
    std::vector<int> flipped;
    for (const auto& c : g.controls)
      if (!c.positive) flipped.push_back(c.qubit);
    for (int q : flipped) out.push({GateKind::X, 0.0, q, {}});
    Gate pos = g;
    for (auto& c : pos.controls) c.positive = true;
    out.push(pos);
    for (int q : flipped) out.push({GateKind::X, 0.0, q, {}});
  }
  return out;
}

// In-place state-vector application; basis index bit i is qubit i.
template <typename Scalar>
void apply_gate(const Gate& gate, DenseVector<Scalar>& state) {
  const Eigen::Index dim = state.size();
  const Eigen::Index tbit = Eigen::Index(1) << gate.target;
  auto controls_pass = [&](Eigen::Index i) {
    for (const auto& c : gate.controls) {
      const bool set = (i >> c.qubit) & 1;
      if (set != c.positive) return false;
    }
    return true;
  };
  const Scalar half = Scalar(gate.angle) / Scalar(2);
  const Scalar ch = std::cos(half), sh = std::sin(half);
  const Complex<Scalar> em(std::cos(half), -std::sin(half));  // e^{-i angle/2}
  const Complex<Scalar> ep = std::conj(em);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & tbit) continue;
    if (!controls_pass(i)) continue;
    const Eigen::Index j = i | tbit;
    Complex<Scalar>& a = state[i];
    Complex<Scalar>& b = state[j];
    switch (gate.kind) {
      case GateKind::X:
        std::swap(a, b);
        break;
      case GateKind::H: {
        const Complex<Scalar> aa = (a + b) * inv_sqrt2;
        b = (a - b) * inv_sqrt2;
        a = aa;
        break;
      }
      case GateKind::Ry: {
        const Complex<Scalar> aa = ch * a - sh * b;
        b = sh * a + ch * b;
        a = aa;
        break;
      }
      case GateKind::Rz:
        a *= em;
        b *= ep;
        break;
    }
  }
}

template <typename Scalar>
void apply_circuit(const GateCircuit& circuit, DenseVector<Scalar>& state) {
  if (state.size() != circuit.dim())
    throw ConfigError("apply_circuit: state dimension mismatch");
  for (const auto& g : circuit.gates) apply_gate(g, state);
}

// Exact dense unitary, built one basis column at a time.
template <typename Scalar = double>
DenseMatrix<Scalar> circuit_to_matrix(const GateCircuit& circuit,
                                      int max_qubits = 12) {
  if (circuit.n_qubits > max_qubits)
    throw NumericError("circuit_to_matrix: " +
                       std::to_string(circuit.n_qubits) +
                       " qubits exceeds cap " + std::to_string(max_qubits));
  const Eigen::Index dim = circuit.dim();
  DenseMatrix<Scalar> u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    DenseVector<Scalar> v = DenseVector<Scalar>::Zero(dim);
    v[col] = Complex<Scalar>(1);
    apply_circuit(circuit, v);
    u.col(col) = v;
  }
  return u;
}

// Gate accounting.  Raw counts the IR gates as written; expanded applies the
// linear multi-control rule elementary(m) = 2 m + 1 (a single-qubit or
// two-qubit gate is one unit), which keeps an m-controlled gate linear in m.
struct CostModel {
  long control_slope = 2;
  long control_offset = 1;
  long elementary(std::size_t m) const {
    if (m == 0) return 1;
    return control_slope * long(m) + control_offset;
  }
};

struct GateCounts {
  long raw = 0;
  long expanded = 0;
  std::map<std::string, long> by_kind;

  GateCounts& operator+=(const GateCounts& o) {
    raw += o.raw;
    expanded += o.expanded;
    for (const auto& [k, v] : o.by_kind) by_kind[k] += v;
    return *this;
  }
};

inline GateCounts gate_count(const GateCircuit& circuit,
                             const CostModel& model = {}) {
  GateCounts counts;
  for (const auto& g : circuit.gates) {
    counts.raw += 1;
    counts.expanded += model.elementary(g.controls.size());
    counts.by_kind[gate_kind_name(g.kind)] += 1;
  }
  return counts;
}

// One gate per line: GATE kind angle target controls polarities.
inline void write_circuit(std::ostream& os, const GateCircuit& circuit) {
  os << "# qlaplas circuit v1\n";
  os << "QUBITS " << circuit.n_qubits << " coin=" << circuit.n_coin
     << " px=" << circuit.n_px << " py=" << circuit.n_py
     << " ancilla=" << circuit.n_ancilla << "\n";
  if (!circuit.label.empty()) os << "LABEL " << circuit.label << "\n";
  os.precision(17);
  for (const auto& g : circuit.gates) {
    os << "GATE " << gate_kind_name(g.kind) << " " << g.angle << " "
       << g.target << " ";
    if (g.controls.empty()) {
      os << "- -\n";
      continue;
    }
    for (size_t i = 0; i < g.controls.size(); ++i)
      os << (i ? "," : "") << g.controls[i].qubit;
    os << " ";
    for (const auto& c : g.controls) os << (c.positive ? '+' : '-');
    os << "\n";
  }
}

inline std::string circuit_to_string(const GateCircuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

inline GateCircuit read_circuit(std::istream& is) {
  GateCircuit circuit;
  std::string line;
  bool have_qubits = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "QUBITS") {
      ls >> circuit.n_qubits;
      std::string field;
      while (ls >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const int value = std::stoi(field.substr(eq + 1));
        if (key == "coin") circuit.n_coin = value;
        else if (key == "px") circuit.n_px = value;
        else if (key == "py") circuit.n_py = value;
        else if (key == "ancilla") circuit.n_ancilla = value;
        else throw ConfigError("circuit: unknown register field " + key);
      }
      have_qubits = true;
    } else if (tag == "LABEL") {
      std::getline(ls >> std::ws, circuit.label);
    } else if (tag == "GATE") {
      if (!have_qubits) throw ConfigError("circuit: GATE before QUBITS");
      std::string kind, controls, polarities;
      double angle;
      int target;
      if (!(ls >> kind >> angle >> target >> controls >> polarities))
        throw ConfigError("circuit: malformed gate line: " + line);
      Gate g;
      if (kind == "x") g.kind = GateKind::X;
      else if (kind == "h") g.kind = GateKind::H;
      else if (kind == "ry") g.kind = GateKind::Ry;
      else if (kind == "rz") g.kind = GateKind::Rz;
      else throw ConfigError("circuit: unknown gate kind " + kind);
      g.angle = angle;
      g.target = target;
      if (controls != "-") {
        std::istringstream cs(controls);
        std::string tok;
        while (std::getline(cs, tok, ',')) {
          Control c;
          c.qubit = std::stoi(tok);
          g.controls.push_back(c);
        }
        if (polarities.size() != g.controls.size())
          throw ConfigError("circuit: polarity count mismatch: " + line);
        for (size_t i = 0; i < g.controls.size(); ++i)
          g.controls[i].positive = polarities[i] == '+';
      }
      circuit.push(g);
    } else {
      throw ConfigError("circuit: unknown line tag " + tag);
    }
  }
  if (!have_qubits) throw ConfigError("circuit: missing QUBITS header");
  return circuit;
}

}  // namespace qla
