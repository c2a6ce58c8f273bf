#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nmrq/hamiltonian.hpp"
#include "nmrq/spin_system.hpp"

namespace nmrq {

enum class GateKind {
  RZ,
  RX,
  RY,
  RXX,
  RYY,
  RZZ,
  H,
  SX,
  CX,
  ECR,
  SWAP,
  Measure,
};

bool is_two_qubit_kind(GateKind kind);
const char* gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;        // -1 for single-qubit gates
  double angle = 0.0;  // radians, rotations only

  static Gate one(GateKind kind, int q, double angle = 0.0) {
    return Gate{kind, q, -1, angle};
  }
  static Gate two(GateKind kind, int a, int b, double angle = 0.0) {
    return Gate{kind, a, b, angle};
  }
  bool is_two_qubit() const { return is_two_qubit_kind(kind); }
};

enum class Formula { LieTrotter, Suzuki2, Suzuki4, Suzuki6 };

int suzuki_order(Formula f);  // 0 for LieTrotter
Formula parse_formula(const std::string& name);  // lie | suzuki2 | suzuki4
const char* formula_name(Formula f);

struct CircuitIR {
  int n_qubits = 0;
  std::vector<Gate> gates;
  // metadata
  double evolution_time_s = 0.0;
  int repetitions = 1;
  Formula formula = Formula::LieTrotter;

  std::size_t twoq_count() const;
  // Longest chain of two-qubit gates over shared qubits (single-qubit gates
  // are free); MEASURE does not count.
  int twoq_depth() const;
  void validate() const;  // operand ranges, distinct operands
};

// Full FID circuit: RY(pi/2) preparation on every qubit, `repetitions`
// product-formula blocks for time t/repetitions each, then the X-basis
// rotation RY(-pi/2) plus MEASURE on every qubit.
//
// Angle conversion table (the only place units change):
//   exp(-i w dt I^Z)         -> RZ(w * dt)
//   exp(-i 2piJ dt I^a I^a)  -> R_aa(pi * J * dt)
// with R_aa(theta) = exp(-i (theta/2) sigma^a x sigma^a) and
// RZ(theta) = exp(-i (theta/2) sigma^Z).
CircuitIR build_fid_circuit(const SpinSystem& sys, double t_s, int repetitions,
                            Formula formula);

// One Lie-Trotter block: XX layer, YY layer, Z layer, ZZ layer, applied in
// that order (the rightmost exponential of the product formula acts first).
// Within a layer, gates are ordered by pair index (lexicographic).
std::vector<Gate> lie_trotter_layers(const PauliHamiltonian& h, double dt_s);

// One Suzuki block of the given even order (2, 4 or 6) over the same group
// ordering. Order 2 is the palindromic half-step sandwich; higher orders use
// the recursion with u_k = 1 / (4 - 4^(1/(2k-1))).
std::vector<Gate> suzuki_layers(const PauliHamiltonian& h, double dt_s,
                                int order);

enum class NativeBasis { CX, ECR };

NativeBasis parse_basis(const std::string& name);

// Rewrites RXX/RYY/RZZ/SWAP (and CX when basis = ECR) into the native basis;
// every two-qubit Pauli rotation costs exactly 2 native two-qubit gates and
// every SWAP costs 3. Single-qubit gates and MEASURE pass through.
CircuitIR decompose_to_native(const CircuitIR& c, NativeBasis basis);

// One gate per line: KIND q0[,q1][,angle_rad]
std::string dump_circuit(const CircuitIR& c);

}  // namespace nmrq
