#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "nmrq/circuit.hpp"

namespace nmrq {

class StateVector {
 public:
  // |0...0>
  explicit StateVector(int n_qubits);
  // |+...+>, the post-pulse state with every spin along +X
  static StateVector plus_state(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::complex<double>& amp(std::size_t i) { return amps_[i]; }
  const std::complex<double>& amp(std::size_t i) const { return amps_[i]; }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::complex<double>* data() { return amps_.data(); }
  double norm() const;

 private:
  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

// In-place amplitude update; MEASURE gates are ignored (pure-evolution mode).
void apply_gate(const Gate& g, StateVector& psi);
StateVector apply_circuit(const CircuitIR& c, StateVector psi);

// Exact transverse/longitudinal magnetization expectations, <sum_k I^a_k>.
double expectation_mx(const StateVector& psi);
double expectation_my(const StateVector& psi);
double expectation_mz(const StateVector& psi);

struct ShotResult {
  int shots = 0;
  // bitstring -> count, sorted by bitstring; qubit k is bit k
  std::vector<std::pair<std::uint64_t, int>> counts;
  double mx_estimate = 0.0;
};

// Runs the circuit (which must end in a full measurement layer, X-basis
// change included) and samples `shots` bitstrings from |amplitudes|^2.
// Mx estimate = mean over shots of sum_k (1 - 2 b_k) / 2. Deterministic for
// a fixed seed and independent of call order.
ShotResult sample_mx(const CircuitIR& c, const StateVector& psi0, int shots,
                     std::uint64_t seed);

}  // namespace nmrq
