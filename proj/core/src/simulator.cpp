#include "nmrq/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "nmrq/errors.hpp"
#include "nmrq/rng.hpp"

namespace nmrq {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;

// 2x2 matrix, row-major.
using Mat2 = std::array<cd, 4>;
// 4x4 matrix, row-major, local basis index = bit(q0) + 2 * bit(q1).
using Mat4 = std::array<cd, 16>;

Mat2 matrix_1q(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::RX:
      return {cd{c, 0}, -kI * s, -kI * s, cd{c, 0}};
    case GateKind::RY:
      return {cd{c, 0}, cd{-s, 0}, cd{s, 0}, cd{c, 0}};
    case GateKind::RZ:
      return {std::exp(-kI * (angle / 2.0)), cd{0, 0}, cd{0, 0},
              std::exp(kI * (angle / 2.0))};
    case GateKind::H:
      return {cd{kInvSqrt2, 0}, cd{kInvSqrt2, 0}, cd{kInvSqrt2, 0},
              cd{-kInvSqrt2, 0}};
    case GateKind::SX:
      return {cd{0.5, 0.5}, cd{0.5, -0.5}, cd{0.5, -0.5}, cd{0.5, 0.5}};
    default:
      throw ValidationError(std::string("not a single-qubit gate: ") +
                            gate_name(kind));
  }
}

Mat4 matrix_2q(GateKind kind, double angle) {
  const double ch = std::cos(angle / 2.0), sh = std::sin(angle / 2.0);
  const cd c{ch, 0}, ms = -kI * sh, ps = kI * sh;
  const cd z{0, 0}, o{1, 0};
  switch (kind) {
    case GateKind::RXX:
      // exp(-i angle/2 XX): XX swaps 00<->11 and 01<->10
      return {c, z, z, ms,
              z, c, ms, z,
              z, ms, c, z,
              ms, z, z, c};
    case GateKind::RYY:
      // YY|00> = -|11>, YY|01> = |10>
      return {c, z, z, ps,
              z, c, ms, z,
              z, ms, c, z,
              ps, z, z, c};
    case GateKind::RZZ:
      return {std::exp(-kI * (angle / 2.0)), z, z, z,
              z, std::exp(kI * (angle / 2.0)), z, z,
              z, z, std::exp(kI * (angle / 2.0)), z,
              z, z, z, std::exp(-kI * (angle / 2.0))};
    case GateKind::CX:
      // q0 = control (bit 0 of the local index), q1 = target
      return {o, z, z, z,
              z, z, z, o,
              z, z, o, z,
              z, o, z, z};
    case GateKind::ECR:
      // (X_q0 - Y_q0 X_q1) / sqrt(2), the echoed cross-resonance unitary
      return {z, cd{kInvSqrt2, 0}, z, kI * kInvSqrt2,
              cd{kInvSqrt2, 0}, z, -kI * kInvSqrt2, z,
              z, kI * kInvSqrt2, z, cd{kInvSqrt2, 0},
              -kI * kInvSqrt2, z, cd{kInvSqrt2, 0}, z};
    case GateKind::SWAP:
      return {o, z, z, z,
              z, z, o, z,
              z, o, z, z,
              z, z, z, o};
    default:
      throw ValidationError(std::string("not a two-qubit gate: ") +
                            gate_name(kind));
  }
}

void apply_1q(const Mat2& m, int q, cd* a, std::size_t dim) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t off = 0; off < mask; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + mask;
      const cd a0 = a[i0], a1 = a[i1];
      a[i0] = m[0] * a0 + m[1] * a1;
      a[i1] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_2q(const Mat4& m, int q0, int q1, cd* a, std::size_t dim) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const int p = std::min(q0, q1), q = std::max(q0, q1);
  const std::size_t lo_mask = (std::size_t{1} << p) - 1;
  const std::size_t mid_mask = (std::size_t{1} << (q - 1)) - 1;
  const std::size_t groups = dim >> 2;
  for (std::size_t u = 0; u < groups; ++u) {
    // spread u over the bit positions excluding q0 and q1
    std::size_t s = u & lo_mask;
    s |= ((u & (mid_mask & ~lo_mask)) << 1);
    s |= ((u & ~mid_mask) << 2);
    const std::size_t idx[4] = {s, s | m0, s | m1, s | m0 | m1};
    const cd v0 = a[idx[0]], v1 = a[idx[1]], v2 = a[idx[2]], v3 = a[idx[3]];
    a[idx[0]] = m[0] * v0 + m[1] * v1 + m[2] * v2 + m[3] * v3;
    a[idx[1]] = m[4] * v0 + m[5] * v1 + m[6] * v2 + m[7] * v3;
    a[idx[2]] = m[8] * v0 + m[9] * v1 + m[10] * v2 + m[11] * v3;
    a[idx[3]] = m[12] * v0 + m[13] * v1 + m[14] * v2 + m[15] * v3;
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 28)
    throw ParameterError("state vector supports 1..28 qubits");
  amps_.assign(std::size_t{1} << n_qubits, cd{0, 0});
  amps_[0] = cd{1, 0};
}

StateVector StateVector::plus_state(int n_qubits) {
  StateVector psi(n_qubits);
  const double v = std::pow(2.0, -0.5 * n_qubits);
  std::fill(psi.amps_.begin(), psi.amps_.end(), cd{v, 0});
  return psi;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cd& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void apply_gate(const Gate& g, StateVector& psi) {
  if (g.kind == GateKind::Measure) return;
  if (g.q0 < 0 || g.q0 >= psi.n_qubits())
    throw ValidationError("gate qubit index out of range");
  if (g.is_two_qubit()) {
    if (g.q1 < 0 || g.q1 >= psi.n_qubits() || g.q1 == g.q0)
      throw ValidationError("gate qubit index out of range");
    apply_2q(matrix_2q(g.kind, g.angle), g.q0, g.q1, psi.data(), psi.dim());
  } else {
    apply_1q(matrix_1q(g.kind, g.angle), g.q0, psi.data(), psi.dim());
  }
}

StateVector apply_circuit(const CircuitIR& c, StateVector psi) {
  if (c.n_qubits != psi.n_qubits())
    throw ValidationError("circuit and state sizes differ");
  c.validate();
  for (const Gate& g : c.gates) apply_gate(g, psi);
  return psi;
}

double expectation_mx(const StateVector& psi) {
  const auto a = psi.amplitudes();
  double total = 0.0;
  for (int k = 0; k < psi.n_qubits(); ++k) {
    const std::size_t mask = std::size_t{1} << k;
    double acc = 0.0;
    for (std::size_t base = 0; base < a.size(); base += 2 * mask)
      for (std::size_t off = 0; off < mask; ++off) {
        const std::size_t i0 = base + off;
        acc += (std::conj(a[i0]) * a[i0 + mask]).real();
      }
    total += acc;  // 2 * Re sum * (1/2 spin factor) = Re sum
  }
  return total;
}

double expectation_my(const StateVector& psi) {
  const auto a = psi.amplitudes();
  double total = 0.0;
  for (int k = 0; k < psi.n_qubits(); ++k) {
    const std::size_t mask = std::size_t{1} << k;
    double acc = 0.0;
    for (std::size_t base = 0; base < a.size(); base += 2 * mask)
      for (std::size_t off = 0; off < mask; ++off) {
        const std::size_t i0 = base + off;
        acc += (std::conj(a[i0]) * a[i0 + mask]).imag();
      }
    total += acc;
  }
  return total;
}

double expectation_mz(const StateVector& psi) {
  const auto a = psi.amplitudes();
  double total = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    const double p = std::norm(a[s]);
    if (p == 0.0) continue;
    double mz = 0.0;
    for (int k = 0; k < psi.n_qubits(); ++k)
      mz += ((s >> k) & 1u) ? -0.5 : 0.5;
    total += p * mz;
  }
  return total;
}

ShotResult sample_mx(const CircuitIR& c, const StateVector& psi0, int shots,
                     std::uint64_t seed) {
  if (shots <= 0) throw ParameterError("shots must be positive");
  std::vector<bool> measured(static_cast<std::size_t>(c.n_qubits), false);
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::Measure)
      measured[static_cast<std::size_t>(g.q0)] = true;
  if (!std::all_of(measured.begin(), measured.end(), [](bool b) { return b; }))
    throw ValidationError("sample_mx needs a full measurement layer");

  const StateVector psi = apply_circuit(c, psi0);
  const auto a = psi.amplitudes();
  std::vector<double> cdf(a.size());
  double acc = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    acc += std::norm(a[s]);
    cdf[s] = acc;
  }
  const double total = acc;

  Philox rng(seed);
  std::map<std::uint64_t, int> counts;
  double mx_sum = 0.0;
  const int n = psi.n_qubits();
  for (int shot = 0; shot < shots; ++shot) {
    const double u = rng.next_double() * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto s = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    ++counts[s];
    double mz = 0.0;
    for (int k = 0; k < n; ++k) mz += ((s >> k) & 1u) ? -0.5 : 0.5;
    mx_sum += mz;
  }

  ShotResult res;
  res.shots = shots;
  res.counts.assign(counts.begin(), counts.end());
  res.mx_estimate = mx_sum / shots;
  return res;
}

}  // namespace nmrq
