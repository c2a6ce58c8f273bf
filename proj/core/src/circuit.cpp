#include "nmrq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "nmrq/errors.hpp"

namespace nmrq {

bool is_two_qubit_kind(GateKind kind) {
  switch (kind) {
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
    case GateKind::CX:
    case GateKind::ECR:
    case GateKind::SWAP:
      return true;
    default:
      return false;
  }
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::H: return "H";
    case GateKind::SX: return "SX";
    case GateKind::CX: return "CX";
    case GateKind::ECR: return "ECR";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Measure: return "MEASURE";
  }
  return "?";
}

int suzuki_order(Formula f) {
  switch (f) {
    case Formula::LieTrotter: return 0;
    case Formula::Suzuki2: return 2;
    case Formula::Suzuki4: return 4;
    case Formula::Suzuki6: return 6;
  }
  return 0;
}

Formula parse_formula(const std::string& name) {
  if (name == "lie" || name == "lie_trotter") return Formula::LieTrotter;
  if (name == "suzuki2") return Formula::Suzuki2;
  if (name == "suzuki4") return Formula::Suzuki4;
  if (name == "suzuki6") return Formula::Suzuki6;
  throw ParameterError("unknown product formula: " + name);
}

const char* formula_name(Formula f) {
  switch (f) {
    case Formula::LieTrotter: return "lie";
    case Formula::Suzuki2: return "suzuki2";
    case Formula::Suzuki4: return "suzuki4";
    case Formula::Suzuki6: return "suzuki6";
  }
  return "?";
}

NativeBasis parse_basis(const std::string& name) {
  if (name == "cx") return NativeBasis::CX;
  if (name == "ecr") return NativeBasis::ECR;
  throw ParameterError("unknown native basis: " + name);
}

std::size_t CircuitIR::twoq_count() const {
  std::size_t n = 0;
  for (const Gate& g : gates)
    if (g.is_two_qubit()) ++n;
  return n;
}

int CircuitIR::twoq_depth() const {
  std::vector<int> level(static_cast<std::size_t>(n_qubits), 0);
  int depth = 0;
  for (const Gate& g : gates) {
    if (!g.is_two_qubit()) continue;
    const auto a = static_cast<std::size_t>(g.q0);
    const auto b = static_cast<std::size_t>(g.q1);
    const int d = std::max(level[a], level[b]) + 1;
    level[a] = level[b] = d;
    depth = std::max(depth, d);
  }
  return depth;
}

void CircuitIR::validate() const {
  for (const Gate& g : gates) {
    if (g.q0 < 0 || g.q0 >= n_qubits)
      throw ValidationError("gate operand out of range");
    if (g.is_two_qubit()) {
      if (g.q1 < 0 || g.q1 >= n_qubits)
        throw ValidationError("gate operand out of range");
      if (g.q0 == g.q1)
        throw ValidationError("two-qubit gate operands must be distinct");
    }
  }
}

namespace {

struct Coupling {
  int k, l;
  double j_hz;
};

struct HamiltonianGroups {
  std::vector<Coupling> couplings;          // lexicographic (k, l)
  std::vector<std::pair<int, double>> offsets;  // (spin, omega rad/s)
};

HamiltonianGroups split_groups(const PauliHamiltonian& h) {
  HamiltonianGroups g;
  for (const PauliTerm& t : h.terms) {
    if (t.factors.size() == 1) {
      if (t.factors[0].axis != Axis::Z)
        throw ValidationError("unexpected single-spin term axis");
      g.offsets.emplace_back(t.factors[0].spin, t.coefficient);
    } else if (t.factors.size() == 2 && t.factors[0].axis == Axis::X) {
      // XX/YY/ZZ triplets share one coupling; record it once.
      const int k = std::min(t.factors[0].spin, t.factors[1].spin);
      const int l = std::max(t.factors[0].spin, t.factors[1].spin);
      g.couplings.push_back({k, l, t.coefficient / (2.0 * SpinSystem::kPi)});
    }
  }
  std::sort(g.couplings.begin(), g.couplings.end(),
            [](const Coupling& a, const Coupling& b) {
              return std::tie(a.k, a.l) < std::tie(b.k, b.l);
            });
  std::sort(g.offsets.begin(), g.offsets.end());
  return g;
}

// The four commuting groups of the product formula, emitted in the order the
// block applies them: XX, YY, Z, ZZ.
void emit_group(std::vector<Gate>& out, const HamiltonianGroups& g, int group,
                double tau_s) {
  const GateKind pair_kind[3] = {GateKind::RXX, GateKind::RYY, GateKind::RZZ};
  if (group == 2) {
    for (const auto& [spin, omega] : g.offsets)
      out.push_back(Gate::one(GateKind::RZ, spin, omega * tau_s));
    return;
  }
  const GateKind kind = pair_kind[group == 3 ? 2 : group];
  for (const Coupling& c : g.couplings)
    out.push_back(
        Gate::two(kind, c.k, c.l, SpinSystem::kPi * c.j_hz * tau_s));
}

void emit_suzuki(std::vector<Gate>& out, const HamiltonianGroups& g, int k,
                 double tau_s) {
  if (k == 1) {
    // Strang sandwich: forward half-steps, full step on the last group,
    // backward half-steps.
    for (int grp = 0; grp < 3; ++grp) emit_group(out, g, grp, tau_s / 2.0);
    emit_group(out, g, 3, tau_s);
    for (int grp = 2; grp >= 0; --grp) emit_group(out, g, grp, tau_s / 2.0);
    return;
  }
  const double u = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
  emit_suzuki(out, g, k - 1, u * tau_s);
  emit_suzuki(out, g, k - 1, u * tau_s);
  emit_suzuki(out, g, k - 1, (1.0 - 4.0 * u) * tau_s);
  emit_suzuki(out, g, k - 1, u * tau_s);
  emit_suzuki(out, g, k - 1, u * tau_s);
}

}  // namespace

std::vector<Gate> lie_trotter_layers(const PauliHamiltonian& h, double dt_s) {
  const HamiltonianGroups g = split_groups(h);
  std::vector<Gate> out;
  for (int grp = 0; grp < 4; ++grp) emit_group(out, g, grp, dt_s);
  return out;
}

std::vector<Gate> suzuki_layers(const PauliHamiltonian& h, double dt_s,
                                int order) {
  if (order < 2 || order % 2 != 0 || order > 6)
    throw ParameterError("Suzuki order must be 2, 4 or 6");
  const HamiltonianGroups g = split_groups(h);
  std::vector<Gate> out;
  emit_suzuki(out, g, order / 2, dt_s);
  return out;
}

CircuitIR build_fid_circuit(const SpinSystem& sys, double t_s, int repetitions,
                            Formula formula) {
  if (repetitions < 1) throw ParameterError("repetitions must be >= 1");
  const PauliHamiltonian h = build_terms(sys);

  CircuitIR c;
  c.n_qubits = sys.size();
  c.evolution_time_s = t_s;
  c.repetitions = repetitions;
  c.formula = formula;

  constexpr double kHalfPi = SpinSystem::kPi / 2.0;
  for (int q = 0; q < c.n_qubits; ++q)
    c.gates.push_back(Gate::one(GateKind::RY, q, kHalfPi));

  const double dt = t_s / repetitions;
  const std::vector<Gate> block =
      formula == Formula::LieTrotter
          ? lie_trotter_layers(h, dt)
          : suzuki_layers(h, dt, suzuki_order(formula));
  for (int r = 0; r < repetitions; ++r)
    c.gates.insert(c.gates.end(), block.begin(), block.end());

  for (int q = 0; q < c.n_qubits; ++q)
    c.gates.push_back(Gate::one(GateKind::RY, q, -kHalfPi));
  for (int q = 0; q < c.n_qubits; ++q)
    c.gates.push_back(Gate::one(GateKind::Measure, q));

  c.validate();
  return c;
}

namespace {

void emit_cx(std::vector<Gate>& out, int c, int t, NativeBasis basis) {
  if (basis == NativeBasis::CX) {
    out.push_back(Gate::two(GateKind::CX, c, t));
    return;
  }
  // CX = (RX(pi) on c, RX(-pi/2) on t) . ECR(c,t) . (RZ(-pi/2) on c),
  // up to global phase.
  constexpr double kHalfPi = SpinSystem::kPi / 2.0;
  out.push_back(Gate::one(GateKind::RZ, c, -kHalfPi));
  out.push_back(Gate::two(GateKind::ECR, c, t));
  out.push_back(Gate::one(GateKind::RX, c, SpinSystem::kPi));
  out.push_back(Gate::one(GateKind::RX, t, -kHalfPi));
}

void emit_rzz_core(std::vector<Gate>& out, const Gate& g, NativeBasis basis) {
  emit_cx(out, g.q0, g.q1, basis);
  out.push_back(Gate::one(GateKind::RZ, g.q1, g.angle));
  emit_cx(out, g.q0, g.q1, basis);
}

}  // namespace

CircuitIR decompose_to_native(const CircuitIR& c, NativeBasis basis) {
  c.validate();
  CircuitIR out;
  out.n_qubits = c.n_qubits;
  out.evolution_time_s = c.evolution_time_s;
  out.repetitions = c.repetitions;
  out.formula = c.formula;

  constexpr double kHalfPi = SpinSystem::kPi / 2.0;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::H:
      case GateKind::SX:
      case GateKind::Measure:
        out.gates.push_back(g);
        break;
      case GateKind::CX:
        emit_cx(out.gates, g.q0, g.q1, basis);
        break;
      case GateKind::ECR:
        if (basis != NativeBasis::ECR)
          throw DecompositionError("ECR gate in CX-basis decomposition");
        out.gates.push_back(g);
        break;
      case GateKind::RZZ:
        emit_rzz_core(out.gates, g, basis);
        break;
      case GateKind::RXX: {
        // XX = (H x H) ZZ (H x H)
        out.gates.push_back(Gate::one(GateKind::H, g.q0));
        out.gates.push_back(Gate::one(GateKind::H, g.q1));
        emit_rzz_core(out.gates, g, basis);
        out.gates.push_back(Gate::one(GateKind::H, g.q0));
        out.gates.push_back(Gate::one(GateKind::H, g.q1));
        break;
      }
      case GateKind::RYY: {
        // YY = (RX(pi/2) x RX(pi/2))^dag ZZ (RX(pi/2) x RX(pi/2))
        out.gates.push_back(Gate::one(GateKind::RX, g.q0, kHalfPi));
        out.gates.push_back(Gate::one(GateKind::RX, g.q1, kHalfPi));
        emit_rzz_core(out.gates, g, basis);
        out.gates.push_back(Gate::one(GateKind::RX, g.q0, -kHalfPi));
        out.gates.push_back(Gate::one(GateKind::RX, g.q1, -kHalfPi));
        break;
      }
      case GateKind::SWAP:
        emit_cx(out.gates, g.q0, g.q1, basis);
        emit_cx(out.gates, g.q1, g.q0, basis);
        emit_cx(out.gates, g.q0, g.q1, basis);
        break;
      default:
        throw DecompositionError(std::string("cannot decompose gate: ") +
                                 gate_name(g.kind));
    }
  }
  return out;
}

std::string dump_circuit(const CircuitIR& c) {
  std::ostringstream os;
  char buf[64];
  for (const Gate& g : c.gates) {
    os << gate_name(g.kind) << ' ' << g.q0;
    if (g.is_two_qubit()) os << ',' << g.q1;
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RXX:
      case GateKind::RYY:
      case GateKind::RZZ:
        std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
        os << ',' << buf;
        break;
      default:
        break;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nmrq
