#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nmrq {

// A liquid-state proton spin system: per-spin chemical shifts against a
// fixed virtual spectrometer plus a symmetric scalar J-coupling matrix.
// Immutable after construction; all downstream code works in rotating-frame
// angular offsets (rad/s), converted exactly once here.
struct SpinSystem {
  std::string name;
  std::vector<std::string> labels;
  double spectrometer_mhz = 400.0;
  double carrier_ppm = 0.0;
  std::vector<double> shifts_ppm;
  Eigen::MatrixXd j_matrix;  // Hz, symmetric, zero diagonal

  int size() const { return static_cast<int>(labels.size()); }

  // Rotating-frame offset of spin k in rad/s. ppm * MHz = Hz, so no 1e-6
  // factor appears.
  double offset_rad(int k) const {
    return 2.0 * kPi * (shifts_ppm[static_cast<std::size_t>(k)] - carrier_ppm) *
           spectrometer_mhz;
  }

  std::vector<double> offsets_rad() const {
    std::vector<double> out(labels.size());
    for (int k = 0; k < size(); ++k) out[static_cast<std::size_t>(k)] = offset_rad(k);
    return out;
  }

  static constexpr double kPi = 3.14159265358979323846;
};

// Validates invariants (sizes agree, symmetric J, zero diagonal, finite
// entries) and throws ValidationError when violated.
void validate_spin_system(const SpinSystem& sys);

// Parses the spin-system JSON document:
//   { "name": str, "spectrometer_mhz": num, "carrier_ppm": num (optional),
//     "spins": [{"label": str, "shift_ppm": num}, ...],
//     "j_couplings": [{"i": int, "j": int, "hz": num}, ...] }
// Couplings are a sparse list of unordered pairs; duplicate pairs must agree
// to 1e-9 Hz or the document is rejected.
SpinSystem parse_spin_system(const std::string& json_text);
SpinSystem load_spin_system(const std::filesystem::path& file);

struct CouplingGraph {
  int n_spins = 0;
  double threshold_hz = 0.0;
  std::vector<std::pair<int, int>> edges;  // k < l, lexicographic

  std::size_t edge_count() const { return edges.size(); }
};

// Edge (k,l) present iff |J_kl| > threshold_hz (strict).
CouplingGraph coupling_graph(const SpinSystem& sys, double threshold_hz = 0.0);

struct SpinCluster {
  std::vector<int> members;  // sorted indices into the parent system
  SpinSystem subsystem;      // induced system restricted to members
};

// Connected components of the coupling graph, ordered by smallest member
// index. Components partition {0..N-1}; no coupling above threshold crosses
// a component boundary.
std::vector<SpinCluster> decompose_clusters(const SpinSystem& sys,
                                            double threshold_hz = 0.0);

}  // namespace nmrq
