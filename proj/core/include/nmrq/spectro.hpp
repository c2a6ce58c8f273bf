#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "nmrq/circuit.hpp"
#include "nmrq/spin_system.hpp"

namespace nmrq {

enum class Engine { TrotterCircuit, ExactOracle };

Engine parse_engine(const std::string& name);  // trotter | exact
const char* engine_name(Engine e);

// Acquisition protocol. The defaults are the standard proton FID setup on a
// 400 MHz instrument: 4096 points at 8000 Hz (0.125 ms dwell) covering the
// [0, 4000] Hz window. shots = 0 means exact expectation values.
struct AcquisitionConfig {
  int n_points = 4096;
  double sample_rate_hz = 8000.0;
  int shots = 0;
  int runs = 5;  // only meaningful in shot mode
  int repetitions = 1;
  Formula formula = Formula::LieTrotter;
  std::uint64_t seed = 1;

  double dwell_s() const { return 1.0 / sample_rate_hz; }
};

struct FidRecord {
  std::vector<double> times_s;
  std::vector<double> mx;  // runs-averaged in shot mode
  std::vector<std::vector<double>> run_series;  // raw runs when runs > 1
  AcquisitionConfig config;
  Engine engine = Engine::TrotterCircuit;
};

// Evolves a fresh initial state for every time point t_i = i * dwell and
// records <Mx>. Time points fan out across workers (NMRQSIM_THREADS caps
// the pool); per-point sampling seeds derive from (seed, point, run) so the
// result does not depend on scheduling.
FidRecord acquire_fid(const SpinSystem& sys, const AcquisitionConfig& cfg,
                      Engine engine);

struct Spectrum {
  std::vector<double> freq_hz;  // 0 .. sample_rate/2
  std::vector<std::complex<double>> values;
  double sample_rate_hz = 0.0;

  std::vector<double> magnitude() const;
};

// Optional exponential apodization exp(-pi * lb * t), then a real-input DFT.
// The DC term is retained.
Spectrum to_spectrum(const FidRecord& fid, double line_broadening_hz = 0.0);

// 1 - (x . y) / (|x| |y|) over magnitude spectra.
double cosine_distance(const Spectrum& a, const Spectrum& b);

struct SweepRow {
  std::string name;
  int n_spins = 0;
  Formula formula = Formula::LieTrotter;
  int param = 0;  // repetitions for Lie-Trotter, order for Suzuki
  double distance = 0.0;
};

// Fig-3-style model-error study: cosine distance between product-formula
// and exact spectra for every (system, repetitions) and (system, order).
std::vector<SweepRow> trotter_error_sweep(const std::vector<SpinSystem>& systems,
                                          const std::vector<int>& reps_list,
                                          const std::vector<int>& orders_list,
                                          const AcquisitionConfig& cfg);

// Worker-pool size: min(hardware, NMRQSIM_THREADS, n_items).
int worker_count(int n_items);

}  // namespace nmrq
