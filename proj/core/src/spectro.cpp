#include "nmrq/spectro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "nmrq/errors.hpp"
#include "nmrq/fft.hpp"
#include "nmrq/hamiltonian.hpp"
#include "nmrq/rng.hpp"
#include "nmrq/simulator.hpp"

namespace nmrq {

Engine parse_engine(const std::string& name) {
  if (name == "trotter") return Engine::TrotterCircuit;
  if (name == "exact") return Engine::ExactOracle;
  throw ParameterError("unknown engine: " + name);
}

const char* engine_name(Engine e) {
  return e == Engine::TrotterCircuit ? "trotter" : "exact";
}

int worker_count(int n_items) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("NMRQSIM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return std::max(1, std::min(hw, n_items));
}

namespace {

void validate_config(const AcquisitionConfig& cfg) {
  if (cfg.n_points < 2) throw ParameterError("n_points must be >= 2");
  if (!(cfg.sample_rate_hz > 0))
    throw ParameterError("sample_rate_hz must be positive");
  if (cfg.shots < 0) throw ParameterError("shots must be >= 0");
  if (cfg.runs < 1) throw ParameterError("runs must be >= 1");
  if (cfg.repetitions < 1) throw ParameterError("repetitions must be >= 1");
}

// Static partition of the time axis; worker w owns every index with
// i % workers == w, so output placement is independent of scheduling.
template <typename Fn>
void parallel_over_points(int n_points, Fn&& point_fn) {
  const int workers = worker_count(n_points);
  if (workers == 1) {
    for (int i = 0; i < n_points; ++i) point_fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n_points; i += workers) point_fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

FidRecord acquire_fid(const SpinSystem& sys, const AcquisitionConfig& cfg,
                      Engine engine) {
  validate_config(cfg);
  validate_spin_system(sys);

  FidRecord rec;
  rec.config = cfg;
  rec.engine = engine;
  rec.times_s.resize(static_cast<std::size_t>(cfg.n_points));
  const double dwell = cfg.dwell_s();
  for (int i = 0; i < cfg.n_points; ++i)
    rec.times_s[static_cast<std::size_t>(i)] = i * dwell;

  const int n = sys.size();

  if (engine == Engine::ExactOracle) {
    // Eigendecomposition once, then one matrix-vector product per point.
    const DenseOperator h = realize_dense(build_terms(sys));
    const StateVector psi0 = StateVector::plus_state(n);
    rec.mx.assign(static_cast<std::size_t>(cfg.n_points), 0.0);
    parallel_over_points(cfg.n_points, [&](int i) {
      const StateVector psi =
          exact_evolve(h, psi0, rec.times_s[static_cast<std::size_t>(i)]);
      rec.mx[static_cast<std::size_t>(i)] = expectation_mx(psi);
    });
    return rec;
  }

  const bool shot_mode = cfg.shots > 0;
  const int runs = shot_mode ? cfg.runs : 1;
  std::vector<std::vector<double>> series(
      static_cast<std::size_t>(runs),
      std::vector<double>(static_cast<std::size_t>(cfg.n_points), 0.0));

  for (int r = 0; r < runs; ++r) {
    auto& row = series[static_cast<std::size_t>(r)];
    parallel_over_points(cfg.n_points, [&](int i) {
      const double t = rec.times_s[static_cast<std::size_t>(i)];
      const CircuitIR circuit =
          build_fid_circuit(sys, t, cfg.repetitions, cfg.formula);
      if (shot_mode) {
        const ShotResult shot =
            sample_mx(circuit, StateVector(n), cfg.shots,
                      mix_seed(cfg.seed, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(r)));
        row[static_cast<std::size_t>(i)] = shot.mx_estimate;
      } else {
        // The circuit ends in the X->Z basis change, so the exact readout
        // of the measured observable is <Mz>.
        const StateVector psi = apply_circuit(circuit, StateVector(n));
        row[static_cast<std::size_t>(i)] = expectation_mz(psi);
      }
    });
  }

  rec.mx.assign(static_cast<std::size_t>(cfg.n_points), 0.0);
  for (int i = 0; i < cfg.n_points; ++i) {
    double acc = 0.0;
    for (int r = 0; r < runs; ++r)
      acc += series[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    rec.mx[static_cast<std::size_t>(i)] = acc / runs;
  }
  if (runs > 1) rec.run_series = std::move(series);
  return rec;
}

std::vector<double> Spectrum::magnitude() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::abs(values[i]);
  return out;
}

Spectrum to_spectrum(const FidRecord& fid, double line_broadening_hz) {
  if (line_broadening_hz < 0)
    throw ParameterError("line broadening must be >= 0");
  const std::size_t n = fid.mx.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double apod =
        line_broadening_hz > 0
            ? std::exp(-SpinSystem::kPi * line_broadening_hz * fid.times_s[i])
            : 1.0;
    x[i] = fid.mx[i] * apod;
  }
  Spectrum sp;
  sp.sample_rate_hz = fid.config.sample_rate_hz;
  sp.values = rfft(x);
  sp.freq_hz.resize(sp.values.size());
  const double df = fid.config.sample_rate_hz / static_cast<double>(n);
  for (std::size_t k = 0; k < sp.values.size(); ++k)
    sp.freq_hz[k] = df * static_cast<double>(k);
  return sp;
}

double cosine_distance(const Spectrum& a, const Spectrum& b) {
  if (a.values.size() != b.values.size() ||
      a.sample_rate_hz != b.sample_rate_hz)
    throw ParameterError("spectra must share the same axis");
  const std::vector<double> x = a.magnitude();
  const std::vector<double> y = b.magnitude();
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (nx == 0.0 || ny == 0.0)
    throw ValidationError("cosine distance undefined for zero spectrum");
  return 1.0 - dot / (std::sqrt(nx) * std::sqrt(ny));
}

std::vector<SweepRow> trotter_error_sweep(const std::vector<SpinSystem>& systems,
                                          const std::vector<int>& reps_list,
                                          const std::vector<int>& orders_list,
                                          const AcquisitionConfig& cfg) {
  std::vector<SweepRow> rows;
  for (const SpinSystem& sys : systems) {
    AcquisitionConfig exact_cfg = cfg;
    exact_cfg.shots = 0;
    const Spectrum ref =
        to_spectrum(acquire_fid(sys, exact_cfg, Engine::ExactOracle));

    for (int reps : reps_list) {
      AcquisitionConfig c = exact_cfg;
      c.repetitions = reps;
      c.formula = Formula::LieTrotter;
      const Spectrum sp =
          to_spectrum(acquire_fid(sys, c, Engine::TrotterCircuit));
      rows.push_back(
          {sys.name, sys.size(), Formula::LieTrotter, reps,
           cosine_distance(sp, ref)});
    }
    for (int order : orders_list) {
      AcquisitionConfig c = exact_cfg;
      c.formula = order == 2   ? Formula::Suzuki2
                  : order == 4 ? Formula::Suzuki4
                  : order == 6 ? Formula::Suzuki6
                               : throw ParameterError("Suzuki order must be 2, 4 or 6");
      const Spectrum sp =
          to_spectrum(acquire_fid(sys, c, Engine::TrotterCircuit));
      rows.push_back(
          {sys.name, sys.size(), c.formula, order, cosine_distance(sp, ref)});
    }
  }
  return rows;
}

}  // namespace nmrq
