#include "nmrq/spin_system.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "nmrq/errors.hpp"

namespace nmrq {

namespace {

constexpr double kSymmetryTolHz = 1e-9;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

void validate_spin_system(const SpinSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.labels.size());
  require(n > 0, "spin system is empty");
  require(sys.shifts_ppm.size() == sys.labels.size(),
          "labels and shifts_ppm must have the same length");
  require(sys.j_matrix.rows() == n && sys.j_matrix.cols() == n,
          "j_matrix must be N x N");
  require(std::isfinite(sys.spectrometer_mhz) && sys.spectrometer_mhz > 0,
          "spectrometer_mhz must be finite and positive");
  require(std::isfinite(sys.carrier_ppm), "carrier_ppm must be finite");
  for (int k = 0; k < sys.size(); ++k) {
    require(std::isfinite(sys.shifts_ppm[static_cast<std::size_t>(k)]),
            "shift_ppm must be finite");
    require(std::isfinite(sys.offset_rad(k)), "derived offset must be finite");
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    require(sys.j_matrix(r, r) == 0.0, "j_matrix diagonal must be zero");
    for (Eigen::Index c = 0; c < n; ++c) {
      require(std::isfinite(sys.j_matrix(r, c)), "j_matrix entries must be finite");
      require(sys.j_matrix(r, c) == sys.j_matrix(c, r),
              "j_matrix must be symmetric");
    }
  }
}

SpinSystem parse_spin_system(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }

  auto need = [&](const char* field) -> const nlohmann::json& {
    if (!doc.contains(field))
      throw SchemaError(std::string("missing field: ") + field);
    return doc.at(field);
  };

  SpinSystem sys;
  try {
    sys.name = need("name").get<std::string>();
    sys.spectrometer_mhz = need("spectrometer_mhz").get<double>();
    sys.carrier_ppm = doc.value("carrier_ppm", 0.0);

    const auto& spins = need("spins");
    if (!spins.is_array() || spins.empty())
      throw SchemaError("spins must be a non-empty array");
    for (const auto& s : spins) {
      if (!s.contains("label") || !s.contains("shift_ppm"))
        throw SchemaError("each spin needs label and shift_ppm");
      sys.labels.push_back(s.at("label").get<std::string>());
      sys.shifts_ppm.push_back(s.at("shift_ppm").get<double>());
    }

    const int n = sys.size();
    sys.j_matrix = Eigen::MatrixXd::Zero(n, n);
    const auto& coups = need("j_couplings");
    if (!coups.is_array()) throw SchemaError("j_couplings must be an array");
    std::map<std::pair<int, int>, double> seen;
    for (const auto& c : coups) {
      if (!c.contains("i") || !c.contains("j") || !c.contains("hz"))
        throw SchemaError("each coupling needs i, j, hz");
      const int i = c.at("i").get<int>();
      const int j = c.at("j").get<int>();
      const double hz = c.at("hz").get<double>();
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw ValidationError("coupling index out of range");
      if (i == j) throw ValidationError("self-coupling is not allowed");
      if (!std::isfinite(hz)) throw ValidationError("coupling must be finite");
      const auto key = std::minmax(i, j);
      auto it = seen.find(key);
      if (it != seen.end()) {
        // The schema is an upper-triangle list; a mirrored entry is accepted
        // only when it agrees, anything else is an asymmetric matrix.
        if (std::abs(it->second - hz) > kSymmetryTolHz) {
          std::ostringstream os;
          os << "asymmetric coupling for pair (" << key.first << ','
             << key.second << "): " << it->second << " vs " << hz;
          throw ValidationError(os.str());
        }
        continue;
      }
      seen.emplace(key, hz);
      sys.j_matrix(key.first, key.second) = hz;
      sys.j_matrix(key.second, key.first) = hz;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("schema error: ") + e.what());
  }

  validate_spin_system(sys);
  return sys;
}

SpinSystem load_spin_system(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open spin-system file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spin_system(buf.str());
}

CouplingGraph coupling_graph(const SpinSystem& sys, double threshold_hz) {
  if (!(threshold_hz >= 0.0))
    throw ParameterError("coupling threshold must be >= 0");
  CouplingGraph g;
  g.n_spins = sys.size();
  g.threshold_hz = threshold_hz;
  for (int k = 0; k < g.n_spins; ++k)
    for (int l = k + 1; l < g.n_spins; ++l)
      if (std::abs(sys.j_matrix(k, l)) > threshold_hz) g.edges.emplace_back(k, l);
  return g;
}

namespace {

SpinSystem induced_subsystem(const SpinSystem& sys,
                             const std::vector<int>& members,
                             std::size_t cluster_index) {
  SpinSystem sub;
  sub.name = sys.name + "#cluster" + std::to_string(cluster_index);
  sub.spectrometer_mhz = sys.spectrometer_mhz;
  sub.carrier_ppm = sys.carrier_ppm;
  const auto m = static_cast<Eigen::Index>(members.size());
  sub.j_matrix = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto ka = static_cast<std::size_t>(members[static_cast<std::size_t>(a)]);
    sub.labels.push_back(sys.labels[ka]);
    sub.shifts_ppm.push_back(sys.shifts_ppm[ka]);
    for (Eigen::Index b = 0; b < m; ++b)
      sub.j_matrix(a, b) = sys.j_matrix(members[static_cast<std::size_t>(a)],
                                        members[static_cast<std::size_t>(b)]);
  }
  return sub;
}

}  // namespace

std::vector<SpinCluster> decompose_clusters(const SpinSystem& sys,
                                            double threshold_hz) {
  const CouplingGraph g = coupling_graph(sys, threshold_hz);
  const int n = g.n_spins;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [k, l] : g.edges) {
    adj[static_cast<std::size_t>(k)].push_back(l);
    adj[static_cast<std::size_t>(l)].push_back(k);
  }

  std::vector<SpinCluster> out;
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  for (int root = 0; root < n; ++root) {
    if (visited[static_cast<std::size_t>(root)]) continue;
    std::vector<int> stack{root}, members;
    visited[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    SpinCluster c;
    c.subsystem = induced_subsystem(sys, members, out.size());
    c.members = std::move(members);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace nmrq
