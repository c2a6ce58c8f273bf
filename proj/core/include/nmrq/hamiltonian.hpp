#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "nmrq/spin_system.hpp"

namespace nmrq {

enum class Axis : std::uint8_t { X, Y, Z };

// One weighted Pauli word of the 2-local rotating-frame Hamiltonian.
// Coefficients are rad/s and multiply spin operators I^a = sigma^a / 2;
// the factors of 1/2 are applied in realize_dense, never stored here.
struct PauliTerm {
  struct Factor {
    int spin;
    Axis axis;
  };
  double coefficient = 0.0;
  std::vector<Factor> factors;  // 1 or 2 entries, distinct spins
};

struct PauliHamiltonian {
  int n_spins = 0;
  std::vector<PauliTerm> terms;
};

// H = sum_k omega_k I^Z_k + 2*pi * sum_{k<l} J_kl (IX IX + IY IY + IZ IZ).
// Zero-coefficient terms are omitted, so the term count is
// (#spins with nonzero offset) + 3 * (#nonzero couplings).
PauliHamiltonian build_terms(const SpinSystem& sys);

class StateVector;  // simulator.hpp

inline constexpr int kDenseLimit = 14;

// Dense Hermitian realization of a Hamiltonian plus its cached
// eigendecomposition. The decomposition is computed on first use and is
// write-once; evolve() is safe to call concurrently afterwards (and the
// lazy fill itself is mutex-guarded).
class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  int n_qubits() const { return n_qubits_; }

  double hermiticity_defect() const;  // max |H - H^dagger|
  bool is_hermitian(double tol = 1e-9) const;

  // exp(-i H t) |psi0> through the Hermitian eigendecomposition (hbar = 1,
  // H in rad/s, t in seconds).
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t_s) const;

 private:
  struct Eig;
  const Eig& eig() const;

  Eigen::MatrixXcd matrix_;
  int n_qubits_ = 0;
  mutable std::shared_ptr<const Eig> eig_;
  mutable std::shared_ptr<std::mutex> eig_mutex_;
};

// Kronecker realization over 2^N amplitudes, qubit k = bit k of the basis
// index. Throws ResourceError above dense_limit qubits.
DenseOperator realize_dense(const PauliHamiltonian& h,
                            int dense_limit = kDenseLimit);

StateVector exact_evolve(const DenseOperator& h, const StateVector& psi0,
                         double t_s);

// max-abs entry of [sum_k I^Z_k, H]; zero for every isotropic system.
double total_z_commutator_norm(const PauliHamiltonian& h,
                               int dense_limit = kDenseLimit);

}  // namespace nmrq
