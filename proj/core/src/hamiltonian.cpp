#include "nmrq/hamiltonian.hpp"

#include <cmath>
#include <mutex>

#include "nmrq/errors.hpp"
#include "nmrq/simulator.hpp"

namespace nmrq {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Action of sigma^a on basis bit b: returns (new bit, amplitude factor).
struct PauliAction {
  int bit;
  std::complex<double> factor;
};

PauliAction pauli_on_bit(Axis a, int b) {
  switch (a) {
    case Axis::X:
      return {1 - b, {1.0, 0.0}};
    case Axis::Y:
      return {1 - b, b == 0 ? kI : -kI};
    case Axis::Z:
    default:
      return {b, b == 0 ? std::complex<double>{1.0, 0.0}
                        : std::complex<double>{-1.0, 0.0}};
  }
}

}  // namespace

PauliHamiltonian build_terms(const SpinSystem& sys) {
  PauliHamiltonian h;
  h.n_spins = sys.size();
  for (int k = 0; k < h.n_spins; ++k) {
    const double w = sys.offset_rad(k);
    if (w != 0.0) h.terms.push_back({w, {{k, Axis::Z}}});
  }
  for (int k = 0; k < h.n_spins; ++k) {
    for (int l = k + 1; l < h.n_spins; ++l) {
      const double j = sys.j_matrix(k, l);
      if (j == 0.0) continue;
      const double c = 2.0 * SpinSystem::kPi * j;
      for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        h.terms.push_back({c, {{k, a}, {l, a}}});
    }
  }
  return h;
}

struct DenseOperator::Eig {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix)
    : matrix_(std::move(matrix)), eig_mutex_(std::make_shared<std::mutex>()) {
  if (matrix_.rows() != matrix_.cols())
    throw ValidationError("dense operator must be square");
  Eigen::Index d = matrix_.rows();
  if (d == 0) throw ValidationError("dense operator must be non-empty");
  while (d > 1) {
    if (d % 2 != 0) throw ValidationError("dimension must be a power of two");
    d /= 2;
    ++n_qubits_;
  }
}

double DenseOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

bool DenseOperator::is_hermitian(double tol) const {
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  return hermiticity_defect() <= tol * scale;
}

const DenseOperator::Eig& DenseOperator::eig() const {
  std::lock_guard<std::mutex> lock(*eig_mutex_);
  if (!eig_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
    if (solver.info() != Eigen::Success)
      throw Error("eigendecomposition failed");
    auto e = std::make_shared<Eig>();
    e->values = solver.eigenvalues();
    e->vectors = solver.eigenvectors();
    eig_ = std::move(e);
  }
  return *eig_;
}

Eigen::VectorXcd DenseOperator::evolve(const Eigen::VectorXcd& psi0,
                                       double t_s) const {
  if (psi0.size() != dim())
    throw ValidationError("state dimension does not match operator");
  if (!is_hermitian())
    throw ValidationError("evolve requires a Hermitian operator");
  const Eig& e = eig();
  Eigen::VectorXcd coeffs = e.vectors.adjoint() * psi0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) *= std::exp(-kI * e.values(i) * t_s);
  return e.vectors * coeffs;
}

DenseOperator realize_dense(const PauliHamiltonian& h, int dense_limit) {
  if (h.n_spins > dense_limit)
    throw ResourceError("dense realization over the qubit limit (" +
                        std::to_string(h.n_spins) + " > " +
                        std::to_string(dense_limit) + ")");
  if (h.n_spins < 1) throw ValidationError("Hamiltonian needs at least 1 spin");
  const std::size_t dim = std::size_t{1} << h.n_spins;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const PauliTerm& term : h.terms) {
    if (term.factors.empty() || term.factors.size() > 2)
      throw ValidationError("Pauli term must have 1 or 2 factors");
    double coeff = term.coefficient;
    for (const auto& f : term.factors) {
      if (f.spin < 0 || f.spin >= h.n_spins)
        throw ValidationError("Pauli factor spin index out of range");
      coeff *= 0.5;  // I^a = sigma^a / 2
    }
    if (term.factors.size() == 2 &&
        term.factors[0].spin == term.factors[1].spin)
      throw ValidationError("Pauli term factors must act on distinct spins");
    for (std::size_t s = 0; s < dim; ++s) {
      std::size_t target = s;
      std::complex<double> amp = coeff;
      for (const auto& f : term.factors) {
        const int bit = static_cast<int>((target >> f.spin) & 1u);
        const PauliAction act = pauli_on_bit(f.axis, bit);
        amp *= act.factor;
        if (act.bit != bit) target ^= std::size_t{1} << f.spin;
      }
      m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(s)) += amp;
    }
  }
  return DenseOperator(std::move(m));
}

StateVector exact_evolve(const DenseOperator& h, const StateVector& psi0,
                         double t_s) {
  if (psi0.n_qubits() != h.n_qubits())
    throw ValidationError("state size does not match Hamiltonian");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi0.dim()));
  for (std::size_t i = 0; i < psi0.dim(); ++i)
    v(static_cast<Eigen::Index>(i)) = psi0.amp(i);
  const Eigen::VectorXcd evolved = h.evolve(v, t_s);
  StateVector out(psi0.n_qubits());
  for (std::size_t i = 0; i < psi0.dim(); ++i)
    out.amp(i) = evolved(static_cast<Eigen::Index>(i));
  return out;
}

double total_z_commutator_norm(const PauliHamiltonian& h, int dense_limit) {
  if (h.terms.empty()) return 0.0;
  const DenseOperator dense = realize_dense(h, dense_limit);
  const std::size_t dim = static_cast<std::size_t>(dense.dim());
  // Mz = sum_k I^Z_k is diagonal, so [Mz, H](r,c) = (mz_r - mz_c) H(r,c).
  std::vector<double> mz(dim, 0.0);
  for (std::size_t s = 0; s < dim; ++s) {
    double v = 0.0;
    for (int k = 0; k < h.n_spins; ++k)
      v += ((s >> k) & 1u) ? -0.5 : 0.5;
    mz[s] = v;
  }
  double worst = 0.0;
  const Eigen::MatrixXcd& m = dense.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double mag =
          std::abs((mz[static_cast<std::size_t>(r)] -
                    mz[static_cast<std::size_t>(c)]) *
                   m(r, c));
      worst = std::max(worst, mag);
    }
  return worst;
}

}  // namespace nmrq
