#include "pulseforge/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace pulseforge {

Operator external_hamiltonian_lab(const SpinSystem& sys, const PulsePeriod& p,
                                  double t) {
  sys.validate();
  p.validate();
  const Eigen::Index dim = sys.dim();
  Matrix h = Matrix::Zero(dim, dim);
  const double angle = p.offset * t + p.phase;
  for (int k = 1; k <= sys.n; ++k) {
    const Matrix iz = spin_operator(sys.n, k, Axis::z).mat();
    const Matrix ix = spin_operator(sys.n, k, Axis::x).mat();
    // e^{-i angle I_z} is diagonal; build it directly
    Matrix rot = Matrix::Zero(dim, dim);
    for (Eigen::Index d = 0; d < dim; ++d)
      rot(d, d) = std::exp(-kI * angle * iz(d, d));
    h += rot * (-p.power * ix) * rot.adjoint();
  }
  return Operator::hermitian(0.5 * (h + Matrix(h.adjoint())));
}

Operator effective_hamiltonian(const SpinSystem& sys, const PulsePeriod& p) {
  sys.validate();
  p.validate();
  const Eigen::Index dim = sys.dim();
  Matrix h = Matrix::Zero(dim, dim);
  std::vector<Matrix> ix(sys.n), iy(sys.n), iz(sys.n);
  for (int k = 0; k < sys.n; ++k) {
    ix[k] = spin_operator(sys.n, k + 1, Axis::x).mat();
    iy[k] = spin_operator(sys.n, k + 1, Axis::y).mat();
    iz[k] = spin_operator(sys.n, k + 1, Axis::z).mat();
  }
  const double cp = std::cos(p.phase);
  const double sp = std::sin(p.phase);
  for (int k = 0; k < sys.n; ++k) {
    h += (sys.shifts[k] - p.offset) * iz[k];
    h -= p.power * (cp * ix[k] + sp * iy[k]);
  }
  for (int k = 0; k < sys.n; ++k)
    for (int j = k + 1; j < sys.n; ++j) {
      const double coupling = sys.couplings(k, j);
      if (coupling == 0.0) continue;
      h += 2.0 * std::numbers::pi * coupling *
           (ix[k] * ix[j] + iy[k] * iy[j] + iz[k] * iz[j]);
    }
  return Operator::hermitian(std::move(h));
}

Operator expm_hermitian(const Operator& h, double t) {
  if (h.kind() != OpKind::hermitian && hermiticity_defect(h.mat()) >= 1e-12)
    throw std::invalid_argument("expm_hermitian requires a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecomposition failed for " << h.dim() << "x" << h.dim()
        << " Hermitian matrix (max |entry| = " << max_abs(h.mat()) << ")";
    throw std::runtime_error(msg.str());
  }
  const auto& evals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(-kI * evals(i) * t);
  return Operator::unitary(vecs * phases.asDiagonal() * vecs.adjoint());
}

Operator frame_correction(const SpinSystem& sys, const PulsePeriod& p) {
  sys.validate();
  const Eigen::Index dim = sys.dim();
  const Matrix iz_tot = total_spin(sys.n, Axis::z);
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index d = 0; d < dim; ++d)
    u(d, d) = std::exp(kI * p.offset * p.duration * iz_tot(d, d).real());
  return Operator::unitary(std::move(u));
}

Operator period_propagator(const SpinSystem& sys, const PulsePeriod& p) {
  const Operator h_eff = effective_hamiltonian(sys, p);
  const Operator u_eff = expm_hermitian(h_eff, p.duration);
  const Operator u_z = frame_correction(sys, p);
  return Operator::unitary(u_z.mat().adjoint() * u_eff.mat());
}

Operator net_propagator(const SpinSystem& sys, const PulseSequence& seq) {
  seq.validate();
  Matrix u = Matrix::Identity(sys.dim(), sys.dim());
  for (const auto& p : seq.periods)
    u = period_propagator(sys, p).mat() * u;
  return Operator::unitary(std::move(u));
}

Operator evolve_state(const Operator& rho, const Operator& u) {
  if (rho.dim() != u.dim())
    throw std::invalid_argument("state/propagator dimension mismatch");
  return Operator::density(u.mat() * rho.mat() * u.mat().adjoint());
}

}  // namespace pulseforge
