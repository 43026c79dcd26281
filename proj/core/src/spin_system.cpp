#include "pulseforge/spin_system.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pulseforge {

namespace {

Matrix pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::x:
      m << 0, 1, 1, 0;
      break;
    case Axis::y:
      m << 0, -kI, kI, 0;
      break;
    case Axis::z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

void SpinSystem::validate() const {
  if (n < 1 || n > 8)
    throw std::invalid_argument("spin count must be in [1, 8]");
  if (int(shifts.size()) != n)
    throw std::invalid_argument("shifts must have exactly n entries");
  for (double w : shifts)
    if (!std::isfinite(w))
      throw std::invalid_argument("chemical shift is not finite");
  if (couplings.rows() != n || couplings.cols() != n)
    throw std::invalid_argument("coupling matrix must be n x n");
  for (int k = 0; k < n; ++k) {
    if (couplings(k, k) != 0.0)
      throw std::invalid_argument("coupling matrix diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(couplings(k, j)))
        throw std::invalid_argument("coupling is not finite");
      if (couplings(k, j) != couplings(j, k))
        throw std::invalid_argument("coupling matrix must be symmetric");
    }
  }
}

SpinSystem SpinSystem::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("spin-system config: ") + e.what());
  }

  SpinSystem sys;
  const auto shifts_hz = j.at("shifts_hz").get<std::vector<double>>();
  sys.n = int(shifts_hz.size());
  sys.shifts.reserve(sys.n);
  for (double f : shifts_hz) sys.shifts.push_back(2.0 * std::numbers::pi * f);

  if (j.contains("labels")) {
    sys.labels = j.at("labels").get<std::vector<std::string>>();
    if (int(sys.labels.size()) != sys.n)
      throw std::invalid_argument("labels count does not match shifts_hz");
  } else {
    for (int k = 1; k <= sys.n; ++k) sys.labels.push_back("spin" + std::to_string(k));
  }

  sys.couplings = Eigen::MatrixXd::Zero(sys.n, sys.n);
  const auto& jc = j.at("couplings_hz");
  if (!jc.is_array()) throw std::invalid_argument("couplings_hz must be an array");
  if (!jc.empty() && jc.front().is_array()) {
    // full matrix
    if (int(jc.size()) != sys.n)
      throw std::invalid_argument("couplings_hz matrix must be n x n");
    for (int k = 0; k < sys.n; ++k) {
      const auto row = jc[k].get<std::vector<double>>();
      if (int(row.size()) != sys.n)
        throw std::invalid_argument("couplings_hz matrix must be n x n");
      for (int m = 0; m < sys.n; ++m) sys.couplings(k, m) = row[m];
    }
    for (int k = 0; k < sys.n; ++k)
      for (int m = 0; m < sys.n; ++m)
        if (sys.couplings(k, m) != sys.couplings(m, k)) {
          std::ostringstream msg;
          msg << "couplings_hz is asymmetric: J[" << k + 1 << "][" << m + 1
              << "] = " << sys.couplings(k, m) << " but J[" << m + 1 << "]["
              << k + 1 << "] = " << sys.couplings(m, k);
          throw std::invalid_argument(msg.str());
        }
  } else {
    // upper-triangle list, row major: J12, J13, ..., J23, ...
    const auto flat = jc.get<std::vector<double>>();
    const size_t expect = size_t(sys.n) * (sys.n - 1) / 2;
    if (flat.size() != expect)
      throw std::invalid_argument("couplings_hz upper-triangle list has wrong length");
    size_t idx = 0;
    for (int k = 0; k < sys.n; ++k)
      for (int m = k + 1; m < sys.n; ++m) {
        sys.couplings(k, m) = flat[idx];
        sys.couplings(m, k) = flat[idx];
        ++idx;
      }
  }

  sys.validate();
  return sys;
}

SpinSystem SpinSystem::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spin-system config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

Operator spin_operator(int n, int k, Axis axis) {
  if (n < 1) throw std::invalid_argument("spin count must be positive");
  if (k < 1 || k > n) throw std::out_of_range("spin index out of range");
  Matrix op = Matrix::Identity(1, 1);
  for (int slot = 1; slot <= n; ++slot) {
    if (slot == k)
      op = kron(op, 0.5 * pauli(axis));
    else
      op = kron(op, Matrix::Identity(2, 2));
  }
  return Operator::hermitian(std::move(op));
}

Matrix total_spin(int n, Axis axis) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int k = 1; k <= n; ++k) sum += spin_operator(n, k, axis).mat();
  return sum;
}

Operator internal_hamiltonian(const SpinSystem& sys) {
  sys.validate();
  const Eigen::Index dim = sys.dim();
  Matrix h = Matrix::Zero(dim, dim);
  std::vector<Matrix> ix(sys.n), iy(sys.n), iz(sys.n);
  for (int k = 0; k < sys.n; ++k) {
    ix[k] = spin_operator(sys.n, k + 1, Axis::x).mat();
    iy[k] = spin_operator(sys.n, k + 1, Axis::y).mat();
    iz[k] = spin_operator(sys.n, k + 1, Axis::z).mat();
    h += sys.shifts[k] * iz[k];
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

std::vector<Operator> pauli_basis(int n) {
  if (n < 1) throw std::invalid_argument("spin count must be positive");
  if (n > 6)
    throw std::length_error("pauli_basis: N^2 matrices at n > 6 exceed the memory budget");
  const double scale = std::pow(2.0, -0.5 * n);
  std::vector<Matrix> singles = {Matrix::Identity(2, 2), pauli(Axis::x),
                                 pauli(Axis::y), pauli(Axis::z)};
  const size_t count = size_t(1) << (2 * n);
  std::vector<Operator> basis;
  basis.reserve(count);
  for (size_t code = 0; code < count; ++code) {
    Matrix m = Matrix::Identity(1, 1);
    // base-4 digits of `code`, most significant digit = spin 1; code 0 is identity
    for (int slot = n - 1; slot >= 0; --slot) {
      const size_t digit = (code >> (2 * slot)) & 3;
      m = kron(m, singles[digit]);
    }
    basis.push_back(Operator::hermitian(scale * m));
  }
  return basis;
}

}  // namespace pulseforge
