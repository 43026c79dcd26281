#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pulseforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

constexpr Complex kI{0.0, 1.0};

enum class OpKind { hermitian, unitary, density, general };

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline double unitarity_defect(const Matrix& m) {
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

/// Dense complex 2^n x 2^n matrix tagged with its operator role.
/// Tagged constructors validate the role's invariant and throw on violation.
class Operator {
 public:
  Operator() = default;

  static Operator hermitian(Matrix m) {
    check_square(m);
    if (hermiticity_defect(m) >= 1e-12)
      throw std::invalid_argument("matrix is not Hermitian");
    return Operator(std::move(m), OpKind::hermitian);
  }

  static Operator unitary(Matrix m) {
    check_square(m);
    if (unitarity_defect(m) >= 1e-10)
      throw std::invalid_argument("matrix is not unitary");
    return Operator(std::move(m), OpKind::unitary);
  }

  // Unnormalized traceless deviation states are permitted.
  static Operator density(Matrix m) {
    check_square(m);
    if (hermiticity_defect(m) >= 1e-12)
      throw std::invalid_argument("density operator is not Hermitian");
    if (!std::isfinite(std::abs(m.trace())))
      throw std::invalid_argument("density operator has non-finite trace");
    return Operator(std::move(m), OpKind::density);
  }

  static Operator general(Matrix m) {
    check_square(m);
    return Operator(std::move(m), OpKind::general);
  }

  const Matrix& mat() const { return mat_; }
  OpKind kind() const { return kind_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Operator(Matrix m, OpKind k) : mat_(std::move(m)), kind_(k) {}

  static void check_square(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
      throw std::invalid_argument("operator matrix must be square and nonempty");
  }

  Matrix mat_;
  OpKind kind_{OpKind::general};
};

}  // namespace pulseforge
