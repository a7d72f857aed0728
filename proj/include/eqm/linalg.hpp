#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eqm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an input violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

inline double hermitian_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() && hermitian_residual(m) <= tol;
}

inline double identity_residual(const ComplexMatrix& m) {
  return (m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of a Hermitian matrix (for PSD checks).
inline double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Multiplies v by a unit phase so its first component of modulus > threshold
/// becomes real and positive. Makes eigenvector output reproducible.
inline ComplexVector fix_phase(ComplexVector v, double threshold = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > threshold) {
      v *= std::conj(v(i)) / mag;
      break;
    }
  }
  return v;
}

/// Stable decimal label for an answer value ("0.5", "-1", "2"): rounded to
/// nine decimals so eigenvalue jitter below the degeneracy tolerance never
/// leaks into the label.
inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace eqm
