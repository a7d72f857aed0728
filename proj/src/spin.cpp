#include "eqm/spin.hpp"

#include <cmath>

namespace eqm::spin {

namespace {
constexpr double kUnitTol = 1e-12;
}

Direction::Direction(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
  const double n2 = x * x + y * y + z * z;
  if (std::abs(n2 - 1.0) > kUnitTol)
    throw ValidationError("direction must be a unit vector");
}

Direction Direction::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n < 1e-300) throw ValidationError("cannot normalize the zero direction");
  return Direction(x / n, y / n, z / n);
}

SpinSystem::SpinSystem(int two_j_) : two_j(two_j_) {
  if (two_j < 1) throw ValidationError("spin system needs 2j >= 1");
}

SpinSystem SpinSystem::from_j(double j) {
  const double two_j = 2.0 * j;
  const int rounded = static_cast<int>(std::lround(two_j));
  if (std::abs(two_j - rounded) > 1e-9)
    throw ValidationError("j must be a half-integer");
  return SpinSystem(rounded);
}

SpinOperators spin_operators(const SpinSystem& system) {
  const int d = system.dim();
  const double j = system.j();
  ComplexMatrix jz = ComplexMatrix::Zero(d, d);
  ComplexMatrix jplus = ComplexMatrix::Zero(d, d);
  // Basis index i corresponds to m = j - i.
  for (int i = 0; i < d; ++i) jz(i, i) = j - i;
  for (int i = 1; i < d; ++i) {
    const double m = j - i;  // J+ raises m to m+1, i.e. index i -> i-1
    jplus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ComplexMatrix jminus = jplus.adjoint();
  SpinOperators ops;
  ops.jx = 0.5 * (jplus + jminus);
  ops.jy = Complex(0, -0.5) * (jplus - jminus);
  ops.jz = jz;
  return ops;
}

ComplexMatrix component_operator(const SpinSystem& system, const Direction& a) {
  auto ops = spin_operators(system);
  return a.x * ops.jx + a.y * ops.jy + a.z * ops.jz;
}

Eigensystem eigensystem(const ComplexMatrix& op, double degeneracy_tol) {
  if (!is_hermitian(op, 1e-12))
    throw ValidationError("eigensystem requires a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op);
  if (solver.info() != Eigen::Success)
    throw ValidationError("eigendecomposition failed to converge");

  Eigensystem out;
  const auto& values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out.pairs.push_back({values(i), fix_phase(solver.eigenvectors().col(i))});
    if (i > 0 && values(i) - values(i - 1) < degeneracy_tol) out.degenerate = true;
  }
  return out;
}

ComplexVector question_answer_state(const SpinSystem& system, const Direction& a,
                                    double k) {
  const double two_k = 2.0 * k;
  const int rounded = static_cast<int>(std::lround(two_k));
  if (std::abs(two_k - rounded) > 1e-6 ||
      (system.two_j - rounded) % 2 != 0 || std::abs(rounded) > system.two_j)
    throw ValidationError("answer k must be one of -j, -j+1, ..., j");

  auto es = eigensystem(component_operator(system, a));
  // Spectrum is -j..j within 1e-9 for any unit direction, so nearest match
  // identifies the eigenvector.
  int best = 0;
  double best_dist = std::abs(es.pairs[0].value - k);
  for (size_t i = 1; i < es.pairs.size(); ++i) {
    double dist = std::abs(es.pairs[i].value - k);
    if (dist < best_dist) {
      best = static_cast<int>(i);
      best_dist = dist;
    }
  }
  return es.pairs[best].vector;
}

BlochResult bloch_from_qubit(const ComplexVector& v) {
  if (v.size() != 2) throw ValidationError("bloch_from_qubit needs a qubit ket");
  if (std::abs(v.squaredNorm() - 1.0) > 1e-10)
    throw ValidationError("qubit ket must be normalized");
  const Complex cross = std::conj(v(0)) * v(1);
  const double ax = 2.0 * cross.real();
  const double ay = 2.0 * cross.imag();
  const double az = std::norm(v(0)) - std::norm(v(1));
  return {Direction::normalized(ax, ay, az), 0.5};
}

}  // namespace eqm::spin
