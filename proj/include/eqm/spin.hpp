#pragma once

#include <vector>

#include "eqm/linalg.hpp"

namespace eqm::spin {

/// Unit vector on the measurement sphere.
struct Direction {
  double x = 0, y = 0, z = 1;

  Direction() = default;
  Direction(double x_, double y_, double z_);

  /// Builds a unit direction from arbitrary nonzero components.
  static Direction normalized(double x, double y, double z);
};

/// Spin-j system, j a half-integer; Hilbert space dimension 2j+1.
struct SpinSystem {
  int two_j;

  explicit SpinSystem(int two_j_);
  /// From j itself; rejects values that are not half-integers.
  static SpinSystem from_j(double j);

  double j() const { return two_j / 2.0; }
  int dim() const { return two_j + 1; }
};

struct SpinOperators {
  ComplexMatrix jx, jy, jz;
};

/// Component operators in the basis ordered m = j, j-1, ..., -j, built from
/// the ladder coefficients sqrt(j(j+1) - m(m+-1)).
SpinOperators spin_operators(const SpinSystem& system);

/// a_x Jx + a_y Jy + a_z Jz for a unit direction a.
ComplexMatrix component_operator(const SpinSystem& system, const Direction& a);

struct EigenPair {
  double value;
  ComplexVector vector;  // unit norm, phase fixed
};

struct Eigensystem {
  std::vector<EigenPair> pairs;  // eigenvalues ascending
  /// True when two eigenvalues are closer than the degeneracy tolerance,
  /// so eigenvectors are not unique up to phase.
  bool degenerate = false;
};

/// Deterministic eigendecomposition of a Hermitian operator. Eigenvalues
/// ascending, eigenvectors orthonormal with the fixed phase convention.
Eigensystem eigensystem(const ComplexMatrix& op, double degeneracy_tol = 1e-8);

/// The unique (phase-fixed) ket with J^a |a;k> = k |a;k>. k must be one of
/// -j, -j+1, ..., j.
ComplexVector question_answer_state(const SpinSystem& system, const Direction& a,
                                    double k);

struct BlochResult {
  Direction direction;
  double k;  // always +1/2: v is the "up" answer along the returned direction
};

/// Direction a with |a;+1/2> equal to v up to phase, from the Bloch vector
/// of the qubit state.
BlochResult bloch_from_qubit(const ComplexVector& v);

}  // namespace eqm::spin
