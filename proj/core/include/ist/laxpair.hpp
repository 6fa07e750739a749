#pragma once

#include "ist/threewave.hpp"

namespace ist {

/// Small dense 3x3 complex matrix.
struct Matrix3 {
  std::array<Complex, 9> v{};

  Complex& at(int r, int c) { return v[static_cast<size_t>(r) * 3 + c]; }
  const Complex& at(int r, int c) const { return v[static_cast<size_t>(r) * 3 + c]; }

  static Matrix3 commutator(const Matrix3& a, const Matrix3& b);
  double max_abs() const;
};

/// Coefficient matrix of the linear system at a node: q1, q2 fill column 3
/// of rows 1, 2 and q3, q4 fill row 3 of columns 1, 2.
Matrix3 q_matrix(const Potential& q, int i, int j);

/// Second operator's coefficient matrix at a node, built from the
/// potential and the integrated auxiliary fields.
Matrix3 p_matrix(const Potential& q, const AuxiliaryFields& aux,
                 const LaxParameters& lax, int i, int j);

/// Max-norm defect of the algebraic compatibility identity
/// [sigma, P] = [tau, Q] over the grid; exactly zero up to roundoff by
/// construction of P.
double check_constraint(const Potential& q, const LaxParameters& lax);

struct ResidualReport {
  double l2 = 0;
  double max = 0;
};

/// Residual of the operator identity applied to a time-independent probe:
///   R = Q_t - tau Q_x - P_y + sigma P_x + [Q, P],
/// with Q_t centered from the snapshots at t -+ dt and all spatial
/// derivatives centered.  Vanishes at O(h^2 + dt^2) when the snapshots
/// follow the quasilinear evolution.
ResidualReport commutator_residual(const Potential& q_minus, const Potential& q_center,
                                   const Potential& q_plus, double dt,
                                   const LaxParameters& lax, const WaveField& probe);

/// Centered-difference residual of the linear system
/// d_y psi - sigma d_x psi - Q psi on interior nodes.
ResidualReport linear_system_residual(const Potential& q, const WaveField& psi);

struct Lemma1Report {
  double lhs_l2 = 0;     // || L phi ||
  double rhs_l2 = 0;     // || R psi ||
  double diff_l2 = 0;    // || L phi - R psi ||
  double term_scale = 0; // sum of the norms of the individual terms of L phi
};

/// Consistency of the derived-solution construction: with psi(t) solving
/// the linear system for the snapshot potentials, phi = (d_t - tau d_x - P) psi
/// satisfies L phi = R psi.  The same bottom profile seeds all three
/// propagations.
Lemma1Report lemma1_residual(const Potential& q_minus, const Potential& q_center,
                             const Potential& q_plus, double dt,
                             const LaxParameters& lax,
                             const AsymptoticProfile& a_minus);

}  // namespace ist
