#include "ist/laxpair.hpp"

#include <algorithm>
#include <cmath>

#include "ist/scattering.hpp"

namespace ist {

Matrix3 Matrix3::commutator(const Matrix3& a, const Matrix3& b) {
  Matrix3 c;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) {
      Complex acc(0, 0);
      for (int k = 0; k < 3; ++k)
        acc += a.at(r, k) * b.at(k, s) - b.at(r, k) * a.at(k, s);
      c.at(r, s) = acc;
    }
  return c;
}

double Matrix3::max_abs() const {
  double mx = 0;
  for (const Complex& z : v) mx = std::max(mx, std::abs(z));
  return mx;
}

Matrix3 q_matrix(const Potential& q, int i, int j) {
  Matrix3 m;
  m.at(0, 2) = q.q(1).at(i, j);
  m.at(1, 2) = q.q(2).at(i, j);
  m.at(2, 0) = q.q(3).at(i, j);
  m.at(2, 1) = q.q(4).at(i, j);
  return m;
}

Matrix3 p_matrix(const Potential& q, const AuxiliaryFields& aux,
                 const LaxParameters& lax, int i, int j) {
  const double c13 = 0.5 * (lax.b1 - lax.b3);
  const double c23 = 0.5 * (lax.b2 - lax.b3);
  Matrix3 m;
  m.at(0, 1) = aux.v12.at(i, j);
  m.at(1, 0) = aux.v21.at(i, j);
  m.at(0, 2) = c13 * q.q(1).at(i, j);
  m.at(1, 2) = c23 * q.q(2).at(i, j);
  m.at(2, 0) = c13 * q.q(3).at(i, j);
  m.at(2, 1) = c23 * q.q(4).at(i, j);
  return m;
}

namespace {

constexpr double kSigma[3] = {1.0, 1.0, -1.0};

void check_same_grid(const Potential& a, const Potential& b) {
  if (!(a.grid() == b.grid()))
    throw UsageError("snapshot potentials must share one grid");
}

}  // namespace

double check_constraint(const Potential& q, const LaxParameters& lax) {
  const AuxiliaryFields aux = compute_aux(q, lax);
  const double tau[3] = {lax.b1, lax.b2, lax.b3};
  const int n = q.grid().n();
  double defect = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Matrix3 Q = q_matrix(q, i, j);
      const Matrix3 P = p_matrix(q, aux, lax, i, j);
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          const Complex lhs = (kSigma[r] - kSigma[s]) * P.at(r, s);
          const Complex rhs = (tau[r] - tau[s]) * Q.at(r, s);
          defect = std::max(defect, std::abs(lhs - rhs));
        }
    }
  return defect;
}

namespace {

/// R = Q_t - tau Q_x - P_y + sigma P_x + [Q, P] at an interior node.
Matrix3 residual_matrix(const Potential& qm, const Potential& q0, const Potential& qp,
                        const AuxiliaryFields& aux0, const LaxParameters& lax,
                        double dt, int i, int j) {
  const double h = q0.grid().h();
  const double tau[3] = {lax.b1, lax.b2, lax.b3};

  const Matrix3 Q = q_matrix(q0, i, j);
  const Matrix3 P = p_matrix(q0, aux0, lax, i, j);
  const Matrix3 Qp = q_matrix(qp, i, j), Qm = q_matrix(qm, i, j);
  const Matrix3 Qxp = q_matrix(q0, i + 1, j), Qxm = q_matrix(q0, i - 1, j);
  const Matrix3 Pxp = p_matrix(q0, aux0, lax, i + 1, j);
  const Matrix3 Pxm = p_matrix(q0, aux0, lax, i - 1, j);
  const Matrix3 Pyp = p_matrix(q0, aux0, lax, i, j + 1);
  const Matrix3 Pym = p_matrix(q0, aux0, lax, i, j - 1);
  const Matrix3 QP = Matrix3::commutator(Q, P);

  Matrix3 R;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) {
      const Complex qt = (Qp.at(r, s) - Qm.at(r, s)) / (2.0 * dt);
      const Complex qx = (Qxp.at(r, s) - Qxm.at(r, s)) / (2.0 * h);
      const Complex px = (Pxp.at(r, s) - Pxm.at(r, s)) / (2.0 * h);
      const Complex py = (Pyp.at(r, s) - Pym.at(r, s)) / (2.0 * h);
      R.at(r, s) = qt - tau[r] * qx - py + kSigma[r] * px + QP.at(r, s);
    }
  return R;
}

}  // namespace

ResidualReport commutator_residual(const Potential& q_minus, const Potential& q_center,
                                   const Potential& q_plus, double dt,
                                   const LaxParameters& lax, const WaveField& probe) {
  check_same_grid(q_minus, q_center);
  check_same_grid(q_center, q_plus);
  if (!(probe.grid() == q_center.grid()))
    throw UsageError("probe grid does not match the snapshots");
  if (dt <= 0) throw UsageError("commutator_residual requires dt > 0");

  const AuxiliaryFields aux0 = compute_aux(q_center, lax);
  const Grid2D& g = q_center.grid();
  const int n = g.n();
  const double h = g.h();
  const ComplexField* u[3] = {&probe.psi1, &probe.psi2, &probe.psi3};

  ResidualReport rep;
  double acc = 0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const Matrix3 R = residual_matrix(q_minus, q_center, q_plus, aux0, lax, dt, i, j);
      for (int r = 0; r < 3; ++r) {
        Complex z(0, 0);
        for (int s = 0; s < 3; ++s) z += R.at(r, s) * u[s]->at(i, j);
        acc += std::norm(z);
        rep.max = std::max(rep.max, std::abs(z));
      }
    }
  rep.l2 = std::sqrt(acc) * h;
  return rep;
}

ResidualReport linear_system_residual(const Potential& q, const WaveField& psi) {
  if (!(psi.grid() == q.grid())) throw UsageError("field grid mismatch");
  const Grid2D& g = q.grid();
  const int n = g.n();
  const double h = g.h();
  const ComplexField* u[3] = {&psi.psi1, &psi.psi2, &psi.psi3};

  ResidualReport rep;
  double acc = 0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const Matrix3 Q = q_matrix(q, i, j);
      for (int r = 0; r < 3; ++r) {
        const Complex dy = (u[r]->at(i, j + 1) - u[r]->at(i, j - 1)) / (2.0 * h);
        const Complex dx = (u[r]->at(i + 1, j) - u[r]->at(i - 1, j)) / (2.0 * h);
        Complex z = dy - kSigma[r] * dx;
        for (int s = 0; s < 3; ++s) z -= Q.at(r, s) * u[s]->at(i, j);
        acc += std::norm(z);
        rep.max = std::max(rep.max, std::abs(z));
      }
    }
  rep.l2 = std::sqrt(acc) * h;
  return rep;
}

Lemma1Report lemma1_residual(const Potential& q_minus, const Potential& q_center,
                             const Potential& q_plus, double dt,
                             const LaxParameters& lax,
                             const AsymptoticProfile& a_minus) {
  check_same_grid(q_minus, q_center);
  check_same_grid(q_center, q_plus);
  if (dt <= 0) throw UsageError("lemma1_residual requires dt > 0");

  const Grid2D& g = q_center.grid();
  const int n = g.n();
  const double h = g.h();
  const double tau[3] = {lax.b1, lax.b2, lax.b3};

  const WaveField psi_m = propagate(q_minus, a_minus).psi;
  const WaveField psi_0 = propagate(q_center, a_minus).psi;
  const WaveField psi_p = propagate(q_plus, a_minus).psi;
  const AuxiliaryFields aux0 = compute_aux(q_center, lax);

  const ComplexField* um[3] = {&psi_m.psi1, &psi_m.psi2, &psi_m.psi3};
  const ComplexField* u0[3] = {&psi_0.psi1, &psi_0.psi2, &psi_0.psi3};
  const ComplexField* up[3] = {&psi_p.psi1, &psi_p.psi2, &psi_p.psi3};

  // phi = (d_t - tau d_x - P) psi on interior columns.
  WaveField phi(g);
  ComplexField* f[3] = {&phi.psi1, &phi.psi2, &phi.psi3};
  for (int j = 0; j < n; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const Matrix3 P = p_matrix(q_center, aux0, lax, i, j);
      for (int r = 0; r < 3; ++r) {
        Complex z = (up[r]->at(i, j) - um[r]->at(i, j)) / (2.0 * dt);
        z -= tau[r] * (u0[r]->at(i + 1, j) - u0[r]->at(i - 1, j)) / (2.0 * h);
        for (int s = 0; s < 3; ++s) z -= P.at(r, s) * u0[s]->at(i, j);
        f[r]->at(i, j) = z;
      }
    }

  Lemma1Report rep;
  double acc_l = 0, acc_r = 0, acc_d = 0, acc_dy = 0, acc_dx = 0, acc_q = 0;
  for (int j = 2; j < n - 2; ++j)
    for (int i = 2; i < n - 2; ++i) {
      const Matrix3 Q = q_matrix(q_center, i, j);
      const Matrix3 R =
          residual_matrix(q_minus, q_center, q_plus, aux0, lax, dt, i, j);
      for (int r = 0; r < 3; ++r) {
        const Complex dy = (f[r]->at(i, j + 1) - f[r]->at(i, j - 1)) / (2.0 * h);
        const Complex dx = (f[r]->at(i + 1, j) - f[r]->at(i - 1, j)) / (2.0 * h);
        Complex qf(0, 0);
        for (int s = 0; s < 3; ++s) qf += Q.at(r, s) * f[s]->at(i, j);
        const Complex lhs = dy - kSigma[r] * dx - qf;
        Complex rhs(0, 0);
        for (int s = 0; s < 3; ++s) rhs += R.at(r, s) * u0[s]->at(i, j);
        acc_l += std::norm(lhs);
        acc_r += std::norm(rhs);
        acc_d += std::norm(lhs - rhs);
        acc_dy += std::norm(dy);
        acc_dx += std::norm(dx);
        acc_q += std::norm(qf);
      }
    }
  rep.lhs_l2 = std::sqrt(acc_l) * h;
  rep.rhs_l2 = std::sqrt(acc_r) * h;
  rep.diff_l2 = std::sqrt(acc_d) * h;
  rep.term_scale = (std::sqrt(acc_dy) + std::sqrt(acc_dx) + std::sqrt(acc_q)) * h;
  return rep;
}

}  // namespace ist
