#include "ist/threewave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ist/interp.hpp"

namespace ist {

namespace {

Complex f12_at(const Potential& q, const LaxParameters& lax, int i, int j) {
  return -0.5 * (lax.b1 - lax.b2) * q.q(1).at(i, j) * q.q(4).at(i, j);
}
Complex f21_at(const Potential& q, const LaxParameters& lax, int i, int j) {
  return -0.5 * (lax.b2 - lax.b1) * q.q(2).at(i, j) * q.q(3).at(i, j);
}

}  // namespace

AuxiliaryFields compute_aux(const Potential& q, const LaxParameters& lax) {
  const Grid2D& g = q.grid();
  const int n = g.n();
  const double h = g.h();
  AuxiliaryFields aux{ComplexField(g), ComplexField(g), 0.0};
  // Trapezoidal march up the xi = x+y characteristics; the bottom row and
  // the right edge sit below/right of the support, where v = 0.
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool has_prev = i + 1 < n;
      const Complex v12p = has_prev ? aux.v12.at(i + 1, j - 1) : Complex(0, 0);
      const Complex v21p = has_prev ? aux.v21.at(i + 1, j - 1) : Complex(0, 0);
      const Complex f12p = has_prev ? f12_at(q, lax, i + 1, j - 1) : Complex(0, 0);
      const Complex f21p = has_prev ? f21_at(q, lax, i + 1, j - 1) : Complex(0, 0);
      aux.v12.at(i, j) = v12p + 0.5 * h * (f12p + f12_at(q, lax, i, j));
      aux.v21.at(i, j) = v21p + 0.5 * h * (f21p + f21_at(q, lax, i, j));
    }
  for (int i = 0; i < n; ++i)
    aux.top_max = std::max({aux.top_max, std::abs(aux.v12.at(i, n - 1)),
                            std::abs(aux.v21.at(i, n - 1))});
  return aux;
}

namespace {

void advect_half(Potential& q, const LaxParameters& lax, double tau) {
  // Exact advection: q(t+tau, x, y) = q(t, x - vx tau, y - vy tau) with
  // velocity (k2, k1) for components 1,3 and (k4, k3) for components 2,4.
  q.q(1) = spline_shift_field(q.q(1), -lax.k2 * tau, -lax.k1 * tau);
  q.q(3) = spline_shift_field(q.q(3), -lax.k2 * tau, -lax.k1 * tau);
  q.q(2) = spline_shift_field(q.q(2), -lax.k4 * tau, -lax.k3 * tau);
  q.q(4) = spline_shift_field(q.q(4), -lax.k4 * tau, -lax.k3 * tau);
}

void add_rhs(Potential& dst, const Potential& base, const Potential& q,
             const AuxiliaryFields& aux, double dt) {
  const int n = q.grid().n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex v12 = aux.v12.at(i, j), v21 = aux.v21.at(i, j);
      dst.q(1).at(i, j) = base.q(1).at(i, j) + dt * v12 * q.q(2).at(i, j);
      dst.q(2).at(i, j) = base.q(2).at(i, j) + dt * v21 * q.q(1).at(i, j);
      dst.q(3).at(i, j) = base.q(3).at(i, j) - dt * v21 * q.q(4).at(i, j);
      dst.q(4).at(i, j) = base.q(4).at(i, j) - dt * v12 * q.q(3).at(i, j);
    }
}

}  // namespace

Potential threewave_step(const Potential& q, const LaxParameters& lax, double dt,
                         double* aux_top_max) {
  const double grow = lax.max_abs_k() * std::abs(dt);
  Potential cur = q;
  cur.set_support(q.support().grown(0.5 * grow));
  advect_half(cur, lax, 0.5 * dt);

  const AuxiliaryFields aux0 = compute_aux(cur, lax);
  Potential mid = cur;
  add_rhs(mid, cur, cur, aux0, 0.5 * dt);
  const AuxiliaryFields aux_mid = compute_aux(mid, lax);
  Potential next = cur;
  add_rhs(next, cur, mid, aux_mid, dt);
  if (aux_top_max)
    *aux_top_max = std::max(aux0.top_max, aux_mid.top_max);

  next.set_support(q.support().grown(grow));
  advect_half(next, lax, 0.5 * dt);
  next.enforce_support();
  return next;
}

ThreeWaveResult run_threewave(const Potential& q0, const LaxParameters& lax,
                              double t_final, const ThreeWaveOptions& opts) {
  if (t_final < 0) throw UsageError("t_final must be nonnegative");
  const Grid2D& g = q0.grid();
  const double h = g.h();
  const double vmax = lax.max_abs_k();

  ThreeWaveResult out{q0, {}, {}};
  if (t_final == 0) return out;

  const double dt_max = opts.cfl * h / std::max(vmax, 1e-12);
  const int nsteps = std::max(1, static_cast<int>(std::ceil(t_final / dt_max)));
  const double dt = t_final / nsteps;
  out.diag.dt = dt;

  const double blowup_scale = 1e6 * std::max(1.0, q0.max_abs());
  const double margin = opts.edge_margin * h;

  for (int s = 1; s <= nsteps; ++s) {
    const Box next_support = out.pot.support().grown(vmax * dt);
    if (next_support.x_lo < g.x_min() + margin || next_support.x_hi > g.x_max() - margin ||
        next_support.y_lo < g.y_min() + margin || next_support.y_hi > g.y_max() - margin) {
      std::ostringstream os;
      os << "window overflow at t = " << (s - 1) * dt
         << ": solution support reached the grid edge";
      throw NumericalError(NumericalError::Kind::WindowOverflow, os.str());
    }
    double top_max = 0;
    out.pot = threewave_step(out.pot, lax, dt, &top_max);
    out.diag.aux_top_max = std::max(out.diag.aux_top_max, top_max);
    out.diag.steps = s;

    if (out.pot.max_abs() > blowup_scale)
      throw NumericalError(NumericalError::Kind::BlowUp,
                           "solution magnitude grew beyond the blow-up guard");

    double mass = 0;
    for (int c = 1; c <= 4; ++c) {
      const double l2 = out.pot.q(c).l2();
      mass += l2 * l2;
    }
    out.diag.mass_history.emplace_back(s * dt, mass);
    if (opts.snapshot_stride > 0 && (s % opts.snapshot_stride == 0 || s == nsteps))
      out.snapshots.emplace_back(s * dt, out.pot);
  }
  return out;
}

}  // namespace ist
