#include "ist/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ist/interp.hpp"

namespace ist {

namespace {

/// Max |entry| over the band of rows (axis 0) or columns (axis 1) that a
/// shift of `shift` pushes past the window edge.
double dropped_band_max(const KernelTable& tab, int axis, double shift) {
  const int m = tab.m();
  const double h = tab.axis().h();
  const int band = std::min(m, static_cast<int>(std::ceil(std::abs(shift) / h + 1e-12)));
  if (band <= 0) return 0.0;
  double mx = 0;
  // shift > 0 samples upward, so data at the low edge loses its preimage.
  const int lo = shift > 0 ? 0 : m - band;
  const int hi = shift > 0 ? band - 1 : m - 1;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const bool in_band = axis == 0 ? (a >= lo && a <= hi) : (b >= lo && b <= hi);
      if (in_band) mx = std::max(mx, std::abs(tab.at(a, b)));
    }
  return mx;
}

KernelTable shift_table(const KernelTable& in, double s_row, double s_col) {
  KernelTable out(in.axis());
  out.data() =
      spline_shift_table(in.data(), in.m(), in.m(), in.axis().h(), s_row, s_col);
  return out;
}

}  // namespace

ScatteringData evolve(const ScatteringData& scat, const LaxParameters& lax, double dt,
                      const EvolutionOptions& opts) {
  if (dt == 0.0) return scat;

  const double s13r = lax.b1 * dt, s13c = -lax.b3 * dt;
  const double s23r = lax.b2 * dt, s23c = -lax.b3 * dt;
  const double s31r = -lax.b3 * dt, s31c = lax.b1 * dt;
  const double s32r = -lax.b3 * dt, s32c = lax.b2 * dt;

  const double scale = std::max(scat.max_abs(), 1e-300);
  double lost = 0;
  lost = std::max(lost, dropped_band_max(scat.F13, 0, s13r));
  lost = std::max(lost, dropped_band_max(scat.F13, 1, s13c));
  lost = std::max(lost, dropped_band_max(scat.F23, 0, s23r));
  lost = std::max(lost, dropped_band_max(scat.F23, 1, s23c));
  lost = std::max(lost, dropped_band_max(scat.G31, 0, s31r));
  lost = std::max(lost, dropped_band_max(scat.G31, 1, s31c));
  lost = std::max(lost, dropped_band_max(scat.G32, 0, s32r));
  lost = std::max(lost, dropped_band_max(scat.G32, 1, s32c));

  ScatteringData out(scat.axis);
  out.t = scat.t + dt;
  out.edge_decay_ok = scat.edge_decay_ok;
  out.F13 = shift_table(scat.F13, s13r, s13c);
  out.F23 = shift_table(scat.F23, s23r, s23c);
  out.G31 = shift_table(scat.G31, s31r, s31c);
  out.G32 = shift_table(scat.G32, s32r, s32c);

  if (lost > opts.edge_tol * scale) {
    out.edge_decay_ok = false;
    if (opts.strict) {
      std::ostringstream os;
      os << "window overflow: kernel magnitude " << lost
         << " leaves the tabulation window under a shift of " << dt << " time units";
      throw NumericalError(NumericalError::Kind::WindowOverflow, os.str());
    }
  }
  if (!out.F13.all_finite() || !out.F23.all_finite() || !out.G31.all_finite() ||
      !out.G32.all_finite())
    throw NumericalError(NumericalError::Kind::BlowUp,
                         "non-finite kernel data after evolution");
  return out;
}

double TransportResidual::max() const {
  return std::max({f13, f23, g31, g32});
}

namespace {

/// || (Tp - Tm)/(2 dt) - v_r d_row T - v_c d_col T ||_2 over interior nodes.
double residual_norm(const KernelTable& t0, const KernelTable& tp,
                     const KernelTable& tm, double dt, double v_row, double v_col) {
  const int m = t0.m();
  const double h = t0.axis().h();
  double acc = 0;
  for (int a = 1; a < m - 1; ++a)
    for (int b = 1; b < m - 1; ++b) {
      const Complex ddt = (tp.at(a, b) - tm.at(a, b)) / (2.0 * dt);
      const Complex dr = (t0.at(a + 1, b) - t0.at(a - 1, b)) / (2.0 * h);
      const Complex dc = (t0.at(a, b + 1) - t0.at(a, b - 1)) / (2.0 * h);
      const Complex r = ddt - v_row * dr - v_col * dc;
      acc += std::norm(r);
    }
  return std::sqrt(acc) * h;
}

}  // namespace

TransportResidual transport_residual(const ScatteringData& scat,
                                     const LaxParameters& lax, double dt,
                                     const EvolutionOptions& opts) {
  if (dt <= 0) throw UsageError("transport_residual requires dt > 0");
  const ScatteringData sp = evolve(scat, lax, dt, opts);
  const ScatteringData sm = evolve(scat, lax, -dt, opts);
  TransportResidual r;
  r.f13 = residual_norm(scat.F13, sp.F13, sm.F13, dt, lax.b1, -lax.b3);
  r.f23 = residual_norm(scat.F23, sp.F23, sm.F23, dt, lax.b2, -lax.b3);
  r.g31 = residual_norm(scat.G31, sp.G31, sm.G31, dt, -lax.b3, lax.b1);
  r.g32 = residual_norm(scat.G32, sp.G32, sm.G32, dt, -lax.b3, lax.b2);
  return r;
}

}  // namespace ist
