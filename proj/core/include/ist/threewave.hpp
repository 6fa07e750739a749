#pragma once

#include <utility>

#include "ist/fields.hpp"

namespace ist {

/// Auxiliary coupling fields, obtained by integrating
///   (d_y - d_x) v12 = -((b1-b2)/2) q1 q4,
///   (d_y - d_x) v21 = -((b2-b1)/2) q2 q3
/// along the xi = x+y characteristics from the bottom boundary (v = 0
/// below the support).  top_max records max |v| on the top row; it
/// vanishes when the zero-mean compatibility condition on q holds and is
/// reported as a diagnostic otherwise.
struct AuxiliaryFields {
  ComplexField v12, v21;
  double top_max = 0;
};

AuxiliaryFields compute_aux(const Potential& q, const LaxParameters& lax);

struct ThreeWaveOptions {
  /// Time step ceiling dt <= cfl * h / max|k|.
  double cfl = 0.9;
  bool strict = false;
  /// Support must stay this many cells clear of the grid edge.
  int edge_margin = 2;
  /// Record (t, potential) snapshots every `snapshot_stride` steps
  /// (0 disables).
  int snapshot_stride = 0;
};

struct ThreeWaveDiagnostics {
  int steps = 0;
  double dt = 0;
  double aux_top_max = 0;
  /// (t, sum of squared component L2 norms) per accepted step.
  std::vector<std::pair<double, double>> mass_history;
};

struct ThreeWaveResult {
  Potential pot;
  ThreeWaveDiagnostics diag;
  std::vector<std::pair<double, Potential>> snapshots;
};

/// One Strang step of the quasilinear system
///   (d_t + k1 d_y + k2 d_x) q1 =  v12 q2,
///   (d_t + k3 d_y + k4 d_x) q2 =  v21 q1,
///   (d_t + k1 d_y + k2 d_x) q3 = -v21 q4,
///   (d_t + k3 d_y + k4 d_x) q4 = -v12 q3:
/// half advection (exact characteristic shift, spline resample), explicit
/// midpoint source step with the aux fields recomputed at the midpoint,
/// half advection.  Second order in dt and h.
Potential threewave_step(const Potential& q, const LaxParameters& lax, double dt,
                         double* aux_top_max = nullptr);

/// Integrates to t_final with uniform steps under the CFL ceiling,
/// tracking the growing support box.  Throws window-overflow when the
/// support reaches the grid margin, blow-up on non-finite data.
ThreeWaveResult run_threewave(const Potential& q0, const LaxParameters& lax,
                              double t_final, const ThreeWaveOptions& opts = {});

}  // namespace ist
