#pragma once

#include "ist/scattering.hpp"

namespace ist {

struct EvolutionOptions {
  /// In strict mode a window overflow (non-negligible data shifted out of
  /// the kernel window) is a hard error; otherwise it only clears
  /// edge_decay_ok on the result.
  bool strict = false;
  /// Relative threshold (against the kernel scale) for the overflow check.
  double edge_tol = ScatteringData::kDefaultEdgeTol;
};

/// Time evolution of the scattering data: each kernel translates rigidly
/// at constant velocity set by the Lax parameters,
///   F13(y,tau;t) = F13(y + b1 t, tau - b3 t; 0),
///   F23(y,tau;t) = F23(y + b2 t, tau - b3 t; 0),
///   G31(y,tau;t) = G31(y - b3 t, tau + b1 t; 0),
///   G32(y,tau;t) = G32(y - b3 t, tau + b2 t; 0).
/// Off-node offsets are resampled with a not-a-knot cubic spline; node
/// aligned offsets (shift/h integer) reduce to exact copies.  dt == 0
/// returns the input unchanged, bit for bit.
ScatteringData evolve(const ScatteringData& scat, const LaxParameters& lax, double dt,
                      const EvolutionOptions& opts = {});

/// Centered-difference residual of the four transport equations,
///   d/dt F13 = b1 d_1 F13 - b3 d_2 F13   (and cyclically for the rest),
/// with the time derivative taken through evolve(+-dt).  Discrete L2
/// norms per kernel; O(h^2) + O(dt^2) for smooth data.
struct TransportResidual {
  double f13 = 0, f23 = 0, g31 = 0, g32 = 0;
  double max() const;
};

TransportResidual transport_residual(const ScatteringData& scat,
                                     const LaxParameters& lax, double dt,
                                     const EvolutionOptions& opts = {});

}  // namespace ist
