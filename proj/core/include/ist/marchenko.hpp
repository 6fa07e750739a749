#pragma once

#include "ist/scattering.hpp"

namespace ist {

struct MarchenkoOptions {
  /// Inversion-breakdown threshold on the 1-norm condition estimate.
  double cond_limit = 1e12;
  /// Nystrom nodes whose kernel rows stay below activity_rel times the
  /// global kernel scale are decoupled from the dense system (their
  /// contribution is below roundoff of the quadrature).
  double activity_rel = 1e-13;
  bool collect_node_diagnostics = false;
};

/// One tau-row of a Marchenko solution at a fixed (x,y).  Unknowns are
/// tabulated at shifted abscissae: the physical third argument is
/// axis.node(k) + tau_offset (tau_offset = +x for A rows, -x for B rows),
/// which places every quadrature node and both integration limits exactly
/// on the kernel axis.
struct MarchenkoRow {
  CharAxis axis;
  double x = 0, y = 0;
  double tau_offset = 0;
  std::vector<Complex> c1, c2;
  double condition = 0;
};

struct ReconstructionDiagnostics {
  double cond_max = 0;
  double cond_mean = 0;
  long nodes = 0;
  /// Optional per-node rows "i j cond" (collect_node_diagnostics).
  std::vector<std::array<double, 3>> per_node;
};

struct ReconstructionResult {
  Potential pot;
  ReconstructionDiagnostics diag;
};

/// Scalar kernel of the A equation in shifted coordinates:
/// k(z',tau') = integral_{s <= y+x} Gt(z', s) Ft(s, tau') ds with
/// Gt.Ft = G31 F13 + G32 F23, trapezoidal on the kernel axis.
/// (x,y) must lie on kernel-aligned abscissae.
KernelTable assemble_marchenko_kernel(const ScatteringData& scat, double x, double y);

/// Dense Nystrom solve of the first Marchenko equation at (x,y); both
/// vector components share one LU.
MarchenkoRow solve_marchenko_A(const ScatteringData& scat, double x, double y,
                               const MarchenkoOptions& opts = {});

/// Second Marchenko equation at (x,y).  The two covector components
/// couple through a rank-structured kernel; the solve reduces exactly to
/// a scalar system with the same Nystrom matrix as the A equation.
MarchenkoRow solve_marchenko_B(const ScatteringData& scat, double x, double y,
                               const MarchenkoOptions& opts = {});

/// Sweeps the grid, solving both equations at every node, and reads the
/// potential off the diagonals:
/// (q1,q2) = 2 A(x,y,y-x), (q3,q4) = -2 B(x,y,y+x).
ReconstructionResult reconstruct_potential(const ScatteringData& scat,
                                           const Grid2D& grid,
                                           const MarchenkoOptions& opts = {});

}  // namespace ist
