#pragma once

#include "ist/config.hpp"
#include "ist/evolution.hpp"
#include "ist/laxpair.hpp"
#include "ist/marchenko.hpp"
#include "ist/threewave.hpp"

namespace ist {

/// Wall-clock seconds per named stage.  Kept separate from the
/// machine-readable reports so those stay bitwise reproducible.
struct StageTimings {
  std::vector<std::pair<std::string, double>> seconds;

  void add(const std::string& name, double s) { seconds.emplace_back(name, s); }
  std::string to_text() const;
};

struct IstResult {
  ScatteringData scat0;   // forward data of the initial potential
  ScatteringData scat_t;  // transported to t_final
  ReconstructionResult recon;
  StageTimings timings;
};

/// Full solve q(t) via the spectral route: forward map, closed-form
/// kernel transport, dense reconstruction.
IstResult ist_solve(const Potential& q0, const LaxParameters& lax, double t_final,
                    bool strict = false, const MarchenkoOptions& mopts = {});

struct ComparisonReport {
  double rel_l2[4] = {0, 0, 0, 0};  // per component, against the reference
  double rel_l2_all = 0;
  double max_abs_diff = 0;
  double tolerance = 0;
  bool pass = false;

  /// Deterministic key=value rendering (%.17g, no timings).
  std::string to_text() const;
};

/// Relative L2 distance of `test` from `reference`, aggregated over the
/// four components.  Zero reference norm with nonzero difference counts
/// as failure of the absolute tolerance instead.
ComparisonReport compare_potentials(const Potential& test, const Potential& reference,
                                    double tolerance);

struct CompareRun {
  IstResult ist;
  ThreeWaveResult direct;
  ComparisonReport report;
  StageTimings timings;
};

/// Runs both routes to t_final from the configured initial data and
/// compares the results.  Does not throw on tolerance failure; the caller
/// inspects report.pass.
CompareRun run_compare(const ScenarioConfig& cfg, const MarchenkoOptions& mopts = {});

struct ConvergenceRow {
  int n = 0;
  double err = 0;
};

/// Least-squares slope of log(err) against log(h).
double estimate_order(const std::vector<ConvergenceRow>& rows);

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double order = 0;
  std::string to_text() const;
};

/// Forward-then-inverse round trip error at t = 0 for each grid size.
ConvergenceReport roundtrip_convergence(const ScenarioConfig& base,
                                        const std::vector<int>& sizes);

struct LaxReport {
  double constraint_defect = 0;
  ResidualReport commutator;
  Lemma1Report lemma1;
  std::string to_text() const;
};

/// Builds snapshots of the quasilinear evolution around t_final and
/// evaluates the algebraic constraint, the commutator residual against a
/// smooth probe, and the derived-solution consistency check.
LaxReport verify_lax(const ScenarioConfig& cfg, double dt = 0);

}  // namespace ist
