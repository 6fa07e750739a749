#include "ist/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ist {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string StageTimings::to_text() const {
  std::ostringstream os;
  for (const auto& [name, s] : seconds) os << name << "_seconds = " << fmt(s) << "\n";
  return os.str();
}

IstResult ist_solve(const Potential& q0, const LaxParameters& lax, double t_final,
                    bool strict, const MarchenkoOptions& mopts) {
  double t = now_seconds();
  ScatteringData scat0 = forward_scattering(q0, strict);
  StageTimings timings;
  timings.add("forward", now_seconds() - t);

  t = now_seconds();
  EvolutionOptions eopts;
  eopts.strict = strict;
  ScatteringData scat_t = evolve(scat0, lax, t_final, eopts);
  timings.add("evolve", now_seconds() - t);

  t = now_seconds();
  ReconstructionResult recon = reconstruct_potential(scat_t, q0.grid(), mopts);
  timings.add("invert", now_seconds() - t);

  IstResult out{std::move(scat0), std::move(scat_t), std::move(recon), {}};
  out.timings = std::move(timings);
  return out;
}

ComparisonReport compare_potentials(const Potential& test, const Potential& reference,
                                    double tolerance) {
  if (!(test.grid() == reference.grid()))
    throw UsageError("compared potentials live on different grids");
  const int n = test.grid().n();
  const double h = test.grid().h();

  ComparisonReport rep;
  rep.tolerance = tolerance;
  double num_all = 0, den_all = 0;
  for (int c = 1; c <= 4; ++c) {
    double num = 0, den = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Complex d = test.q(c).at(i, j) - reference.q(c).at(i, j);
        num += std::norm(d);
        den += std::norm(reference.q(c).at(i, j));
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(d));
      }
    rep.rel_l2[c - 1] = den > 0 ? std::sqrt(num / den) : (num > 0 ? HUGE_VAL : 0.0);
    num_all += num;
    den_all += den;
  }
  if (den_all > 0)
    rep.rel_l2_all = std::sqrt(num_all / den_all);
  else
    rep.rel_l2_all = std::sqrt(num_all) * h;  // absolute, zero reference
  rep.pass = rep.rel_l2_all <= tolerance && std::isfinite(rep.rel_l2_all);
  return rep;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream os;
  for (int c = 0; c < 4; ++c)
    os << "rel_l2_q" << (c + 1) << " = " << fmt(rel_l2[c]) << "\n";
  os << "rel_l2_all = " << fmt(rel_l2_all) << "\n";
  os << "max_abs_diff = " << fmt(max_abs_diff) << "\n";
  os << "tolerance = " << fmt(tolerance) << "\n";
  os << "pass = " << (pass ? "true" : "false") << "\n";
  return os.str();
}

CompareRun run_compare(const ScenarioConfig& cfg, const MarchenkoOptions& mopts) {
  cfg.validate();
  const Potential q0 = cfg.make_potential();
  const LaxParameters lax = cfg.make_lax();

  StageTimings timings;
  double t = now_seconds();
  IstResult ist = ist_solve(q0, lax, cfg.t_final, cfg.strict, mopts);
  timings.add("ist_total", now_seconds() - t);

  t = now_seconds();
  ThreeWaveOptions topts;
  topts.strict = cfg.strict;
  ThreeWaveResult direct = run_threewave(q0, lax, cfg.t_final, topts);
  timings.add("direct_total", now_seconds() - t);

  ComparisonReport report =
      compare_potentials(ist.recon.pot, direct.pot, cfg.tolerance);
  CompareRun out{std::move(ist), std::move(direct), report, {}};
  out.timings = std::move(timings);
  return out;
}

double estimate_order(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2) throw UsageError("order estimate needs at least two sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double nr = static_cast<double>(rows.size());
  for (const ConvergenceRow& r : rows) {
    if (!(r.err > 0)) throw UsageError("order estimate needs positive errors");
    const double x = std::log(1.0 / (r.n - 1));  // log h up to a constant
    const double y = std::log(r.err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (nr * sxy - sx * sy) / (nr * sxx - sx * sx);
}

std::string ConvergenceReport::to_text() const {
  std::ostringstream os;
  for (const ConvergenceRow& r : rows)
    os << "n = " << r.n << "  rel_l2 = " << fmt(r.err) << "\n";
  os << "order = " << fmt(order) << "\n";
  return os.str();
}

ConvergenceReport roundtrip_convergence(const ScenarioConfig& base,
                                        const std::vector<int>& sizes) {
  ConvergenceReport rep;
  for (int n : sizes) {
    ScenarioConfig cfg = base;
    cfg.n = n;
    cfg.validate();
    const Potential q0 = cfg.make_potential();
    const ScatteringData scat = forward_scattering(q0, cfg.strict);
    const ReconstructionResult rec = reconstruct_potential(scat, q0.grid());
    const ComparisonReport cr = compare_potentials(rec.pot, q0, 1.0);
    rep.rows.push_back({n, cr.rel_l2_all});
  }
  rep.order = estimate_order(rep.rows);
  return rep;
}

std::string LaxReport::to_text() const {
  std::ostringstream os;
  os << "constraint_defect = " << fmt(constraint_defect) << "\n";
  os << "commutator_l2 = " << fmt(commutator.l2) << "\n";
  os << "commutator_max = " << fmt(commutator.max) << "\n";
  os << "lemma1_lhs_l2 = " << fmt(lemma1.lhs_l2) << "\n";
  os << "lemma1_rhs_l2 = " << fmt(lemma1.rhs_l2) << "\n";
  os << "lemma1_diff_l2 = " << fmt(lemma1.diff_l2) << "\n";
  os << "lemma1_term_scale = " << fmt(lemma1.term_scale) << "\n";
  return os.str();
}

LaxReport verify_lax(const ScenarioConfig& cfg, double dt) {
  cfg.validate();
  const Potential q0 = cfg.make_potential();
  const LaxParameters lax = cfg.make_lax();
  const Grid2D grid = q0.grid();
  if (dt <= 0) dt = grid.h();
  const double tc = std::max(cfg.t_final, dt);

  const Potential qm = run_threewave(q0, lax, tc - dt).pot;
  const Potential qc = run_threewave(q0, lax, tc).pot;
  const Potential qp = run_threewave(q0, lax, tc + dt).pot;

  LaxReport rep;
  rep.constraint_defect = check_constraint(qc, lax);

  WaveField probe(grid);
  const double w = cfg.extent / 3.0;
  for (int j = 0; j < grid.n(); ++j)
    for (int i = 0; i < grid.n(); ++i) {
      const double x = grid.x(i), y = grid.y(j);
      const double e = std::exp(-(x * x + y * y) / (2.0 * w * w));
      probe.psi1.at(i, j) = e;
      probe.psi2.at(i, j) = 0.5 * e;
      probe.psi3.at(i, j) = Complex(0.25, 0.25) * e;
    }
  rep.commutator = commutator_residual(qm, qc, qp, dt, lax, probe);

  AsymptoticProfile a_minus{CharAxis(grid)};
  const double s = cfg.extent / 2.0;
  for (int k = 0; k < a_minus.axis.m(); ++k) {
    const double c = a_minus.axis.node(k);
    const double e = std::exp(-c * c / (2.0 * s * s));
    a_minus.a1[k] = e;
    a_minus.a2[k] = Complex(0.3, 0.4) * e;
    a_minus.a3[k] = 0.7 * e;
  }
  rep.lemma1 = lemma1_residual(qm, qc, qp, dt, lax, a_minus);
  return rep;
}

}  // namespace ist
