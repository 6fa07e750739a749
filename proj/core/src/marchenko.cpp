#include "ist/marchenko.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>

#include "ist/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ist {

namespace {

int axis_index(const CharAxis& ax, double c, const char* what) {
  const double f = (c - ax.lo()) / ax.h();
  const int k = static_cast<int>(std::lround(f));
  if (std::abs(f - k) > 1e-9 * std::max(1.0, std::abs(f)) || k < 0 || k >= ax.m()) {
    std::ostringstream os;
    os << what << " = " << c << " does not land on a kernel node";
    throw UsageError(os.str());
  }
  return k;
}

/// Row-activity masks.  A node is active when its kernel row rises above
/// activity_rel times the global kernel scale; rows below that are
/// indistinguishable from zero at quadrature accuracy, so the dense
/// system can drop them.
struct Activity {
  std::vector<char> g_row, f_row;
};

Activity compute_activity(const ScatteringData& scat, double rel) {
  const int m = scat.axis.m();
  const double tol = rel * scat.max_abs();
  Activity act;
  act.g_row.assign(m, 0);
  act.f_row.assign(m, 0);
  for (int a = 0; a < m; ++a) {
    double gmax = 0, fmax = 0;
    for (int b = 0; b < m; ++b) {
      gmax = std::max({gmax, std::abs(scat.G31.at(a, b)), std::abs(scat.G32.at(a, b))});
      fmax = std::max({fmax, std::abs(scat.F13.at(a, b)), std::abs(scat.F23.at(a, b))});
    }
    act.g_row[a] = gmax > tol;
    act.f_row[a] = fmax > tol;
  }
  return act;
}

/// Running s-integral K(z', tau') = int_{s <= node(cutoff)} Gt(z',s) Ft(s,tau') ds,
/// advanced one trapezoid slab at a time so a y-ascending sweep costs
/// O(m^2) per step.  The one-shot path advances through the identical
/// accumulation sequence, so both agree bitwise.
struct PrefixKernel {
  const ScatteringData* scat;
  int m;
  double h;
  std::vector<Complex> K;  // K[a*m + b] = K(node a, node b)
  int cutoff = 0;

  explicit PrefixKernel(const ScatteringData& s)
      : scat(&s), m(s.axis.m()), h(s.axis.h()), K(static_cast<size_t>(m) * m) {}

  void advance_to(int p) {
    for (int q = cutoff + 1; q <= p; ++q) {
      const double w = 0.5 * h;
      const Complex* F1o = &scat->F13.at(q - 1, 0);
      const Complex* F2o = &scat->F23.at(q - 1, 0);
      const Complex* F1n = &scat->F13.at(q, 0);
      const Complex* F2n = &scat->F23.at(q, 0);
      for (int a = 0; a < m; ++a) {
        const Complex g1o = scat->G31.at(a, q - 1), g2o = scat->G32.at(a, q - 1);
        const Complex g1n = scat->G31.at(a, q), g2n = scat->G32.at(a, q);
        if (g1o == Complex(0, 0) && g2o == Complex(0, 0) && g1n == Complex(0, 0) &&
            g2n == Complex(0, 0))
          continue;
        Complex* Ka = &K[static_cast<size_t>(a) * m];
        for (int b = 0; b < m; ++b)
          Ka[b] += w * (g1o * F1o[b] + g2o * F2o[b] + g1n * F1n[b] + g2n * F2n[b]);
      }
    }
    cutoff = p;
  }

  Complex at(int a, int b) const { return K[static_cast<size_t>(a) * m + b]; }
};

double trap_weight(int a, int lo, int hi, double h) {
  if (lo == hi) return 0.0;
  return (a == lo || a == hi) ? 0.5 * h : h;
}

struct NodeSolution {
  Complex A1, A2;  // first-equation components at tau' = y - x
  Complex B1, B2;  // second-equation components at tau' = y + x
  double cond = 1.0;
  std::vector<int> idx;                    // active node indices (first is y-x)
  std::vector<Complex> sol;                // [A1 | A2 | beta] on the active set
};

/// Dense solve of both Marchenko equations at one grid node, in shifted
/// coordinates.  The second equation's cross coupling reduces exactly to
/// a scalar right-hand side (beta) against the same Nystrom matrix, so
/// one LU serves three right-hand sides.
NodeSolution solve_node(const ScatteringData& scat, const Activity& act,
                        const PrefixKernel& pk, int iy_bar, int iy_low,
                        const MarchenkoOptions& opts, bool need_B, bool keep_sol) {
  const int m = scat.axis.m();
  const double h = scat.axis.h();

  NodeSolution out;
  out.idx.push_back(iy_low);
  for (int a = iy_low + 1; a < m; ++a)
    if (act.g_row[a]) out.idx.push_back(a);
  const int na = static_cast<int>(out.idx.size());

  std::vector<Complex> M(static_cast<size_t>(na) * na);
  for (int c = 0; c < na; ++c) {
    const double wc = trap_weight(out.idx[c], iy_low, m - 1, h);
    for (int r = 0; r < na; ++r)
      M[static_cast<size_t>(c) * na + r] =
          (r == c ? Complex(1, 0) : Complex(0, 0)) - wc * pk.at(out.idx[c], out.idx[r]);
  }

  const int nrhs = need_B ? 3 : 2;
  std::vector<Complex> rhs(static_cast<size_t>(na) * nrhs);
  for (int r = 0; r < na; ++r) {
    rhs[r] = scat.F13.at(iy_bar, out.idx[r]);
    rhs[na + r] = scat.F23.at(iy_bar, out.idx[r]);
  }
  if (need_B) {
    for (int r = 0; r < na; ++r) {
      Complex s(0, 0);
      for (int z = 0; z <= iy_bar; ++z) {
        if (!act.f_row[z]) continue;
        const double wz = trap_weight(z, 0, iy_bar, h);
        s += wz * (scat.G31.at(iy_low, z) * scat.F13.at(z, out.idx[r]) +
                   scat.G32.at(iy_low, z) * scat.F23.at(z, out.idx[r]));
      }
      rhs[2 * static_cast<size_t>(na) + r] = s;
    }
  }

  DenseLU lu(std::move(M), na);
  out.cond = lu.condition_estimate();
  if (lu.singular() || out.cond > opts.cond_limit) {
    std::ostringstream os;
    os << "inversion breakdown: condition estimate " << out.cond << " exceeds "
       << opts.cond_limit;
    throw NumericalError(NumericalError::Kind::InversionBreakdown, os.str());
  }
  lu.solve_in_place(rhs.data(), nrhs);

  out.A1 = rhs[0];
  out.A2 = rhs[na];
  if (need_B) {
    const Complex* beta = &rhs[2 * static_cast<size_t>(na)];
    Complex b1 = scat.G31.at(iy_low, iy_bar);
    Complex b2 = scat.G32.at(iy_low, iy_bar);
    for (int r = 0; r < na; ++r) {
      const double wr = trap_weight(out.idx[r], iy_low, m - 1, h);
      b1 += wr * beta[r] * scat.G31.at(out.idx[r], iy_bar);
      b2 += wr * beta[r] * scat.G32.at(out.idx[r], iy_bar);
    }
    out.B1 = b1;
    out.B2 = b2;
  }
  if (keep_sol) out.sol = std::move(rhs);
  return out;
}

void check_reconstruction_inputs(const ScatteringData& scat, const Grid2D& grid) {
  if (!grid.centered_square())
    throw UsageError("reconstruction requires a centered square grid");
  if (!(scat.axis == CharAxis(grid)))
    throw UsageError("kernel axis does not match the grid's characteristic axis");
  if (!scat.F13.all_finite() || !scat.F23.all_finite() || !scat.G31.all_finite() ||
      !scat.G32.all_finite())
    throw NumericalError(NumericalError::Kind::BlowUp,
                         "non-finite kernel data in reconstruction input");
}

}  // namespace

KernelTable assemble_marchenko_kernel(const ScatteringData& scat, double x, double y) {
  const int iy_bar = axis_index(scat.axis, y + x, "y+x");
  PrefixKernel pk(scat);
  pk.advance_to(iy_bar);
  KernelTable k(scat.axis);
  k.data() = std::move(pk.K);
  return k;
}

MarchenkoRow solve_marchenko_A(const ScatteringData& scat, double x, double y,
                               const MarchenkoOptions& opts) {
  const int iy_bar = axis_index(scat.axis, y + x, "y+x");
  const int iy_low = axis_index(scat.axis, y - x, "y-x");
  const int m = scat.axis.m();
  const double h = scat.axis.h();
  const Activity act = compute_activity(scat, opts.activity_rel);
  PrefixKernel pk(scat);
  pk.advance_to(iy_bar);
  NodeSolution ns = solve_node(scat, act, pk, iy_bar, iy_low, opts, false, true);

  MarchenkoRow row;
  row.axis = scat.axis;
  row.x = x;
  row.y = y;
  row.tau_offset = x;
  row.condition = ns.cond;
  row.c1.assign(m, Complex(0, 0));
  row.c2.assign(m, Complex(0, 0));
  const int na = static_cast<int>(ns.idx.size());
  // Off-system nodes follow by substituting the solved values back into
  // the equation at their tau'.
  for (int b = 0; b < m; ++b) {
    Complex v1 = scat.F13.at(iy_bar, b);
    Complex v2 = scat.F23.at(iy_bar, b);
    for (int c = 0; c < na; ++c) {
      const double wc = trap_weight(ns.idx[c], iy_low, m - 1, h);
      const Complex k = pk.at(ns.idx[c], b);
      v1 += wc * ns.sol[c] * k;
      v2 += wc * ns.sol[na + c] * k;
    }
    row.c1[b] = v1;
    row.c2[b] = v2;
  }
  for (int c = 0; c < na; ++c) {
    row.c1[ns.idx[c]] = ns.sol[c];
    row.c2[ns.idx[c]] = ns.sol[na + c];
  }
  return row;
}

MarchenkoRow solve_marchenko_B(const ScatteringData& scat, double x, double y,
                               const MarchenkoOptions& opts) {
  const int iy_bar = axis_index(scat.axis, y + x, "y+x");
  const int iy_low = axis_index(scat.axis, y - x, "y-x");
  const int m = scat.axis.m();
  const double h = scat.axis.h();
  const Activity act = compute_activity(scat, opts.activity_rel);
  PrefixKernel pk(scat);
  pk.advance_to(iy_bar);
  NodeSolution ns = solve_node(scat, act, pk, iy_bar, iy_low, opts, true, true);

  MarchenkoRow row;
  row.axis = scat.axis;
  row.x = x;
  row.y = y;
  row.tau_offset = -x;
  row.condition = ns.cond;
  row.c1.assign(m, Complex(0, 0));
  row.c2.assign(m, Complex(0, 0));
  const int na = static_cast<int>(ns.idx.size());
  const Complex* beta = &ns.sol[2 * static_cast<size_t>(na)];
  for (int b = 0; b < m; ++b) {
    Complex v1 = scat.G31.at(iy_low, b);
    Complex v2 = scat.G32.at(iy_low, b);
    for (int c = 0; c < na; ++c) {
      const double wc = trap_weight(ns.idx[c], iy_low, m - 1, h);
      v1 += wc * beta[c] * scat.G31.at(ns.idx[c], b);
      v2 += wc * beta[c] * scat.G32.at(ns.idx[c], b);
    }
    row.c1[b] = v1;
    row.c2[b] = v2;
  }
  return row;
}

ReconstructionResult reconstruct_potential(const ScatteringData& scat,
                                           const Grid2D& grid,
                                           const MarchenkoOptions& opts) {
  check_reconstruction_inputs(scat, grid);
  const int n = grid.n();
  const Activity act = compute_activity(scat, opts.activity_rel);

  Potential pot(grid, Box{grid.x_min(), grid.x_max(), grid.y_min(), grid.y_max()});
  std::vector<double> cond(static_cast<size_t>(n) * n, 0.0);
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        PrefixKernel local(scat);
        for (int j = 0; j < n; ++j) {
          const int iy_bar = i + j;
          const int iy_low = (n - 1) + (j - i);
          local.advance_to(iy_bar);
          NodeSolution ns =
              solve_node(scat, act, local, iy_bar, iy_low, opts, true, false);
          pot.q(1).at(i, j) = 2.0 * ns.A1;
          pot.q(2).at(i, j) = 2.0 * ns.A2;
          pot.q(3).at(i, j) = -2.0 * ns.B1;
          pot.q(4).at(i, j) = -2.0 * ns.B2;
          cond[static_cast<size_t>(i) * n + j] = ns.cond;
        }
      } catch (...) {
        failed.store(true, std::memory_order_relaxed);
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  pot.enforce_support();

  ReconstructionResult out{std::move(pot), {}};
  double sum = 0;
  for (size_t k = 0; k < cond.size(); ++k) {
    out.diag.cond_max = std::max(out.diag.cond_max, cond[k]);
    sum += cond[k];
  }
  out.diag.nodes = static_cast<long>(cond.size());
  out.diag.cond_mean = sum / static_cast<double>(cond.size());
  if (opts.collect_node_diagnostics) {
    out.diag.per_node.reserve(cond.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.diag.per_node.push_back({static_cast<double>(i), static_cast<double>(j),
                                     cond[static_cast<size_t>(i) * n + j]});
  }
  return out;
}

}  // namespace ist
