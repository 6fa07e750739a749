#include "ist/scattering.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ist {

double KernelTable::max_abs() const {
  double m = 0;
  for (const Complex& x : v_) m = std::max(m, std::abs(x));
  return m;
}

double KernelTable::l2() const {
  double s = 0;
  for (const Complex& x : v_) s += std::norm(x);
  return std::sqrt(s) * axis_.h();
}

bool KernelTable::all_finite() const {
  for (const Complex& x : v_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double KernelTable::edge_max_abs(int band) const {
  const int mm = m();
  double r = 0;
  for (int a = 0; a < mm; ++a)
    for (int b = 0; b < mm; ++b)
      if (a < band || a >= mm - band || b < band || b >= mm - band)
        r = std::max(r, std::abs(at(a, b)));
  return r;
}

double ScatteringData::max_abs() const {
  return std::max({F13.max_abs(), F23.max_abs(), G31.max_abs(), G32.max_abs()});
}

double ScatteringData::edge_max_abs(int band) const {
  return std::max({F13.edge_max_abs(band), F23.edge_max_abs(band),
                   G31.edge_max_abs(band), G32.edge_max_abs(band)});
}

AsymptoticProfile ScatteringOperator::apply(const AsymptoticProfile& a) const {
  if (!(a.axis == axis))
    throw NumericalError(NumericalError::Kind::Mismatch, "apply: axis mismatch");
  const int mm = m();
  const double h = axis.h();
  AsymptoticProfile out(axis);
  const std::vector<Complex>* in[3] = {&a.a1, &a.a2, &a.a3};
  std::vector<Complex>* res[3] = {&out.a1, &out.a2, &out.a3};
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < mm; ++i) {
      Complex acc(0, 0);
      for (int d = 0; d < 3; ++d) {
        const Complex* row = &at(c + 1, i, d + 1, 0);
        const std::vector<Complex>& src = *in[d];
        for (int k = 0; k < mm; ++k) acc += row[k] * src[k];
      }
      (*res[c])[i] = acc * h;
    }
  return out;
}

KernelTable ScatteringOperator::kernel_block(int c_out, int c_in) const {
  KernelTable tab(axis);
  const double inv_h = 1.0 / axis.h();
  for (int a = 0; a < m(); ++a)
    for (int b = 0; b < m(); ++b) {
      Complex v = at(c_out, a, c_in, b);
      if (c_out == c_in && a == b) v -= inv_h;
      tab.at(a, b) = v;
    }
  return tab;
}

namespace {

void check_scattering_preconditions(const Potential& pot) {
  const Grid2D& g = pot.grid();
  if (!g.centered_square())
    throw UsageError(
        "scattering requires a centered square grid [-L,L]x[-L,L] "
        "(shared characteristic axis)");
  const Box& s = pot.support();
  const double margin = 2 * g.h();
  if (s.x_lo < g.x_min() + margin || s.x_hi > g.x_max() - margin ||
      s.y_lo < g.y_min() + margin || s.y_hi > g.y_max() - margin)
    throw NumericalError(
        NumericalError::Kind::Domain,
        "potential support box too close to the grid edge; characteristics must "
        "enter the support through zero-potential regions");
}

// One trapezoidal characteristic march.  dir = +1: forward in y from
// a_minus; dir = -1: backward from a_plus.  Writes the optional field and
// returns the outgoing profile.
AsymptoticProfile march(const Potential& pot, const AsymptoticProfile& a_in, int dir,
                        WaveField* field) {
  const Grid2D& g = pot.grid();
  const int n = g.n();
  const double h = g.h();
  const CharAxis axis(g);
  if (!(a_in.axis == axis))
    throw NumericalError(NumericalError::Kind::Mismatch,
                         "march: profile axis does not match the grid");

  const ComplexField& q1 = pot.q(1);
  const ComplexField& q2 = pot.q(2);
  const ComplexField& q3 = pot.q(3);
  const ComplexField& q4 = pot.q(4);

  AsymptoticProfile a_out(axis);
  std::vector<Complex> p1(n), p2(n), p3(n), n1(n), n2(n), n3(n);

  const double c = dir > 0 ? h / 2.0 : -h / 2.0;

  auto store_row = [&](int j) {
    if (field)
      for (int i = 0; i < n; ++i) {
        field->psi1.at(i, j) = p1[i];
        field->psi2.at(i, j) = p2[i];
        field->psi3.at(i, j) = p3[i];
      }
  };
  auto check_row = [&](int j) {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(p1[i].real()) || !std::isfinite(p1[i].imag()) ||
          !std::isfinite(p2[i].real()) || !std::isfinite(p2[i].imag()) ||
          !std::isfinite(p3[i].real()) || !std::isfinite(p3[i].imag()))
        throw NumericalError(NumericalError::Kind::DivergedPropagation,
                             "propagation diverged at row " + std::to_string(j));
  };

  if (dir > 0) {
    // Bottom row: psi = shifted free profile (exact nodal values).
    for (int i = 0; i < n; ++i) {
      p1[i] = a_in.a1[i];
      p2[i] = a_in.a2[i];
      p3[i] = a_in.a3[n - 1 - i];
    }
    store_row(0);
    for (int j = 0; j <= n - 2; ++j) {
      // Side exits finalize as each row completes.
      a_out.a1[j] = p1[0];
      a_out.a2[j] = p2[0];
      a_out.a3[j] = p3[n - 1];
      for (int i = 0; i < n; ++i) {
        const bool on1 = i + 1 < n;
        const Complex f1 = on1 ? p1[i + 1] : a_in.a1[n + j];
        const Complex f2 = on1 ? p2[i + 1] : a_in.a2[n + j];
        const Complex f3 = i - 1 >= 0 ? p3[i - 1] : a_in.a3[n + j];
        Complex r1 = f1, r2 = f2, r3 = f3;
        if (on1) {
          r1 += c * q1.at(i + 1, j) * p3[i + 1];
          r2 += c * q2.at(i + 1, j) * p3[i + 1];
        }
        if (i - 1 >= 0)
          r3 += c * (q3.at(i - 1, j) * p1[i - 1] + q4.at(i - 1, j) * p2[i - 1]);
        const Complex a1n = q1.at(i, j + 1), a2n = q2.at(i, j + 1);
        const Complex a3n = q3.at(i, j + 1), a4n = q4.at(i, j + 1);
        const Complex den = 1.0 - c * c * (a3n * a1n + a4n * a2n);
        const Complex u3 = (r3 + c * (a3n * r1 + a4n * r2)) / den;
        n1[i] = r1 + c * a1n * u3;
        n2[i] = r2 + c * a2n * u3;
        n3[i] = u3;
      }
      p1.swap(n1);
      p2.swap(n2);
      p3.swap(n3);
      check_row(j + 1);
      store_row(j + 1);
    }
    for (int i = 0; i < n; ++i) {
      a_out.a1[n - 1 + i] = p1[i];
      a_out.a2[n - 1 + i] = p2[i];
      a_out.a3[2 * (n - 1) - i] = p3[i];
    }
  } else {
    // Top row from the prescribed a_plus.
    for (int i = 0; i < n; ++i) {
      p1[i] = a_in.a1[n - 1 + i];
      p2[i] = a_in.a2[n - 1 + i];
      p3[i] = a_in.a3[2 * (n - 1) - i];
    }
    store_row(n - 1);
    for (int j = n - 2; j >= 0; --j) {
      a_out.a1[n + j] = p1[n - 1];
      a_out.a2[n + j] = p2[n - 1];
      a_out.a3[n + j] = p3[0];
      for (int i = 0; i < n; ++i) {
        const bool on1 = i - 1 >= 0;
        const Complex f1 = on1 ? p1[i - 1] : a_in.a1[j];
        const Complex f2 = on1 ? p2[i - 1] : a_in.a2[j];
        const Complex f3 = i + 1 < n ? p3[i + 1] : a_in.a3[j];
        Complex r1 = f1, r2 = f2, r3 = f3;
        if (on1) {
          r1 += c * q1.at(i - 1, j + 1) * p3[i - 1];
          r2 += c * q2.at(i - 1, j + 1) * p3[i - 1];
        }
        if (i + 1 < n)
          r3 += c * (q3.at(i + 1, j + 1) * p1[i + 1] + q4.at(i + 1, j + 1) * p2[i + 1]);
        const Complex a1n = q1.at(i, j), a2n = q2.at(i, j);
        const Complex a3n = q3.at(i, j), a4n = q4.at(i, j);
        const Complex den = 1.0 - c * c * (a3n * a1n + a4n * a2n);
        const Complex u3 = (r3 + c * (a3n * r1 + a4n * r2)) / den;
        n1[i] = r1 + c * a1n * u3;
        n2[i] = r2 + c * a2n * u3;
        n3[i] = u3;
      }
      p1.swap(n1);
      p2.swap(n2);
      p3.swap(n3);
      check_row(j);
      store_row(j);
    }
    for (int i = 0; i < n; ++i) {
      a_out.a1[i] = p1[i];
      a_out.a2[i] = p2[i];
      a_out.a3[n - 1 - i] = p3[i];
    }
    // Corner nodes shared by bottom row and side columns (already equal).
  }
  return a_out;
}

ScatteringOperator assemble(const Potential& pot, int m, int dir) {
  check_scattering_preconditions(pot);
  const CharAxis axis(pot.grid());
  if (m != axis.m())
    throw UsageError("assemble: m must equal 2n-1 for the potential grid");

  ScatteringOperator op(axis);
  const size_t dim = static_cast<size_t>(3) * m;

#pragma omp parallel for schedule(static)
  for (int col = 0; col < 3 * m; ++col) {
    const int d = col / m + 1;
    const int k = col % m;
    const AsymptoticProfile basis = AsymptoticProfile::hat(axis, d, k);
    const AsymptoticProfile out = march(pot, basis, dir, nullptr);
    for (int i = 0; i < m; ++i) {
      op.mat[(static_cast<size_t>(0) * m + i) * dim + col] = out.a1[i];
      op.mat[(static_cast<size_t>(1) * m + i) * dim + col] = out.a2[i];
      op.mat[(static_cast<size_t>(2) * m + i) * dim + col] = out.a3[i];
    }
  }
  return op;
}

}  // namespace

PropagationResult propagate(const Potential& pot, const AsymptoticProfile& a_minus) {
  check_scattering_preconditions(pot);
  PropagationResult res{WaveField(pot.grid()), AsymptoticProfile(CharAxis(pot.grid()))};
  res.a_out = march(pot, a_minus, +1, &res.psi);
  return res;
}

PropagationResult propagate_backward(const Potential& pot,
                                     const AsymptoticProfile& a_plus) {
  check_scattering_preconditions(pot);
  PropagationResult res{WaveField(pot.grid()), AsymptoticProfile(CharAxis(pot.grid()))};
  res.a_out = march(pot, a_plus, -1, &res.psi);
  return res;
}

ScatteringOperator assemble_scattering_matrix(const Potential& pot, int m) {
  return assemble(pot, m, +1);
}

ScatteringOperator assemble_inverse_scattering_matrix(const Potential& pot, int m) {
  return assemble(pot, m, -1);
}

namespace {

/// The characteristic march couples only axis nodes of one (row+col)
/// parity, so a raw operator block is a checkerboard: twice the kernel
/// value on the data parity, exact zero in between (unit-mass hats on a
/// half-density sublattice).  Resample to a dense table of plain kernel
/// values: halve the data entries and fill the complementary parity by
/// averaging the adjacent data entries (O(h^2)).
void densify_kernel(KernelTable& t) {
  const int m = t.m();
  int parity = -1;
  double best = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double v = std::abs(t.at(a, b));
      if (v > best) {
        best = v;
        parity = (a + b) & 1;
      }
    }
  if (best == 0) return;
  KernelTable out(t.axis());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (((a + b) & 1) == parity) {
        out.at(a, b) = 0.5 * t.at(a, b);
      } else {
        Complex sum(0, 0);
        int cnt = 0;
        if (a > 0) { sum += t.at(a - 1, b); ++cnt; }
        if (a + 1 < m) { sum += t.at(a + 1, b); ++cnt; }
        if (b > 0) { sum += t.at(a, b - 1); ++cnt; }
        if (b + 1 < m) { sum += t.at(a, b + 1); ++cnt; }
        out.at(a, b) = 0.5 * (sum / static_cast<double>(cnt));
      }
    }
  t = out;
}

}  // namespace

ScatteringData extract_scattering_data(const ScatteringOperator& S,
                                       const ScatteringOperator& S_inv, bool strict,
                                       double edge_tol) {
  if (!(S.axis == S_inv.axis))
    throw NumericalError(NumericalError::Kind::Mismatch,
                         "extract: operators on different axes");
  ScatteringData data(S.axis);
  data.F13 = S.kernel_block(1, 3);
  data.F23 = S.kernel_block(2, 3);
  data.G31 = S_inv.kernel_block(3, 1);
  data.G32 = S_inv.kernel_block(3, 2);
  for (KernelTable* t : {&data.F13, &data.F23, &data.G31, &data.G32})
    densify_kernel(*t);
  for (const KernelTable* t : {&data.F13, &data.F23, &data.G31, &data.G32})
    if (!t->all_finite())
      throw NumericalError(NumericalError::Kind::DivergedPropagation,
                           "extract: non-finite kernel entries");
  const double edge = data.edge_max_abs(2);
  data.edge_decay_ok = edge < edge_tol;
  if (strict && !data.edge_decay_ok)
    throw NumericalError(NumericalError::Kind::EdgeDecay,
                         "scattering kernels do not decay at the table edge (max " +
                             std::to_string(edge) + "); truncation window too small");
  return data;
}

ScatteringData forward_scattering(const Potential& pot, bool strict, double edge_tol) {
  const CharAxis axis(pot.grid());
  const ScatteringOperator S = assemble_scattering_matrix(pot, axis.m());
  const ScatteringOperator S_inv = assemble_inverse_scattering_matrix(pot, axis.m());
  return extract_scattering_data(S, S_inv, strict, edge_tol);
}

}  // namespace ist
