#include "ist/interp.hpp"

#include <algorithm>
#include <cmath>

namespace ist {

namespace {

// Cubic convolution weights (Keys, a = -1/2).
inline void keys_weights(double t, double w[4]) {
  w[0] = ((-0.5 * t + 1.0) * t - 0.5) * t;
  w[1] = (1.5 * t - 2.5) * t * t + 1.0;
  w[2] = ((-1.5 * t + 2.0) * t + 0.5) * t;
  w[3] = (0.5 * t - 0.5) * t * t;
}

inline Complex sample_zero_ext(const ComplexField& f, int i, int j) {
  const int n = f.n();
  if (i < 0 || i >= n || j < 0 || j >= n) return Complex(0, 0);
  return f.at(i, j);
}

void record_boundary_touch(const ComplexField& f, double x, double y,
                           BoundaryMonitor* monitor) {
  if (!monitor) return;
  const Grid2D& g = f.grid();
  const int i = std::clamp(
      static_cast<int>(std::lround((x - g.x_min()) / g.h())), 0, g.n() - 1);
  const int j = std::clamp(
      static_cast<int>(std::lround((y - g.y_min()) / g.h())), 0, g.n() - 1);
  const double mag = std::abs(f.at(i, j));
  if (mag > 1e-12) {
    monitor->touches++;
    monitor->max_boundary_mag = std::max(monitor->max_boundary_mag, mag);
  }
}

}  // namespace

Complex interp2(const ComplexField& f, double x, double y, InterpMethod method,
                BoundaryMonitor* monitor) {
  const Grid2D& g = f.grid();
  if (!g.inside(x, y)) {
    record_boundary_touch(f, x, y, monitor);
    return Complex(0, 0);
  }
  const double u = (x - g.x_min()) / g.h();
  const double v = (y - g.y_min()) / g.h();
  int i = std::min(static_cast<int>(std::floor(u)), g.n() - 2);
  int j = std::min(static_cast<int>(std::floor(v)), g.n() - 2);
  const double fu = u - i, fv = v - j;

  if (method == InterpMethod::Bilinear) {
    return f.at(i, j) * ((1 - fu) * (1 - fv)) + f.at(i + 1, j) * (fu * (1 - fv)) +
           f.at(i, j + 1) * ((1 - fu) * fv) + f.at(i + 1, j + 1) * (fu * fv);
  }

  double wx[4], wy[4];
  keys_weights(fu, wx);
  keys_weights(fv, wy);
  Complex acc(0, 0);
  for (int dj = -1; dj <= 2; ++dj) {
    Complex row(0, 0);
    for (int di = -1; di <= 2; ++di)
      row += sample_zero_ext(f, i + di, j + dj) * wx[di + 1];
    acc += row * wy[dj + 1];
  }
  return acc;
}

namespace {

// Not-a-knot cubic spline second derivatives for uniformly spaced data.
// With uniform spacing the two not-a-knot rows collapse to
// M_1 = d_1/6 and M_{n-2} = d_{n-2}/6; the rest is tridiagonal.
void spline_moments(const Complex* src, int len, std::ptrdiff_t stride, double h,
                    std::vector<Complex>& m, std::vector<Complex>& scratch) {
  m.assign(len, Complex(0, 0));
  if (len < 4) return;  // caller falls back to low order
  auto y = [&](int i) { return src[i * stride]; };
  auto d = [&](int i) { return 6.0 * (y(i - 1) - 2.0 * y(i) + y(i + 1)) / (h * h); };

  m[1] = d(1) / 6.0;
  m[len - 2] = d(len - 2) / 6.0;
  const int unknowns = len - 4;  // M_2 .. M_{len-3}
  if (unknowns > 0) {
    // Thomas algorithm on  M_{i-1} + 4 M_i + M_{i+1} = d_i,  i = 2..len-3.
    scratch.assign(unknowns, Complex(0, 0));      // c' coefficients
    std::vector<Complex> rhs(unknowns);
    for (int k = 0; k < unknowns; ++k) {
      const int i = 2 + k;
      rhs[k] = d(i);
      if (k == 0) rhs[k] -= m[1];
      if (k == unknowns - 1) rhs[k] -= m[len - 2];
    }
    double beta = 4.0;
    std::vector<double> gamma(unknowns, 0.0);
    rhs[0] /= beta;
    for (int k = 1; k < unknowns; ++k) {
      gamma[k] = 1.0 / beta;
      beta = 4.0 - gamma[k];
      rhs[k] = (rhs[k] - rhs[k - 1]) / beta;
    }
    for (int k = unknowns - 2; k >= 0; --k) rhs[k] -= gamma[k + 1] * rhs[k + 1];
    for (int k = 0; k < unknowns; ++k) m[2 + k] = rhs[k];
  }
  m[0] = 2.0 * m[1] - m[2];
  m[len - 1] = 2.0 * m[len - 2] - m[len - 3];
}

}  // namespace

void spline_shift_1d(const Complex* src, int len, std::ptrdiff_t stride, double h,
                     double shift, Complex* dst, std::ptrdiff_t dst_stride) {
  const double s = shift / h;
  if (len < 4) {
    // Short lines: linear interpolation, zero outside.
    for (int i = 0; i < len; ++i) {
      const double p = i + s;
      Complex v(0, 0);
      if (p >= 0 && p <= len - 1) {
        const int k = std::min(static_cast<int>(std::floor(p)), len - 2);
        const double t = p - k;
        v = src[k * stride] * (1 - t) + src[(k + 1) * stride] * t;
      }
      dst[i * dst_stride] = v;
    }
    return;
  }

  thread_local std::vector<Complex> m, scratch;
  spline_moments(src, len, stride, h, m, scratch);
  const double h2_6 = h * h / 6.0;

  for (int i = 0; i < len; ++i) {
    const double p = i + s;
    Complex v(0, 0);
    if (p >= 0 && p <= len - 1 + 1e-12) {
      int k = std::min(static_cast<int>(std::floor(p)), len - 2);
      if (k < 0) k = 0;
      const double t = p - k;
      if (std::abs(t) < 1e-12) {
        v = src[k * stride];
      } else if (std::abs(t - 1.0) < 1e-12) {
        v = src[(k + 1) * stride];
      } else {
        const double omt = 1.0 - t;
        v = m[k] * (omt * omt * omt * h2_6) + m[k + 1] * (t * t * t * h2_6) +
            (src[k * stride] - m[k] * h2_6) * omt +
            (src[(k + 1) * stride] - m[k + 1] * h2_6) * t;
      }
    }
    dst[i * dst_stride] = v;
  }
}

std::vector<Complex> spline_shift_table(const std::vector<Complex>& table, int rows,
                                        int cols, double h, double shift_row,
                                        double shift_col) {
  std::vector<Complex> tmp(table.size()), out(table.size());
  if (shift_row != 0.0) {
    for (int b = 0; b < cols; ++b)
      spline_shift_1d(table.data() + b, rows, cols, h, shift_row, tmp.data() + b, cols);
  } else {
    tmp = table;
  }
  if (shift_col != 0.0) {
    for (int a = 0; a < rows; ++a)
      spline_shift_1d(tmp.data() + static_cast<std::ptrdiff_t>(a) * cols, cols, 1, h,
                      shift_col, out.data() + static_cast<std::ptrdiff_t>(a) * cols, 1);
  } else {
    out = std::move(tmp);
  }
  return out;
}

ComplexField spline_shift_field(const ComplexField& f, double dx, double dy) {
  const int n = f.n();
  ComplexField out(f.grid());
  // Row-major in y: x is contiguous, y has stride n.
  std::vector<Complex> tmp(f.data().size());
  if (dx != 0.0) {
    for (int j = 0; j < n; ++j)
      spline_shift_1d(f.data().data() + static_cast<std::ptrdiff_t>(j) * n, n, 1,
                      f.grid().h(), dx, tmp.data() + static_cast<std::ptrdiff_t>(j) * n,
                      1);
  } else {
    tmp = f.data();
  }
  if (dy != 0.0) {
    for (int i = 0; i < n; ++i)
      spline_shift_1d(tmp.data() + i, n, n, f.grid().h(), dy, out.data().data() + i, n);
  } else {
    out.data() = std::move(tmp);
  }
  return out;
}

}  // namespace ist
