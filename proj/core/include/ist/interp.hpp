#pragma once

#include "ist/grid.hpp"

namespace ist {

enum class InterpMethod { Bilinear, Bicubic };

/// Collects out-of-bounds queries that land next to non-negligible
/// boundary values (truncation window too small).  Not thread-safe;
/// use one monitor per worker.
struct BoundaryMonitor {
  long touches = 0;
  double max_boundary_mag = 0;
};

/// Interpolates a grid field at (x,y).  Exact at nodes; bilinear is exact
/// for bilinear functions.  Out-of-bounds queries return zero (fields are
/// compactly supported) and are recorded on `monitor` when the nearest
/// boundary node exceeds 1e-12 in magnitude.
Complex interp2(const ComplexField& f, double x, double y,
                InterpMethod method = InterpMethod::Bilinear,
                BoundaryMonitor* monitor = nullptr);

/// Resamples uniformly spaced data at a constant offset using a
/// not-a-knot cubic spline: dst[i] = S(t_i + shift) where t_i = i*h.
/// Points outside the data window evaluate to zero.  `stride` addresses
/// non-contiguous lines (columns of row-major tables).
void spline_shift_1d(const Complex* src, int len, std::ptrdiff_t stride, double h,
                     double shift, Complex* dst, std::ptrdiff_t dst_stride);

/// Constant-offset resample of a rows x cols row-major table:
/// out[a][b] = T(r_a + shift_row, c_b + shift_col), zero outside the window.
/// Spline along each axis in turn (exact at nodes, O(h^4) on smooth data).
std::vector<Complex> spline_shift_table(const std::vector<Complex>& table, int rows,
                                        int cols, double h, double shift_row,
                                        double shift_col);

/// Constant-offset resample of a grid field: out(i,j) = f(x_i + dx, y_j + dy).
ComplexField spline_shift_field(const ComplexField& f, double dx, double dy);

}  // namespace ist
