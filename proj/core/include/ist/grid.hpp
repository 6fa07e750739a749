#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ist/errors.hpp"

namespace ist {

using Complex = std::complex<double>;

/// Axis-aligned box in the (x,y) plane.
struct Box {
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;

  bool contains(double x, double y) const {
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
  }
  Box grown(double margin) const {
    return {x_lo - margin, x_hi + margin, y_lo - margin, y_hi + margin};
  }
};

/// Uniform square grid.  Both axes share the same step h, so the
/// slope +-1 characteristics of the linear system connect grid nodes
/// exactly.  Node coordinates are always x_min + i*h / y_min + j*h;
/// every consumer goes through x(i)/y(j) so the convention is single.
class Grid2D {
 public:
  Grid2D(double x_min, double x_max, double y_min, double y_max, int n);

  double x(int i) const { return x_min_ + i * h_; }
  double y(int j) const { return y_min_ + j * h_; }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  int n() const { return n_; }
  double h() const { return h_; }

  bool inside(double x, double y) const {
    return x >= x_min_ && x <= x_max_ && y >= y_min_ && y <= y_max_;
  }

  /// True when the grid is the centered square [-L,L] x [-L,L] required
  /// by the scattering machinery (shared characteristic axis).
  bool centered_square() const;

  bool operator==(const Grid2D& o) const {
    return x_min_ == o.x_min_ && x_max_ == o.x_max_ && y_min_ == o.y_min_ &&
           y_max_ == o.y_max_ && n_ == o.n_;
  }

 private:
  double x_min_, x_max_, y_min_, y_max_, h_;
  int n_;
};

/// Complex scalar field tabulated on a Grid2D, row-major in y.
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(const Grid2D& grid)
      : grid_(grid), data_(static_cast<size_t>(grid.n()) * grid.n()) {}

  const Grid2D& grid() const { return grid_; }
  int n() const { return grid_.n(); }

  Complex& at(int ix, int iy) { return data_[static_cast<size_t>(iy) * grid_.n() + ix]; }
  const Complex& at(int ix, int iy) const {
    return data_[static_cast<size_t>(iy) * grid_.n() + ix];
  }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  bool all_finite() const;
  double max_abs() const;
  /// l2 norm weighted by the cell area h^2.
  double l2() const;

 private:
  Grid2D grid_{0.0, 1.0, 0.0, 1.0, 8};
  std::vector<Complex> data_;
};

double rel_l2_error(const ComplexField& a, const ComplexField& b);

/// 1-D grid on the characteristic coordinate window
/// [x_min+y_min, x_max+y_max], step equal to the 2-D grid step.
/// Shared axis for both arguments of the scattering kernels.
class CharAxis {
 public:
  CharAxis() = default;
  CharAxis(double lo, int m, double h) : lo_(lo), m_(m), h_(h) {}
  explicit CharAxis(const Grid2D& grid);

  double node(int k) const { return lo_ + k * h_; }
  double lo() const { return lo_; }
  double hi() const { return node(m_ - 1); }
  int m() const { return m_; }
  double h() const { return h_; }

  bool operator==(const CharAxis& o) const {
    return lo_ == o.lo_ && m_ == o.m_ && h_ == o.h_;
  }

 private:
  double lo_ = 0;
  int m_ = 0;
  double h_ = 0;
};

/// xi = y + x, eta = y - x.  Component 1,2 profiles ride on xi,
/// component 3 on eta.
inline void characteristic_coords(double x, double y, double& xi, double& eta) {
  xi = y + x;
  eta = y - x;
}

inline void characteristic_coords_inverse(double xi, double eta, double& x, double& y) {
  x = (xi - eta) / 2.0;
  y = (xi + eta) / 2.0;
}

}  // namespace ist
