#include "ist/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ist/fields.hpp"

namespace ist {

Grid2D::Grid2D(double x_min, double x_max, double y_min, double y_max, int n)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), n_(n) {
  if (n < 8) throw UsageError("Grid2D: n must be >= 8");
  if (!(x_max > x_min) || !(y_max > y_min))
    throw UsageError("Grid2D: degenerate bounds");
  const double hx = (x_max - x_min) / (n - 1);
  const double hy = (y_max - y_min) / (n - 1);
  if (std::abs(hx - hy) > 1e-14 * std::max(std::abs(hx), std::abs(hy)))
    throw UsageError("Grid2D: steps must be equal on both axes");
  h_ = hx;
  if (!(h_ > 0)) throw UsageError("Grid2D: step must be positive");
}

bool Grid2D::centered_square() const {
  const double scale = std::abs(x_max_);
  return std::abs(x_min_ + x_max_) <= 1e-14 * scale &&
         std::abs(x_min_ - y_min_) <= 1e-14 * scale &&
         std::abs(x_max_ - y_max_) <= 1e-14 * scale;
}

bool ComplexField::all_finite() const {
  for (const Complex& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double ComplexField::max_abs() const {
  double m = 0;
  for (const Complex& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexField::l2() const {
  double s = 0;
  for (const Complex& v : data_) s += std::norm(v);
  return std::sqrt(s) * grid_.h();
}

double rel_l2_error(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid()))
    throw NumericalError(NumericalError::Kind::Mismatch, "rel_l2_error: grid mismatch");
  double num = 0, den = 0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    num += std::norm(a.data()[i] - b.data()[i]);
    den += std::norm(b.data()[i]);
  }
  if (den == 0) return std::sqrt(num);
  return std::sqrt(num / den);
}

CharAxis::CharAxis(const Grid2D& grid)
    : lo_(grid.x_min() + grid.y_min()), m_(2 * grid.n() - 1), h_(grid.h()) {}

LaxParameters::LaxParameters(double b1_, double b2_, double b3_, bool relax_ordering)
    : b1(b1_), b2(b2_), b3(b3_) {
  if (!relax_ordering && !(b1 > b2 && b2 > b3))
    throw UsageError("LaxParameters: need b1 > b2 > b3");
  k1 = -(b1 - b3) / 2.0;
  k2 = -(b1 + b3) / 2.0;
  k3 = -(b2 - b3) / 2.0;
  k4 = -(b2 + b3) / 2.0;
}

double LaxParameters::max_abs_k() const {
  return std::max({std::abs(k1), std::abs(k2), std::abs(k3), std::abs(k4)});
}

Box central_box(const Grid2D& grid, double fraction) {
  const double cx = (grid.x_min() + grid.x_max()) / 2.0;
  const double cy = (grid.y_min() + grid.y_max()) / 2.0;
  const double rx = fraction * (grid.x_max() - grid.x_min()) / 2.0;
  const double ry = fraction * (grid.y_max() - grid.y_min()) / 2.0;
  return {cx - rx, cx + rx, cy - ry, cy + ry};
}

Potential::Potential(const Grid2D& grid, double support_fraction)
    : Potential(grid, central_box(grid, support_fraction)) {}

Potential::Potential(const Grid2D& grid, const Box& support)
    : q_{ComplexField(grid), ComplexField(grid), ComplexField(grid), ComplexField(grid)},
      support_(support) {}

Potential Potential::from_function(
    const Grid2D& grid, const std::function<Complex(int, double, double)>& f,
    double support_fraction) {
  Potential pot(grid, support_fraction);
  for (int c = 1; c <= 4; ++c) {
    ComplexField& q = pot.q(c);
    for (int j = 0; j < grid.n(); ++j)
      for (int i = 0; i < grid.n(); ++i) {
        const double x = grid.x(i), y = grid.y(j);
        q.at(i, j) = pot.support_.contains(x, y) ? f(c, x, y) : Complex(0, 0);
      }
  }
  pot.enforce_support();
  return pot;
}

void Potential::enforce_support() {
  const Grid2D& g = grid();
  for (int c = 1; c <= 4; ++c) {
    ComplexField& q = q_[c - 1];
    if (!q.all_finite())
      throw NumericalError(NumericalError::Kind::BlowUp,
                           "Potential: non-finite values in q" + std::to_string(c));
    for (int j = 0; j < g.n(); ++j)
      for (int i = 0; i < g.n(); ++i)
        if (!support_.contains(g.x(i), g.y(j))) q.at(i, j) = Complex(0, 0);
  }
}

double Potential::edge_max_abs(int band) const {
  const int n = grid().n();
  double m = 0;
  for (int c = 1; c <= 4; ++c) {
    const ComplexField& q = q_[c - 1];
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (i < band || i >= n - band || j < band || j >= n - band)
          m = std::max(m, std::abs(q.at(i, j)));
  }
  return m;
}

double Potential::max_abs() const {
  double m = 0;
  for (const ComplexField& q : q_) m = std::max(m, q.max_abs());
  return m;
}

AsymptoticProfile AsymptoticProfile::hat(const CharAxis& ax, int comp, int node) {
  AsymptoticProfile p(ax);
  std::vector<Complex>& a = comp == 1 ? p.a1 : comp == 2 ? p.a2 : p.a3;
  a[node] = Complex(1.0 / ax.h(), 0.0);
  return p;
}

Complex AsymptoticProfile::eval(int comp, double c) const {
  const std::vector<Complex>& a = comp == 1 ? a1 : comp == 2 ? a2 : a3;
  const double t = (c - axis.lo()) / axis.h();
  if (t <= -1 || t >= axis.m()) return Complex(0, 0);
  const int k = static_cast<int>(std::floor(t));
  const double f = t - k;
  const Complex left = k >= 0 && k < axis.m() ? a[k] : Complex(0, 0);
  const Complex right = k + 1 >= 0 && k + 1 < axis.m() ? a[k + 1] : Complex(0, 0);
  return left * (1.0 - f) + right * f;
}

double AsymptoticProfile::max_abs() const {
  double m = 0;
  for (const Complex& v : a1) m = std::max(m, std::abs(v));
  for (const Complex& v : a2) m = std::max(m, std::abs(v));
  for (const Complex& v : a3) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace ist
