#pragma once

#include <array>
#include <functional>

#include "ist/grid.hpp"

namespace ist {

/// Lax parameters b1 > b2 > b3 and the derived advection coefficients
///   k1 = -(b1-b3)/2, k2 = -(b1+b3)/2, k3 = -(b2-b3)/2, k4 = -(b2+b3)/2.
struct LaxParameters {
  double b1, b2, b3;
  double k1, k2, k3, k4;

  LaxParameters(double b1_, double b2_, double b3_, bool relax_ordering = false);

  double max_abs_k() const;
};

/// The four complex coefficient fields of the linear system, compactly
/// supported inside `support`: values outside the box are exactly zero.
class Potential {
 public:
  /// Default support fraction of the grid taken by the support box.
  static constexpr double kDefaultSupportFraction = 0.6;

  Potential(const Grid2D& grid, double support_fraction = kDefaultSupportFraction);
  Potential(const Grid2D& grid, const Box& support);

  /// Builds a potential from analytic component functions, zeroed outside
  /// the support box.
  static Potential from_function(
      const Grid2D& grid,
      const std::function<Complex(int comp, double x, double y)>& f,
      double support_fraction = kDefaultSupportFraction);

  const Grid2D& grid() const { return q_[0].grid(); }
  const Box& support() const { return support_; }

  ComplexField& q(int i) { return q_[i - 1]; }          // i in 1..4
  const ComplexField& q(int i) const { return q_[i - 1]; }

  /// Re-applies the support invariant (exact zeros outside the box) and
  /// checks finiteness.  Throws NumericalError on NaN/Inf.
  void enforce_support();

  /// Max |q_i| over all components within `band` cells of the grid edge.
  double edge_max_abs(int band) const;

  double max_abs() const;
  void set_support(const Box& box) { support_ = box; }

 private:
  std::array<ComplexField, 4> q_;
  Box support_;
};

/// Support box covering the central `fraction` of the grid.
Box central_box(const Grid2D& grid, double fraction);

/// Three-component solution of the linear system on a grid.
struct WaveField {
  ComplexField psi1, psi2, psi3;

  explicit WaveField(const Grid2D& grid) : psi1(grid), psi2(grid), psi3(grid) {}
  const Grid2D& grid() const { return psi1.grid(); }
};

/// Asymptotic profile a(y): components 1,2 tabulated against xi = y+x,
/// component 3 against eta = y-x, all on the shared characteristic axis.
struct AsymptoticProfile {
  CharAxis axis;
  std::vector<Complex> a1, a2, a3;

  explicit AsymptoticProfile(const CharAxis& ax)
      : axis(ax), a1(ax.m()), a2(ax.m()), a3(ax.m()) {}

  /// Nodal hat basis element of unit mass (height 1/h) in one component.
  static AsymptoticProfile hat(const CharAxis& ax, int comp, int node);

  /// Piecewise-linear evaluation at an arbitrary coordinate; zero outside
  /// the tabulation window.
  Complex eval(int comp, double c) const;

  double max_abs() const;
};

}  // namespace ist
