#pragma once

#include "ist/fields.hpp"

namespace ist {

/// Complex m x m kernel table on the shared characteristic axis.
/// Entry (a,b) is kernel(first_arg = node a, second_arg = node b).
class KernelTable {
 public:
  KernelTable() = default;
  explicit KernelTable(const CharAxis& ax)
      : axis_(ax), v_(static_cast<size_t>(ax.m()) * ax.m()) {}

  const CharAxis& axis() const { return axis_; }
  int m() const { return axis_.m(); }

  Complex& at(int a, int b) { return v_[static_cast<size_t>(a) * axis_.m() + b]; }
  const Complex& at(int a, int b) const {
    return v_[static_cast<size_t>(a) * axis_.m() + b];
  }

  std::vector<Complex>& data() { return v_; }
  const std::vector<Complex>& data() const { return v_; }

  double max_abs() const;
  double l2() const;
  bool all_finite() const;
  /// Max |entry| over the outermost `band` rows and columns.
  double edge_max_abs(int band) const;

 private:
  CharAxis axis_;
  std::vector<Complex> v_;
};

/// The four kernel blocks {F13, F23, G31, G32} that determine the
/// potential.  F13, F23 are blocks of S = I + F; G31, G32 of S^-1 = I + G.
/// First argument of F1x is a xi = y+x coordinate, second an eta = y-x one;
/// for G3x the roles are swapped.
struct ScatteringData {
  CharAxis axis;
  KernelTable F13, F23, G31, G32;
  double t = 0.0;
  bool edge_decay_ok = true;

  explicit ScatteringData(const CharAxis& ax)
      : axis(ax), F13(ax), F23(ax), G31(ax), G32(ax) {}

  double max_abs() const;
  double edge_max_abs(int band = 2) const;
  static constexpr double kDefaultEdgeTol = 1e-6;
};

/// Discrete scattering operator on the characteristic axis: column
/// (d-1)*m + k holds the response to the unit-mass nodal hat in
/// component d at node k, so off-identity entries approximate kernel
/// values.  Row-major, dimension (3m) x (3m).
struct ScatteringOperator {
  CharAxis axis;
  std::vector<Complex> mat;

  explicit ScatteringOperator(const CharAxis& ax)
      : axis(ax), mat(static_cast<size_t>(3) * ax.m() * 3 * ax.m()) {}

  int m() const { return axis.m(); }

  Complex& at(int c_out, int node_out, int c_in, int node_in) {
    const size_t dim = static_cast<size_t>(3) * axis.m();
    return mat[(static_cast<size_t>(c_out - 1) * axis.m() + node_out) * dim +
               (static_cast<size_t>(c_in - 1) * axis.m() + node_in)];
  }
  const Complex& at(int c_out, int node_out, int c_in, int node_in) const {
    const size_t dim = static_cast<size_t>(3) * axis.m();
    return mat[(static_cast<size_t>(c_out - 1) * axis.m() + node_out) * dim +
               (static_cast<size_t>(c_in - 1) * axis.m() + node_in)];
  }

  /// Applies the discrete operator to a tabulated profile.
  AsymptoticProfile apply(const AsymptoticProfile& a) const;

  /// Kernel block (c_out, c_in) with the discrete identity removed.
  KernelTable kernel_block(int c_out, int c_in) const;
};

struct PropagationResult {
  WaveField psi;
  AsymptoticProfile a_out;
};

/// Marches the linear system up in y from the prescribed bottom profile
/// a_minus; returns the wave field and the top profile a_plus.
/// Trapezoidal characteristic update, global O(h^2).
PropagationResult propagate(const Potential& pot, const AsymptoticProfile& a_minus);

/// Backward march from a_plus at the top down to a_minus.
PropagationResult propagate_backward(const Potential& pot,
                                     const AsymptoticProfile& a_plus);

/// Discrete S by forward propagation of every nodal basis element.
/// m must equal 2n-1 for the potential grid.
ScatteringOperator assemble_scattering_matrix(const Potential& pot, int m);

/// Discrete S^-1 by backward propagation (independent of S; the product
/// S S^-1 = I + O(h^2) is a diagnostic, not a construction).
ScatteringOperator assemble_inverse_scattering_matrix(const Potential& pot, int m);

/// Slices the four persisted kernel blocks and validates edge decay.
/// In strict mode an edge-decay violation is a hard error.
ScatteringData extract_scattering_data(const ScatteringOperator& S,
                                       const ScatteringOperator& S_inv,
                                       bool strict = false,
                                       double edge_tol = ScatteringData::kDefaultEdgeTol);

/// Forward map potential -> scattering data (assemble both operators and
/// extract).
ScatteringData forward_scattering(const Potential& pot, bool strict = false,
                                  double edge_tol = ScatteringData::kDefaultEdgeTol);

}  // namespace ist
