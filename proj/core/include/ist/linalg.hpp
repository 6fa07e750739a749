#pragma once

#include <vector>

#include "ist/grid.hpp"

namespace ist {

/// Dense complex LU (partial pivoting) over a column-major n x n matrix,
/// with a 1-norm condition estimate.  Backed by LAPACK zgetrf/zgecon/zgetrs.
class DenseLU {
 public:
  DenseLU(std::vector<Complex> a_col_major, int n);

  /// 1-norm condition number estimate (anorm / rcond); HUGE_VAL when the
  /// factorization found an exact zero pivot.
  double condition_estimate() const { return cond_; }
  bool singular() const { return singular_; }

  /// Solves A x = b for nrhs stacked column vectors, in place.
  void solve_in_place(Complex* b, int nrhs) const;

 private:
  std::vector<Complex> lu_;
  std::vector<int> ipiv_;
  int n_;
  double cond_ = 0;
  bool singular_ = false;
};

}  // namespace ist
