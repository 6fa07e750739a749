#include "ist/linalg.hpp"

#include <cmath>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace ist {

namespace {
inline lapack_complex_double* lp(Complex* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}
}  // namespace

DenseLU::DenseLU(std::vector<Complex> a_col_major, int n)
    : lu_(std::move(a_col_major)), ipiv_(n), n_(n) {
  const double anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', n_, n_, lp(lu_.data()), n_);
  const lapack_int info =
      LAPACKE_zgetrf(LAPACK_COL_MAJOR, n_, n_, lp(lu_.data()), n_, ipiv_.data());
  if (info < 0)
    throw NumericalError(NumericalError::Kind::InversionBreakdown,
                         "zgetrf: invalid argument");
  if (info > 0) {
    singular_ = true;
    cond_ = HUGE_VAL;
    return;
  }
  double rcond = 0;
  LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n_, lp(lu_.data()), n_, anorm, &rcond);
  cond_ = rcond > 0 ? 1.0 / rcond : HUGE_VAL;
}

void DenseLU::solve_in_place(Complex* b, int nrhs) const {
  if (singular_)
    throw NumericalError(NumericalError::Kind::InversionBreakdown,
                         "DenseLU: singular matrix");
  const lapack_int info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n_, nrhs,
                                         lp(const_cast<Complex*>(lu_.data())), n_,
                                         const_cast<int*>(ipiv_.data()), lp(b), n_);
  if (info != 0)
    throw NumericalError(NumericalError::Kind::InversionBreakdown, "zgetrs failed");
}

}  // namespace ist
