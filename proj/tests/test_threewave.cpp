#include <cmath>

#include "doctest.h"
#include "ist/threewave.hpp"

using namespace ist;

namespace {

Complex envelope(double x, double y) { return std::exp(-(x * x + y * y)); }

Potential coupled_potential(const Grid2D& g, double eps) {
  return Potential::from_function(g, [eps](int c, double x, double y) {
    const Complex w[4] = {{1.0, 0.0}, {0.6, 0.3}, {-0.5, 0.2}, {0.4, -0.4}};
    return eps * w[c - 1] * envelope(x, y);
  });
}

}  // namespace

TEST_CASE("zero initial data stays zero") {
  Grid2D g(-4, 4, -4, 4, 32);
  Potential zero(g);
  LaxParameters lax(1.0, 0.0, -1.0);
  ThreeWaveResult res = run_threewave(zero, lax, 0.3);
  CHECK(res.pot.max_abs() == 0.0);
  CHECK(res.diag.steps > 0);
  CHECK(res.diag.aux_top_max == 0.0);
}

TEST_CASE("auxiliary fields satisfy their characteristic equation") {
  Grid2D g(-4, 4, -4, 4, 65);
  Potential q = coupled_potential(g, 0.8);
  LaxParameters lax(1.5, 0.25, -1.0);
  AuxiliaryFields aux = compute_aux(q, lax);
  const int n = g.n();
  const double h = g.h();
  double err = 0, scale = 0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      const Complex lhs12 = (aux.v12.at(i, j + 1) - aux.v12.at(i, j - 1) -
                             aux.v12.at(i + 1, j) + aux.v12.at(i - 1, j)) /
                            (2.0 * h);
      const Complex f12 =
          -0.5 * (lax.b1 - lax.b2) * q.q(1).at(i, j) * q.q(4).at(i, j);
      err = std::max(err, std::abs(lhs12 - f12));
      scale = std::max(scale, std::abs(f12));
    }
  CHECK(err < 0.06 * scale);  // centered difference of a trapezoid integral
}

TEST_CASE("a lone component translates at its characteristic velocity") {
  Grid2D g(-6, 6, -6, 6, 64);
  Potential q0 = Potential::from_function(g, [](int c, double x, double y) {
    return c == 1 ? Complex(0.2, 0.1) * envelope(x, y) : Complex(0, 0);
  });
  LaxParameters lax(1.0, 0.0, -1.0);  // component 1 velocity (k2, k1) = (0, -1)
  const double t = 1.0;
  ThreeWaveResult r = run_threewave(q0, lax, t);
  double err = 0;
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i) {
      Complex exact = Complex(0.2, 0.1) * envelope(g.x(i), g.y(j) + t);
      if (!r.pot.support().contains(g.x(i), g.y(j))) exact = 0;
      err = std::max(err, std::abs(r.pot.q(1).at(i, j) - exact));
    }
  CHECK(err < 2e-4);
  CHECK(r.pot.q(2).max_abs() == 0.0);
  CHECK(r.pot.q(3).max_abs() == 0.0);
}

TEST_CASE("coupled solution self-converges under refinement") {
  LaxParameters lax(1.0, 0.0, -1.0);
  const double t = 0.4, eps = 0.8;
  // grids n and 2n-1 share every coarse node
  Potential fine = run_threewave(coupled_potential(Grid2D(-6, 6, -6, 6, 129), eps),
                                 lax, t)
                       .pot;
  Potential mid =
      run_threewave(coupled_potential(Grid2D(-6, 6, -6, 6, 65), eps), lax, t).pot;
  Potential coarse =
      run_threewave(coupled_potential(Grid2D(-6, 6, -6, 6, 33), eps), lax, t).pot;
  double e_coarse = 0, e_mid = 0;
  for (int j = 0; j < 33; ++j)
    for (int i = 0; i < 33; ++i)
      for (int c = 1; c <= 4; ++c) {
        e_coarse = std::max(e_coarse, std::abs(coarse.q(c).at(i, j) -
                                               fine.q(c).at(4 * i, 4 * j)));
        e_mid = std::max(e_mid,
                         std::abs(mid.q(c).at(2 * i, 2 * j) - fine.q(c).at(4 * i, 4 * j)));
      }
  CHECK(e_coarse > 0);
  // at least second order; spline advection often pushes the ratio higher
  const double ratio = e_coarse / e_mid;
  CHECK(ratio > 2.5);
  CHECK(ratio < 20.0);
}

TEST_CASE("support reaching the grid edge raises window overflow") {
  Grid2D g(-4, 4, -4, 4, 32);
  Potential q0 = coupled_potential(g, 0.3);
  LaxParameters lax(1.0, 0.0, -1.0);
  CHECK_THROWS_AS(run_threewave(q0, lax, 10.0), NumericalError);
}

TEST_CASE("diagnostics record steps, mass history and snapshots") {
  Grid2D g(-4, 4, -4, 4, 32);
  Potential q0 = coupled_potential(g, 0.4);
  LaxParameters lax(1.0, 0.0, -1.0);
  ThreeWaveOptions opts;
  opts.snapshot_stride = 2;
  ThreeWaveResult r = run_threewave(q0, lax, 0.3, opts);
  CHECK(static_cast<int>(r.diag.mass_history.size()) == r.diag.steps);
  CHECK(r.diag.mass_history.back().first == doctest::Approx(0.3));
  CHECK(!r.snapshots.empty());
  CHECK(r.snapshots.back().first == doctest::Approx(0.3));
}
