#include <cmath>

#include "doctest.h"
#include "ist/scattering.hpp"

using namespace ist;

namespace {

Potential gaussian_potential(int n, double eps, double extent = 4.0) {
  Grid2D g(-extent, extent, -extent, extent, n);
  return Potential::from_function(g, [eps](int c, double x, double y) {
    const double e = std::exp(-(x * x + y * y));
    const Complex w[4] = {{1.0, 0.0}, {0.6, 0.3}, {-0.5, 0.2}, {0.4, -0.4}};
    return eps * w[c - 1] * e;
  });
}

}  // namespace

TEST_CASE("zero potential propagates profiles unchanged") {
  Grid2D g(-3, 3, -3, 3, 32);
  Potential zero(g);
  CharAxis ax(g);
  AsymptoticProfile a(ax);
  for (int k = 0; k < ax.m(); ++k) {
    const double c = ax.node(k);
    a.a1[k] = std::exp(-c * c);
    a.a2[k] = Complex(0, 1) * std::exp(-c * c / 2);
    a.a3[k] = std::sin(c) * std::exp(-c * c / 3);
  }
  PropagationResult r = propagate(zero, a);
  for (int k = 0; k < ax.m(); ++k) {
    CHECK(std::abs(r.a_out.a1[k] - a.a1[k]) < 1e-14);
    CHECK(std::abs(r.a_out.a2[k] - a.a2[k]) < 1e-14);
    CHECK(std::abs(r.a_out.a3[k] - a.a3[k]) < 1e-14);
  }
}

TEST_CASE("backward propagation inverts forward propagation") {
  Potential pot = gaussian_potential(48, 0.3);
  CharAxis ax(pot.grid());
  AsymptoticProfile a(ax);
  for (int k = 0; k < ax.m(); ++k) {
    const double c = ax.node(k);
    a.a1[k] = std::exp(-c * c / 2);
    a.a2[k] = Complex(0.5, 0.5) * std::exp(-c * c);
    a.a3[k] = std::cos(c) * std::exp(-c * c / 4);
  }
  PropagationResult fwd = propagate(pot, a);
  PropagationResult back = propagate_backward(pot, fwd.a_out);
  double err = 0, scale = 0;
  for (int k = 0; k < ax.m(); ++k) {
    err = std::max({err, std::abs(back.a_out.a1[k] - a.a1[k]),
                    std::abs(back.a_out.a2[k] - a.a2[k]),
                    std::abs(back.a_out.a3[k] - a.a3[k])});
    scale = std::max({scale, std::abs(a.a1[k]), std::abs(a.a2[k]), std::abs(a.a3[k])});
  }
  CHECK(err < 1e-12 * scale);
}

TEST_CASE("propagation requires a centered square grid") {
  Grid2D g(0, 6, 0, 6, 32);
  Potential pot(g);
  AsymptoticProfile a{CharAxis(g)};
  CHECK_THROWS_AS(propagate(pot, a), UsageError);
}

TEST_CASE("zero potential yields identity scattering operators") {
  Grid2D g(-3, 3, -3, 3, 32);
  Potential zero(g);
  ScatteringData scat = forward_scattering(zero);
  CHECK(scat.max_abs() < 1e-12);
  CHECK(scat.edge_decay_ok);
}

TEST_CASE("discrete product S Sinv stays near the identity") {
  Potential pot = gaussian_potential(32, 0.4);
  const int m = 2 * pot.grid().n() - 1;
  ScatteringOperator S = assemble_scattering_matrix(pot, m);
  ScatteringOperator Sinv = assemble_inverse_scattering_matrix(pot, m);

  // apply both to a smooth profile and compare with the input
  CharAxis ax = S.axis;
  AsymptoticProfile a(ax);
  for (int k = 0; k < ax.m(); ++k) {
    const double c = ax.node(k);
    a.a1[k] = std::exp(-c * c / 2);
    a.a2[k] = 0.5 * std::exp(-c * c / 3);
    a.a3[k] = Complex(0, 1) * std::exp(-c * c);
  }
  AsymptoticProfile round = Sinv.apply(S.apply(a));
  double err = 0;
  for (int k = 2; k < ax.m() - 2; ++k)
    err = std::max({err, std::abs(round.a1[k] - a.a1[k]),
                    std::abs(round.a2[k] - a.a2[k]),
                    std::abs(round.a3[k] - a.a3[k])});
  CHECK(err < 5e-3);  // O(h^2) operator consistency
}

TEST_CASE("weak-coupling kernel action matches a first-order quadrature oracle") {
  // For a weak potential with only component 1, the action of F13 on a
  // smooth profile reduces at first order to an explicit line integral
  //   (F13 a3)(xi) ~= int q1(xi - y, y) a3(2y - xi) dy,
  // while F23 must stay at roundoff level.
  const int n = 128;
  const double eps = 0.05;
  Grid2D g(-6, 6, -6, 6, n);
  auto q1f = [eps](double x, double y) {
    return Complex(eps, 0.4 * eps) * std::exp(-(x * x + y * y));
  };
  Potential q0 = Potential::from_function(
      g, [&](int c, double x, double y) { return c == 1 ? q1f(x, y) : Complex(0, 0); });
  ScatteringData s = forward_scattering(q0);
  const CharAxis& ax = s.axis;
  auto a3f = [](double eta) { return std::exp(-eta * eta / 2.0); };

  double num = 0, den = 0;
  for (int a = 0; a < ax.m(); ++a) {
    Complex disc(0, 0);
    for (int b = 0; b < ax.m(); ++b) {
      const double w = (b == 0 || b == ax.m() - 1) ? 0.5 * ax.h() : ax.h();
      disc += w * s.F13.at(a, b) * a3f(ax.node(b));
    }
    // fine-quadrature oracle, independent of the marching discretization
    const int M = 4000;
    const double ylo = -6, yhi = 6, dy = (yhi - ylo) / M;
    Complex oracle(0, 0);
    const double xi = ax.node(a);
    for (int k = 0; k <= M; ++k) {
      const double y = ylo + k * dy;
      const double w = (k == 0 || k == M) ? 0.5 * dy : dy;
      oracle += w * q1f(xi - y, y) * a3f(2 * y - xi);
    }
    num += std::norm(disc - oracle);
    den += std::norm(oracle);
  }
  CHECK(std::sqrt(num / den) < 0.05);  // first-order theory, O(eps) remainder
  CHECK(s.F23.max_abs() < 1e-6 * s.F13.max_abs());
}

TEST_CASE("edge decay violation is detected") {
  // support running to the grid edge violates the margin precondition
  Grid2D g(-3, 3, -3, 3, 32);
  CHECK_THROWS_AS(
      forward_scattering(Potential::from_function(
          g, [](int, double, double) { return Complex(0.5, 0); }, 0.999)),
      NumericalError);
}
