#include <cmath>

#include "doctest.h"
#include "ist/evolution.hpp"

using namespace ist;

namespace {

ScatteringData smooth_data(int n, double extent = 6.0) {
  Grid2D g(-extent, extent, -extent, extent, n);
  ScatteringData s{CharAxis(g)};
  const CharAxis& ax = s.axis;
  for (int a = 0; a < ax.m(); ++a)
    for (int b = 0; b < ax.m(); ++b) {
      const double xi = ax.node(a), eta = ax.node(b);
      s.F13.at(a, b) = Complex(0.10, 0.02) * std::exp(-(xi * xi + eta * eta) / 2);
      s.F23.at(a, b) = Complex(0.05, -0.03) * std::exp(-(xi * xi + 1.5 * eta * eta) / 2);
      s.G31.at(a, b) = Complex(-0.08, 0.01) * std::exp(-(1.2 * xi * xi + eta * eta) / 2);
      s.G32.at(a, b) = Complex(0.06, 0.04) * std::exp(-(xi * xi + eta * eta) / 1.7);
    }
  return s;
}

double max_table_diff(const KernelTable& a, const KernelTable& b) {
  double m = 0;
  for (size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace

TEST_CASE("dt = 0 returns the data unchanged bit for bit") {
  ScatteringData s = smooth_data(33);
  LaxParameters lax(1.0, 0.0, -1.0);
  ScatteringData out = evolve(s, lax, 0.0);
  CHECK(out.F13.data() == s.F13.data());
  CHECK(out.F23.data() == s.F23.data());
  CHECK(out.G31.data() == s.G31.data());
  CHECK(out.G32.data() == s.G32.data());
}

TEST_CASE("node-aligned shifts are exact index copies") {
  ScatteringData s = smooth_data(64);
  const CharAxis& ax = s.axis;
  LaxParameters lax(1.0, 0.0, -1.0);
  const double t = ax.h();  // all four shift pairs are whole cells
  ScatteringData e = evolve(s, lax, t);
  const int m = ax.m();
  double err = 0;
  for (int a = 0; a + 1 < m; ++a)
    for (int b = 0; b + 1 < m; ++b)
      err = std::max(err, std::abs(e.F13.at(a, b) - s.F13.at(a + 1, b + 1)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b + 1 < m; ++b)
      err = std::max(err, std::abs(e.F23.at(a, b) - s.F23.at(a, b + 1)));
  for (int a = 0; a + 1 < m; ++a)
    for (int b = 0; b + 1 < m; ++b)
      err = std::max(err, std::abs(e.G31.at(a, b) - s.G31.at(a + 1, b + 1)));
  for (int a = 0; a + 1 < m; ++a)
    for (int b = 0; b < m; ++b)
      err = std::max(err, std::abs(e.G32.at(a, b) - s.G32.at(a + 1, b)));
  CHECK(err <= 1e-13);
  CHECK(e.t == doctest::Approx(t));
}

TEST_CASE("two short steps agree with one long step") {
  ScatteringData s = smooth_data(64);
  LaxParameters lax(1.0, 0.0, -1.0);
  ScatteringData two = evolve(evolve(s, lax, 0.33), lax, 0.17);
  ScatteringData one = evolve(s, lax, 0.5);
  CHECK(max_table_diff(two.F13, one.F13) < 1e-6);
  CHECK(max_table_diff(two.F23, one.F23) < 1e-6);
  CHECK(max_table_diff(two.G31, one.G31) < 1e-6);
  CHECK(max_table_diff(two.G32, one.G32) < 1e-6);
}

TEST_CASE("evolving forward then backward restores the data") {
  ScatteringData s = smooth_data(64);
  LaxParameters lax(1.0, 0.0, -1.0);
  ScatteringData fb = evolve(evolve(s, lax, 0.4), lax, -0.4);
  CHECK(max_table_diff(fb.F13, s.F13) < 1e-6);
  CHECK(max_table_diff(fb.G32, s.G32) < 1e-6);
}

TEST_CASE("transport residual vanishes at second order") {
  LaxParameters lax(1.0, 0.0, -1.0);
  ScatteringData coarse = smooth_data(64);
  ScatteringData fine = smooth_data(128);
  TransportResidual rc = transport_residual(coarse, lax, coarse.axis.h());
  TransportResidual rf = transport_residual(fine, lax, fine.axis.h());
  CHECK(rc.max() > 0);
  const double ratio = rc.max() / rf.max();
  CHECK(ratio > 3.0);   // order 2 +- 0.3 => ratio in [3.25, 4.92]
  CHECK(ratio < 5.3);
}

TEST_CASE("window overflow is flagged and fatal in strict mode") {
  // data without decay at the window edge loses mass under any shift
  Grid2D g(-3, 3, -3, 3, 32);
  ScatteringData s{CharAxis(g)};
  for (Complex& z : s.F13.data()) z = Complex(1.0, 0.0);
  LaxParameters lax(1.0, 0.0, -1.0);
  ScatteringData out = evolve(s, lax, 0.5);
  CHECK_FALSE(out.edge_decay_ok);
  EvolutionOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(evolve(s, lax, 0.5, strict), NumericalError);
}
