#include <cstdio>
#include <random>

#include "doctest.h"
#include "ist/io.hpp"

using namespace ist;

namespace {

Potential random_potential(int n, unsigned seed) {
  Grid2D g(-3, 3, -3, 3, n);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Potential pot = Potential::from_function(
      g, [&](int, double, double) { return Complex(u(rng), u(rng)); }, 0.6);
  return pot;
}

ScatteringData random_scattering(int m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  CharAxis ax(-6.0, m, 12.0 / (m - 1));
  ScatteringData scat(ax);
  scat.t = 0.75;
  for (KernelTable* tab : {&scat.F13, &scat.F23, &scat.G31, &scat.G32})
    for (Complex& z : tab->data()) z = Complex(u(rng), u(rng));
  return scat;
}

bool same_potential_bits(const Potential& a, const Potential& b) {
  for (int c = 1; c <= 4; ++c)
    if (a.q(c).data() != b.q(c).data()) return false;
  return a.grid() == b.grid();
}

bool same_scattering_bits(const ScatteringData& a, const ScatteringData& b) {
  return a.axis == b.axis && a.t == b.t && a.F13.data() == b.F13.data() &&
         a.F23.data() == b.F23.data() && a.G31.data() == b.G31.data() &&
         a.G32.data() == b.G32.data();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("io_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("potential text round trip is bit exact") {
  const Potential pot = random_potential(32, 11);
  TempFile f("pot.txt");
  save_potential_text(f.path, pot);
  const Potential back = load_potential_text(f.path);
  CHECK(same_potential_bits(pot, back));
}

TEST_CASE("potential binary round trip is bit exact") {
  const Potential pot = random_potential(32, 12);
  TempFile f("pot.bin");
  save_potential_binary(f.path, pot);
  const Potential back = load_potential_binary(f.path);
  CHECK(same_potential_bits(pot, back));
}

TEST_CASE("scattering text round trip is bit exact") {
  const ScatteringData scat = random_scattering(31, 13);
  TempFile f("scat.txt");
  save_scattering_text(f.path, scat);
  const ScatteringData back = load_scattering_text(f.path);
  CHECK(same_scattering_bits(scat, back));
}

TEST_CASE("scattering binary round trip is bit exact") {
  const ScatteringData scat = random_scattering(31, 14);
  TempFile f("scat.bin");
  save_scattering_binary(f.path, scat);
  const ScatteringData back = load_scattering_binary(f.path);
  CHECK(same_scattering_bits(scat, back));
}

TEST_CASE("loader rejects foreign data") {
  TempFile f("garbage.bin");
  std::FILE* out = std::fopen(f.path.c_str(), "wb");
  std::fputs("not a field file", out);
  std::fclose(out);
  CHECK_THROWS_AS(load_potential_binary(f.path), UsageError);
  CHECK_THROWS_AS(load_potential_text(f.path), UsageError);
}

TEST_CASE("support box is restored from loaded data") {
  const Potential pot = random_potential(32, 15);
  TempFile f("pot2.bin");
  save_potential_binary(f.path, pot);
  const Potential back = load_potential_binary(f.path);
  const Grid2D& g = back.grid();
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i)
      if (!back.support().contains(g.x(i), g.y(j)))
        CHECK(back.q(1).at(i, j) == Complex(0, 0));
}
