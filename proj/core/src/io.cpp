#include "ist/io.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>

namespace ist {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_or_throw(const std::string& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw UsageError("cannot open '" + path + "'");
  return f;
}

constexpr char kMagic[4] = {'D', 'I', 'S', 'T'};
constexpr uint32_t kVersion = 1;

void write_raw(std::FILE* f, const void* p, size_t bytes) {
  if (std::fwrite(p, 1, bytes, f) != bytes) throw UsageError("short write");
}
void read_raw(std::FILE* f, void* p, size_t bytes) {
  if (std::fread(p, 1, bytes, f) != bytes) throw UsageError("short read / truncated file");
}

void write_table_text(std::FILE* f, const char* name, const Complex* v, int rows,
                      int cols) {
  std::fprintf(f, "# field %s\n", name);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      const Complex& z = v[static_cast<size_t>(j) * cols + i];
      std::fprintf(f, "%d %d %.17g %.17g\n", i, j, z.real(), z.imag());
    }
}

void read_table_text(std::FILE* f, Complex* v, int rows, int cols) {
  char line[256];
  // skip the "# field" line
  if (!std::fgets(line, sizeof line, f)) throw UsageError("truncated text file");
  for (long k = 0; k < static_cast<long>(rows) * cols; ++k) {
    if (!std::fgets(line, sizeof line, f)) throw UsageError("truncated text file");
    int i, j;
    double re, im;
    if (std::sscanf(line, "%d %d %lg %lg", &i, &j, &re, &im) != 4)
      throw UsageError("malformed field line: " + std::string(line));
    if (i < 0 || i >= cols || j < 0 || j >= rows)
      throw UsageError("field index out of range");
    v[static_cast<size_t>(j) * cols + i] = Complex(re, im);
  }
}

// Tightest box containing the nonzero entries, padded by one cell; used to
// restore the support invariant of loaded potentials.
Box support_from_data(const Potential& pot) {
  const Grid2D& g = pot.grid();
  int ilo = g.n(), ihi = -1, jlo = g.n(), jhi = -1;
  for (int c = 1; c <= 4; ++c)
    for (int j = 0; j < g.n(); ++j)
      for (int i = 0; i < g.n(); ++i)
        if (pot.q(c).at(i, j) != Complex(0, 0)) {
          ilo = std::min(ilo, i);
          ihi = std::max(ihi, i);
          jlo = std::min(jlo, j);
          jhi = std::max(jhi, j);
        }
  if (ihi < 0) return central_box(g, Potential::kDefaultSupportFraction);
  return {g.x(std::max(0, ilo - 1)), g.x(std::min(g.n() - 1, ihi + 1)),
          g.y(std::max(0, jlo - 1)), g.y(std::min(g.n() - 1, jhi + 1))};
}

const char* kPotFields[4] = {"q1", "q2", "q3", "q4"};
const char* kKernelNames[4] = {"F13", "F23", "G31", "G32"};

}  // namespace

void save_potential_text(const std::string& path, const Potential& pot) {
  File f = open_or_throw(path, "w");
  const Grid2D& g = pot.grid();
  std::fprintf(f.get(), "# grid %.17g %.17g %.17g %.17g %d\n", g.x_min(), g.x_max(),
               g.y_min(), g.y_max(), g.n());
  for (int c = 1; c <= 4; ++c)
    write_table_text(f.get(), kPotFields[c - 1], pot.q(c).data().data(), g.n(), g.n());
}

Potential load_potential_text(const std::string& path) {
  File f = open_or_throw(path, "r");
  char line[256];
  if (!std::fgets(line, sizeof line, f.get())) throw UsageError("empty file");
  double x0, x1, y0, y1;
  int n;
  if (std::sscanf(line, "# grid %lg %lg %lg %lg %d", &x0, &x1, &y0, &y1, &n) != 5)
    throw UsageError("bad grid header in '" + path + "'");
  Grid2D grid(x0, x1, y0, y1, n);
  Potential pot(grid, Box{x0, x1, y0, y1});
  for (int c = 1; c <= 4; ++c)
    read_table_text(f.get(), pot.q(c).data().data(), n, n);
  pot.set_support(support_from_data(pot));
  pot.enforce_support();
  return pot;
}

void save_potential_binary(const std::string& path, const Potential& pot) {
  File f = open_or_throw(path, "wb");
  const Grid2D& g = pot.grid();
  write_raw(f.get(), kMagic, 4);
  write_raw(f.get(), &kVersion, 4);
  const double bounds[4] = {g.x_min(), g.x_max(), g.y_min(), g.y_max()};
  write_raw(f.get(), bounds, sizeof bounds);
  const uint64_t n = static_cast<uint64_t>(g.n());
  write_raw(f.get(), &n, 8);
  for (int c = 1; c <= 4; ++c)
    write_raw(f.get(), pot.q(c).data().data(),
              pot.q(c).data().size() * sizeof(Complex));
}

Potential load_potential_binary(const std::string& path) {
  File f = open_or_throw(path, "rb");
  char magic[4];
  uint32_t version;
  read_raw(f.get(), magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw UsageError("bad magic in '" + path + "'");
  read_raw(f.get(), &version, 4);
  if (version != kVersion) throw UsageError("unsupported file version");
  double bounds[4];
  uint64_t n;
  read_raw(f.get(), bounds, sizeof bounds);
  read_raw(f.get(), &n, 8);
  Grid2D grid(bounds[0], bounds[1], bounds[2], bounds[3], static_cast<int>(n));
  Potential pot(grid, Box{bounds[0], bounds[1], bounds[2], bounds[3]});
  for (int c = 1; c <= 4; ++c)
    read_raw(f.get(), pot.q(c).data().data(), pot.q(c).data().size() * sizeof(Complex));
  pot.set_support(support_from_data(pot));
  pot.enforce_support();
  return pot;
}

void save_scattering_text(const std::string& path, const ScatteringData& scat) {
  File f = open_or_throw(path, "w");
  const CharAxis& ax = scat.axis;
  std::fprintf(f.get(), "# grid %.17g %.17g %.17g %.17g %d\n", ax.lo(), ax.hi(), ax.lo(),
               ax.hi(), ax.m());
  std::fprintf(f.get(), "# time %.17g\n", scat.t);
  const KernelTable* tabs[4] = {&scat.F13, &scat.F23, &scat.G31, &scat.G32};
  for (int k = 0; k < 4; ++k)
    write_table_text(f.get(), kKernelNames[k], tabs[k]->data().data(), ax.m(), ax.m());
}

ScatteringData load_scattering_text(const std::string& path) {
  File f = open_or_throw(path, "r");
  char line[256];
  if (!std::fgets(line, sizeof line, f.get())) throw UsageError("empty file");
  double lo, hi, lo2, hi2;
  int m;
  if (std::sscanf(line, "# grid %lg %lg %lg %lg %d", &lo, &hi, &lo2, &hi2, &m) != 5)
    throw UsageError("bad kernel header in '" + path + "'");
  if (!std::fgets(line, sizeof line, f.get())) throw UsageError("truncated file");
  double t = 0;
  if (std::sscanf(line, "# time %lg", &t) != 1) throw UsageError("bad time header");
  CharAxis ax(lo, m, (hi - lo) / (m - 1));
  ScatteringData scat(ax);
  scat.t = t;
  KernelTable* tabs[4] = {&scat.F13, &scat.F23, &scat.G31, &scat.G32};
  for (int k = 0; k < 4; ++k) read_table_text(f.get(), tabs[k]->data().data(), m, m);
  return scat;
}

void save_scattering_binary(const std::string& path, const ScatteringData& scat) {
  File f = open_or_throw(path, "wb");
  const CharAxis& ax = scat.axis;
  write_raw(f.get(), kMagic, 4);
  write_raw(f.get(), &kVersion, 4);
  const double bounds[4] = {ax.lo(), ax.hi(), ax.lo(), ax.hi()};
  write_raw(f.get(), bounds, sizeof bounds);
  const uint64_t m = static_cast<uint64_t>(ax.m());
  write_raw(f.get(), &m, 8);
  write_raw(f.get(), &scat.t, 8);
  const KernelTable* tabs[4] = {&scat.F13, &scat.F23, &scat.G31, &scat.G32};
  for (int k = 0; k < 4; ++k)
    write_raw(f.get(), tabs[k]->data().data(), tabs[k]->data().size() * sizeof(Complex));
}

ScatteringData load_scattering_binary(const std::string& path) {
  File f = open_or_throw(path, "rb");
  char magic[4];
  uint32_t version;
  read_raw(f.get(), magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw UsageError("bad magic in '" + path + "'");
  read_raw(f.get(), &version, 4);
  if (version != kVersion) throw UsageError("unsupported file version");
  double bounds[4];
  uint64_t m;
  double t;
  read_raw(f.get(), bounds, sizeof bounds);
  read_raw(f.get(), &m, 8);
  read_raw(f.get(), &t, 8);
  CharAxis ax(bounds[0], static_cast<int>(m), (bounds[1] - bounds[0]) / (m - 1));
  ScatteringData scat(ax);
  scat.t = t;
  KernelTable* tabs[4] = {&scat.F13, &scat.F23, &scat.G31, &scat.G32};
  for (int k = 0; k < 4; ++k)
    read_raw(f.get(), tabs[k]->data().data(), tabs[k]->data().size() * sizeof(Complex));
  return scat;
}

}  // namespace ist
