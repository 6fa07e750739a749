#pragma once

#include <string>

#include "ist/fields.hpp"
#include "ist/scattering.hpp"

namespace ist {

// Field files, text flavor:
//   # grid x_min x_max y_min y_max n
//   # field <name>
//   i j re im            (n*n lines per field, j outer, i inner)
// Binary flavor: magic "DIST", u32 version, little-endian, header of
// 4 float64 bounds + u64 n, then row-major float64 (re,im) pairs per
// field.  Both flavors round-trip bit-exactly.

void save_potential_text(const std::string& path, const Potential& pot);
Potential load_potential_text(const std::string& path);

void save_potential_binary(const std::string& path, const Potential& pot);
Potential load_potential_binary(const std::string& path);

// Kernel files reuse the field layout on the characteristic axis: the
// header stores (lo, hi, lo, hi, m) plus the evolution time t, followed by
// the four tables F13, F23, G31, G32.
void save_scattering_text(const std::string& path, const ScatteringData& scat);
ScatteringData load_scattering_text(const std::string& path);

void save_scattering_binary(const std::string& path, const ScatteringData& scat);
ScatteringData load_scattering_binary(const std::string& path);

}  // namespace ist
