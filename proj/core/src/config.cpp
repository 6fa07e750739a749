#include "ist/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ist/io.hpp"

namespace ist {

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
    throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int k = static_cast<int>(std::lround(x));
  if (x != k) throw UsageError("config key '" + key + "': expected an integer");
  return k;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config key '" + key + "': expected a boolean");
}

void apply_one(ScenarioConfig& c, const std::string& key, const std::string& val) {
  if (key == "grid.n") c.n = to_int(key, val);
  else if (key == "grid.extent") c.extent = to_double(key, val);
  else if (key == "lax.b1") c.b1 = to_double(key, val);
  else if (key == "lax.b2") c.b2 = to_double(key, val);
  else if (key == "lax.b3") c.b3 = to_double(key, val);
  else if (key == "potential.kind") c.potential_kind = val;
  else if (key == "potential.file") c.potential_file = val;
  else if (key == "potential.amplitude") c.amplitude = to_double(key, val);
  else if (key == "potential.width") c.width = to_double(key, val);
  else if (key == "potential.center_x") c.center_x = to_double(key, val);
  else if (key == "potential.center_y") c.center_y = to_double(key, val);
  else if (key == "potential.support_fraction") c.support_fraction = to_double(key, val);
  else if (key == "potential.w1_re") c.weight[0].real(to_double(key, val));
  else if (key == "potential.w1_im") c.weight[0].imag(to_double(key, val));
  else if (key == "potential.w2_re") c.weight[1].real(to_double(key, val));
  else if (key == "potential.w2_im") c.weight[1].imag(to_double(key, val));
  else if (key == "potential.w3_re") c.weight[2].real(to_double(key, val));
  else if (key == "potential.w3_im") c.weight[2].imag(to_double(key, val));
  else if (key == "potential.w4_re") c.weight[3].real(to_double(key, val));
  else if (key == "potential.w4_im") c.weight[3].imag(to_double(key, val));
  else if (key == "evolution.t_final") c.t_final = to_double(key, val);
  else if (key == "compare.tolerance") c.tolerance = to_double(key, val);
  else if (key == "io.format") c.format = val;
  else if (key == "run.strict") c.strict = to_bool(key, val);
  else throw UsageError("unknown config key '" + key + "'");
}

}  // namespace

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 'key = value'";
      throw UsageError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      std::ostringstream os;
      os << path << ":" << lineno << ": empty key or value";
      throw UsageError(os.str());
    }
    kv[key] = val;
  }
  return kv;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  return from_map(parse_kv_file(path));
}

ScenarioConfig ScenarioConfig::from_map(const std::map<std::string, std::string>& kv) {
  ScenarioConfig c;
  for (const auto& [key, val] : kv) apply_one(c, key, val);
  return c;
}

void ScenarioConfig::apply_override(const std::string& kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos)
    throw UsageError("override '" + kv + "' is not of the form key=value");
  apply_one(*this, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
}

void ScenarioConfig::validate() const {
  if (n < 32 || n > 512 || (n & (n - 1)) != 0)
    throw UsageError("grid.n must be a power of two in [32, 512]");
  if (!(extent > 0)) throw UsageError("grid.extent must be positive");
  if (!(b1 > b2 && b2 > b3)) throw UsageError("lax parameters must satisfy b1 > b2 > b3");
  if (potential_kind != "gaussian" && potential_kind != "zero" &&
      potential_kind != "file")
    throw UsageError("potential.kind must be gaussian, zero, or file");
  if (potential_kind == "file" && potential_file.empty())
    throw UsageError("potential.kind = file requires potential.file");
  if (!(width > 0)) throw UsageError("potential.width must be positive");
  if (!(support_fraction > 0 && support_fraction < 1))
    throw UsageError("potential.support_fraction must lie in (0, 1)");
  if (t_final < 0) throw UsageError("evolution.t_final must be nonnegative");
  if (!(tolerance > 0)) throw UsageError("compare.tolerance must be positive");
  if (format != "text" && format != "binary")
    throw UsageError("io.format must be text or binary");
}

Grid2D ScenarioConfig::make_grid() const {
  return Grid2D(-extent, extent, -extent, extent, n);
}

LaxParameters ScenarioConfig::make_lax() const { return LaxParameters(b1, b2, b3); }

Potential ScenarioConfig::make_potential() const {
  if (potential_kind == "file") {
    Potential pot = format == "binary" ? load_potential_binary(potential_file)
                                       : load_potential_text(potential_file);
    if (!(pot.grid() == make_grid()))
      throw UsageError("potential file grid does not match the configured grid");
    return pot;
  }
  const Grid2D grid = make_grid();
  if (potential_kind == "zero") return Potential(grid, support_fraction);
  const double a = amplitude, w = width, x0 = center_x, y0 = center_y;
  const Complex* wt = weight;
  return Potential::from_function(
      grid,
      [a, w, x0, y0, wt](int comp, double x, double y) {
        const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
        return a * wt[comp - 1] * std::exp(-r2 / (2.0 * w * w));
      },
      support_fraction);
}

}  // namespace ist
