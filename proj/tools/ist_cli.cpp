#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ist/io.hpp"
#include "ist/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  bool strict = false;
  bool quiet = false;
  int threads = 0;
};

ist::ScenarioConfig make_config(const GlobalArgs& g) {
  ist::ScenarioConfig cfg;
  if (!g.config_path.empty()) cfg = ist::ScenarioConfig::load(g.config_path);
  for (const std::string& kv : g.overrides) cfg.apply_override(kv);
  if (g.strict) cfg.strict = true;
  cfg.validate();
  return cfg;
}

std::string out_path(const GlobalArgs& g, const std::string& name) {
  namespace fs = std::filesystem;
  std::string dir = g.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv("OUTPUT_DIR");
    dir = env ? env : ".";
  }
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ist::UsageError("cannot write '" + path + "'");
  out << body;
}

void say(const GlobalArgs& g, const std::string& msg) {
  if (!g.quiet) std::cout << msg << "\n";
}

void save_pot(const ist::ScenarioConfig& cfg, const std::string& path,
              const ist::Potential& pot) {
  if (cfg.format == "binary")
    ist::save_potential_binary(path, pot);
  else
    ist::save_potential_text(path, pot);
}

ist::ScatteringData load_scat(const ist::ScenarioConfig& cfg, const std::string& path) {
  return cfg.format == "binary" ? ist::load_scattering_binary(path)
                                : ist::load_scattering_text(path);
}

void save_scat(const ist::ScenarioConfig& cfg, const std::string& path,
               const ist::ScatteringData& scat) {
  if (cfg.format == "binary")
    ist::save_scattering_binary(path, scat);
  else
    ist::save_scattering_text(path, scat);
}

std::string data_ext(const ist::ScenarioConfig& cfg) {
  return cfg.format == "binary" ? ".bin" : ".txt";
}

int run(int argc, char** argv) {
  CLI::App app{"Inverse-scattering solver for a 2+1 dimensional three-wave system"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "Scenario config file (key = value)");
  app.add_option("--output", g.output_dir, "Output directory (default $OUTPUT_DIR or .)");
  app.add_option("--override", g.overrides, "Config override key=value (repeatable)");
  app.add_flag("--strict", g.strict, "Promote diagnostics to hard errors");
  app.add_flag("--quiet", g.quiet, "Suppress progress output");
  app.add_option("--threads", g.threads, "Worker thread count");

  std::string input_path;
  std::string sizes_arg = "64,128,256";
  double dt_arg = 0;

  CLI::App* forward = app.add_subcommand("forward", "Potential to scattering kernels");
  CLI::App* invert = app.add_subcommand("invert", "Scattering kernels to potential");
  invert->add_option("--input", input_path, "Kernel file")->required();
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Transport kernels to t_final");
  evolve_cmd->add_option("--input", input_path, "Kernel file")->required();
  CLI::App* direct = app.add_subcommand("direct", "Direct quasilinear solve to t_final");
  CLI::App* ist_cmd = app.add_subcommand("ist", "Full spectral solve to t_final");
  CLI::App* compare = app.add_subcommand("compare", "Spectral vs direct solve");
  CLI::App* vlax = app.add_subcommand("verify-lax", "Compatibility residual checks");
  vlax->add_option("--dt", dt_arg, "Snapshot spacing (default grid step)");
  CLI::App* conv = app.add_subcommand("convergence", "Round-trip order study");
  conv->add_option("--sizes", sizes_arg, "Comma separated grid sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  const ist::ScenarioConfig cfg = make_config(g);

  if (forward->parsed()) {
    const ist::Potential pot = cfg.make_potential();
    const ist::ScatteringData scat = ist::forward_scattering(pot, cfg.strict);
    const std::string path = out_path(g, "kernels" + data_ext(cfg));
    save_scat(cfg, path, scat);
    say(g, "wrote " + path);
  } else if (invert->parsed()) {
    const ist::ScatteringData scat = load_scat(cfg, input_path);
    const ist::ReconstructionResult rec =
        ist::reconstruct_potential(scat, cfg.make_grid());
    const std::string path = out_path(g, "potential" + data_ext(cfg));
    save_pot(cfg, path, rec.pot);
    say(g, "wrote " + path);
  } else if (evolve_cmd->parsed()) {
    const ist::ScatteringData scat = load_scat(cfg, input_path);
    ist::EvolutionOptions eopts;
    eopts.strict = cfg.strict;
    const ist::ScatteringData out = ist::evolve(scat, cfg.make_lax(), cfg.t_final, eopts);
    const std::string path = out_path(g, "kernels_evolved" + data_ext(cfg));
    save_scat(cfg, path, out);
    say(g, "wrote " + path);
  } else if (direct->parsed()) {
    ist::ThreeWaveOptions topts;
    topts.strict = cfg.strict;
    const ist::ThreeWaveResult res =
        ist::run_threewave(cfg.make_potential(), cfg.make_lax(), cfg.t_final, topts);
    const std::string path = out_path(g, "potential_direct" + data_ext(cfg));
    save_pot(cfg, path, res.pot);
    say(g, "wrote " + path);
  } else if (ist_cmd->parsed()) {
    const ist::IstResult res =
        ist::ist_solve(cfg.make_potential(), cfg.make_lax(), cfg.t_final, cfg.strict);
    const std::string path = out_path(g, "potential_ist" + data_ext(cfg));
    save_pot(cfg, path, res.recon.pot);
    write_text(out_path(g, "timings.txt"), res.timings.to_text());
    say(g, "wrote " + path);
  } else if (compare->parsed()) {
    const ist::CompareRun res = ist::run_compare(cfg);
    write_text(out_path(g, "report.txt"), res.report.to_text());
    write_text(out_path(g, "timings.txt"), res.timings.to_text());
    say(g, res.report.to_text());
    if (!res.report.pass)
      throw ist::ToleranceFailure("comparison exceeded tolerance: rel_l2_all = " +
                                  std::to_string(res.report.rel_l2_all));
  } else if (vlax->parsed()) {
    const ist::LaxReport rep = ist::verify_lax(cfg, dt_arg);
    write_text(out_path(g, "lax.txt"), rep.to_text());
    say(g, rep.to_text());
  } else if (conv->parsed()) {
    std::vector<int> sizes;
    std::stringstream ss(sizes_arg);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) sizes.push_back(std::stoi(tok));
    if (sizes.size() < 2) throw ist::UsageError("--sizes needs at least two entries");
    const ist::ConvergenceReport rep = ist::roundtrip_convergence(cfg, sizes);
    write_text(out_path(g, "convergence.txt"), rep.to_text());
    say(g, rep.to_text());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ist::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ist::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const ist::ToleranceFailure& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
