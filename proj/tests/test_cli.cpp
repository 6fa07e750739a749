#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return IST_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

const std::string kSmall =
    "--override grid.n=32 --override evolution.t_final=0.25 "
    "--override potential.amplitude=0.1 --quiet ";

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("") == 1);                          // missing subcommand
  CHECK(run_cli("no-such-subcommand") == 1);        // unknown subcommand
  CHECK(run_cli("forward --override grid.n=48") == 1);  // invalid config value
  CHECK(run_cli("invert") == 1);                    // missing required --input
  CHECK(run_cli("forward --config /no/such/file.cfg") == 1);
}

TEST_CASE("forward, evolve and invert chain through files") {
  TempDir dir("ist_cli_chain");
  CHECK(run_cli(kSmall + "--output " + dir.str() + " forward") == 0);
  const fs::path kernels = dir.path / "kernels.txt";
  REQUIRE(fs::exists(kernels));

  CHECK(run_cli(kSmall + "--output " + dir.str() + " evolve --input " +
                kernels.string()) == 0);
  CHECK(fs::exists(dir.path / "kernels_evolved.txt"));

  CHECK(run_cli(kSmall + "--output " + dir.str() + " invert --input " +
                kernels.string()) == 0);
  CHECK(fs::exists(dir.path / "potential.txt"));
}

TEST_CASE("binary format round trip through the CLI") {
  TempDir dir("ist_cli_binary");
  const std::string fmt = kSmall + "--override io.format=binary ";
  CHECK(run_cli(fmt + "--output " + dir.str() + " forward") == 0);
  const fs::path kernels = dir.path / "kernels.bin";
  REQUIRE(fs::exists(kernels));
  CHECK(run_cli(fmt + "--output " + dir.str() + " invert --input " +
                kernels.string()) == 0);
  CHECK(fs::exists(dir.path / "potential.bin"));
}

TEST_CASE("compare succeeds on an easy scenario and fails a tight tolerance") {
  TempDir dir("ist_cli_compare");
  CHECK(run_cli(kSmall + "--output " + dir.str() + " compare") == 0);
  const std::string report = slurp(dir.path / "report.txt");
  CHECK(report.find("pass = true") != std::string::npos);
  CHECK(fs::exists(dir.path / "timings.txt"));

  // an unattainable tolerance must exit 3 and report pass = false
  CHECK(run_cli(kSmall + "--override compare.tolerance=1e-15 --output " + dir.str() +
                " compare") == 3);
  CHECK(slurp(dir.path / "report.txt").find("pass = false") != std::string::npos);
}

TEST_CASE("reports are byte-identical across thread counts") {
  TempDir d1("ist_cli_t1"), d8("ist_cli_t8");
  CHECK(run_cli(kSmall + "--threads 1 --output " + d1.str() + " compare") == 0);
  CHECK(run_cli(kSmall + "--threads 8 --output " + d8.str() + " compare") == 0);
  const std::string r1 = slurp(d1.path / "report.txt");
  const std::string r8 = slurp(d8.path / "report.txt");
  CHECK(!r1.empty());
  CHECK(r1 == r8);
}

TEST_CASE("verify-lax and convergence write their reports") {
  TempDir dir("ist_cli_misc");
  CHECK(run_cli(kSmall + "--output " + dir.str() + " verify-lax") == 0);
  const std::string lax = slurp(dir.path / "lax.txt");
  CHECK(lax.find("constraint_defect") != std::string::npos);

  CHECK(run_cli(kSmall + "--output " + dir.str() +
                " convergence --sizes 32,64") == 0);
  const std::string conv = slurp(dir.path / "convergence.txt");
  CHECK(conv.find("order =") != std::string::npos);
  CHECK(run_cli(kSmall + " convergence --sizes 32") == 1);
}
