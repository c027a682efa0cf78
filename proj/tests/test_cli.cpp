// End-to-end checks of the command-line tool: exit codes, printed summary
// values, report emission, and byte-identical reruns under a fixed seed.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "ps_cli_stdout.txt";
  const std::string cmd = std::string(PHASESPACE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream is(out);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("wigner subcommand prints the fock(1) summary") {
  const RunResult r = run_cli("wigner --state fock:1 --hbar 1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("L1 mass:        1.426") != std::string::npos);
  CHECK(r.stdout_text.find("purity:         1") != std::string::npos);

  const RunResult r0 = run_cli("wigner --state fock:0");
  CHECK(r0.exit_code == 0);
  CHECK(r0.stdout_text.find("purity:         1") != std::string::npos);
}

TEST_CASE("wigner subcommand exports fields") {
  const fs::path csv = fs::temp_directory_path() / "ps_cli_field.csv";
  const RunResult r = run_cli("wigner --state gauss:1.5 --out " + csv.string() +
                              " --format csv");
  CHECK(r.exit_code == 0);
  std::ifstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "x,p,value");
  fs::remove(csv);

  const fs::path bin = fs::temp_directory_path() / "ps_cli_field.bin";
  CHECK(run_cli("wigner --state fock:2 --out " + bin.string() + " --format bin").exit_code == 0);
  std::ifstream bs(bin, std::ios::binary);
  char magic[8];
  bs.read(magic, 8);
  CHECK(std::string(magic, 8) == "PSFLD001");
  fs::remove(bin);
}

TEST_CASE("malformed state specs exit with code 2") {
  CHECK(run_cli("wigner --state '{\"type\":\"nope\"}'").exit_code == 2);
  CHECK(run_cli("wigner --state fock:99").exit_code == 2);
  CHECK(run_cli("wigner --state @/does/not/exist.json").exit_code == 2);
}

TEST_CASE("aliased grids exit with the resolution code") {
  CHECK(run_cli("wigner --state fock:10 --grid-n 32").exit_code == 3);
}

TEST_CASE("verify: clean run exits 0, out-of-range parameters exit 4") {
  const RunResult ok = run_cli("verify --check renyi --alpha 2 --states fock:0");
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text.find("equalities:   1") != std::string::npos);

  const RunResult bad = run_cli("verify --check new-ineq --q 2.5 --states fock:0,fock:1");
  CHECK(bad.exit_code == 4);
  CHECK(bad.stdout_text.find("range error") != std::string::npos);
}

TEST_CASE("verify emits canonical, reproducible reports") {
  const fs::path a = fs::temp_directory_path() / "ps_cli_a.json";
  const fs::path b = fs::temp_directory_path() / "ps_cli_b.json";
  const std::string args = "verify --check entropy --check mixed-lq --states "
                           "fock:0,fock:1,mix:seed3 --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string()).exit_code == 0);
  const std::string ja = slurp(a), jb = slurp(b);
  CHECK(ja == jb);  // byte-identical
  CHECK(ja.find("\"name\": \"entropy\"") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("probe minimize and concavity run end to end") {
  const RunResult m = run_cli("probe minimize --family gaussian --budget 60 --seed 2");
  CHECK(m.exit_code == 0);
  CHECK(m.stdout_text.find("gap to proved") != std::string::npos);

  const RunResult c = run_cli("probe concavity --n 4");
  CHECK(c.exit_code == 0);
  CHECK(c.stdout_text.find("Sigma") != std::string::npos);

  CHECK(run_cli("probe minimize --family unknown --budget 60").exit_code == 2);
}
