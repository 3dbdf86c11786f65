// End-to-end checks of the command-line interface: exit codes, output
// formats, and file handling. The binary path arrives via CVTELEPORT_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string binary_path() {
    const char* path = std::getenv("CVTELEPORT_BIN");
    REQUIRE_MESSAGE(path != nullptr, "CVTELEPORT_BIN must point at the CLI binary");
    return path;
}

int run_command(const std::string& args) {
    const std::string command = "'" + binary_path() + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string capture(const std::string& args, const std::string& tag) {
    const std::string path = "/tmp/cvteleport_cli_" + tag + ".out";
    const std::string command = "'" + binary_path() + "' " + args + " > " + path + " 2>/dev/null";
    REQUIRE(std::system(command.c_str()) != -1);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::remove(path.c_str());
    return buffer.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("run exits cleanly and prints the metrics") {
    CHECK(run_command("run --q 0.5 --r 0") == 0);
    const std::string text = capture("run --q 0.5 --r 0", "run");
    CHECK(text.find("nu_pipeline") != std::string::npos);
    CHECK(text.find("0.7892931470571") != std::string::npos);
}

TEST_CASE("run machine output is valid JSON at full precision") {
    const std::string payload = capture("run --q 0.5 --r 0 --format machine", "machine");
    const auto parsed = nlohmann::json::parse(payload);
    CHECK(parsed["config"]["q"].get<double>() == 0.5);
    CHECK(parsed["metrics"]["nu_closed_form"].get<double>() ==
          doctest::Approx(0.78929314705714744).epsilon(1e-15));
    CHECK(parsed["sigma_shared"]["entries"].size() == 64);
}

TEST_CASE("argument errors exit with code 2") {
    CHECK(run_command("run --convention bogus") == 2);
    CHECK(run_command("run --q -1") == 2);
    CHECK(run_command("sweep --q-steps 0 --out /tmp/cvteleport_bad_grid.csv") == 2);
    CHECK(run_command("definitely-not-a-command") == 2);
    CHECK(run_command("") == 2);  // a subcommand is required
    CHECK(run_command("--help") == 0);
}

TEST_CASE("sweep writes deterministic CSV and flags I/O failures") {
    CHECK(run_command("sweep --out /nonexistent-dir/foo.csv --q-steps 2 --r-steps 2") == 3);

    const std::string path1 = "/tmp/cvteleport_sweep_a.csv";
    const std::string path2 = "/tmp/cvteleport_sweep_b.csv";
    CHECK(run_command("sweep --q-steps 5 --r-steps 5 --out " + path1) == 0);
    CHECK(run_command("sweep --q-steps 5 --r-steps 5 --out " + path2) == 0);
    const std::string first = read_file(path1);
    CHECK(first == read_file(path2));
    CHECK(first.rfind("q,r,nu_minus,log_negativity,fidelity,convention\n", 0) == 0);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("verify reports the documented red check and exits 1") {
    // One hard check is expected to fail: the pipeline spectrum shows no
    // entanglement at (q=2, r=0.25); see README "Known result".
    CHECK(run_command("verify") == 1);
    const std::string text = capture("verify", "verify");
    CHECK(text.find("entanglement-threshold-entangled-point") != std::string::npos);
    CHECK(text.find("hard failures: 1") != std::string::npos);
    CHECK(text.find("resolved B2 input order: x15 x16 x6 x5 x7 x8") != std::string::npos);

    const std::string machine = capture("verify --format machine", "verify_machine");
    const auto parsed = nlohmann::json::parse(machine);
    CHECK(parsed["hard_failures"].get<int>() == 1);
    CHECK(parsed["eq11_vs_eq14_discrepancy"].get<double>() > 0.0);
}
