#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qfit/report.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

// Runs the installed binary, captures stdout, discards stderr.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QFIT_CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

qfit::json load_schema() {
    std::ifstream in(QFIT_SCHEMA_PATH);
    REQUIRE(in.good());
    return qfit::json::parse(in);
}

}  // namespace

TEST_CASE("analyze emits schema-valid JSON for representative states") {
    const qfit::json schema = load_schema();
    const std::vector<std::string> specs = {
        R"({"kind":"noon","n":4})",
        R"({"kind":"ghz_q","n":6,"q":0.02})",
        R"({"kind":"twin_fock","n":6})",
        R"({"kind":"ring_cluster","n":5})",
        R"({"kind":"singlet","n":4})",
    };
    for (const auto& s : specs) {
        const auto r = run_cli("analyze --spec '" + s + "'");
        CHECK(r.exit_code == 0);
        const qfit::json report = qfit::json::parse(r.out);
        std::string why;
        const bool ok = qfit::validate_schema(report, schema, &why);
        INFO("spec ", s, " schema violation: ", why);
        CHECK(ok);
    }
}

TEST_CASE("analyze output is byte identical across runs and echoes the seed") {
    const std::string args = R"(analyze --spec '{"kind":"ghz_q","n":5,"q":0.3}' --seed 7 --restarts 4)";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    CHECK(a.out.back() == '\n');

    const qfit::json report = qfit::json::parse(a.out);
    CHECK(report.at("seed").get<std::uint64_t>() == 7);
    CHECK(report.at("restarts").get<int>() == 4);
    CHECK(report.at("n_qubits").get<int>() == 5);
}

TEST_CASE("inline specs and spec files produce identical reports") {
    const std::string spec = R"({"kind":"ps","n":4})";
    const auto path = std::filesystem::temp_directory_path() / "qfit_cli_spec.json";
    {
        std::ofstream out(path);
        out << spec;
    }
    const auto inline_run = run_cli("analyze --spec '" + spec + "'");
    const auto file_run = run_cli("analyze --spec " + path.string());
    std::filesystem::remove(path);
    CHECK(inline_run.exit_code == 0);
    CHECK(file_run.exit_code == 0);
    CHECK(inline_run.out == file_run.out);
}

TEST_CASE("the table format renders the headline quantities") {
    const auto r = run_cli(R"(analyze --spec '{"kind":"noon","n":4}' --format table)");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("fq_clu") != std::string::npos);
    CHECK(r.out.find("lu_upper") != std::string::npos);
    CHECK(r.out.find("lu_lower") != std::string::npos);
    CHECK(r.out.find("useful_clu") != std::string::npos);
    CHECK(r.out.find("shot_noise_fq") != std::string::npos);
}

TEST_CASE("sweep writes the CSV grid with the documented header") {
    const auto path = std::filesystem::temp_directory_path() / "qfit_cli_sweep.csv";
    const auto r = run_cli("sweep --family ghz_q --n 4 --from 0 --to 1 --steps 11 --restarts 4 --out " +
                           path.string());
    CHECK(r.exit_code == 0);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "q,fq_clu,fq_lu_lower,fq_lu_upper,useful");

    int rows = 0;
    int useful = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.size() >= 5 && line.compare(line.size() - 5, 5, ",true") == 0) ++useful;
    }
    CHECK(rows == 11);
    // Interior window only: q = 0.1 .. 0.9 clear the threshold at N = 4.
    CHECK(useful == 9);
    std::filesystem::remove(path);
}

TEST_CASE("oracle checks pass and keep exit code zero") {
    const auto r = run_cli(R"(oracle --spec '{"kind":"linear_cluster","n":4}' --check stabilizer_sum)");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("result: PASS") != std::string::npos);

    const auto d = run_cli(R"(oracle --spec '{"kind":"star","n":4}' --check dense_reduction)");
    CHECK(d.exit_code == 0);
    CHECK(d.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("failure modes map to the documented exit codes") {
    CHECK(run_cli(R"(analyze --spec '{"kind":"bogus","n":4}')").exit_code == 2);
    CHECK(run_cli(R"(analyze --spec '{"kind":"noon"}')").exit_code == 2);
    CHECK(run_cli("analyze --spec '{not json'").exit_code == 2);
    CHECK(run_cli(R"(analyze --spec '{"kind":"noon","n":15}')").exit_code == 3);
    CHECK(run_cli("sweep --family ghz_q --n 4 --from 0 --to 1 --steps 3 --restarts 2 "
                  "--out /nonexistent_dir_qfit/out.csv")
              .exit_code == 4);
    CHECK(run_cli("").exit_code == 2);          // missing subcommand
    CHECK(run_cli("--help").exit_code == 0);    // help is not an error
}
