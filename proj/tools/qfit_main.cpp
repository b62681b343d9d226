#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfit/config.hpp"
#include "qfit/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quantum Fisher information of N-qubit states under collective and local rotations"};
    app.require_subcommand(1);

    std::string spec_arg;
    std::string format = "json";
    std::string family;
    std::string out_path;
    std::string check;
    int restarts = 16;
    int n_qubits = 0;
    int steps = 0;
    std::uint64_t seed = 1;
    double from = 0.0;
    double to = 1.0;
    double resolution = 2.0;

    auto* analyze = app.add_subcommand("analyze", "Analyze one state and print a report");
    analyze->add_option("--spec", spec_arg, "State spec: inline JSON or a file path")->required();
    analyze->add_option("--restarts", restarts, "Optimizer restarts (default 16)");
    analyze->add_option("--seed", seed, "Seed for the optimizer restarts (default 1)");
    analyze->add_option("--format", format, "Output format (default json)")
        ->check(CLI::IsMember({"json", "table"}));

    auto* sweep = app.add_subcommand("sweep", "Usefulness sweep over a state family, written as CSV");
    sweep->add_option("--family", family, "State family (ghz_q)")->required();
    sweep->add_option("--n", n_qubits, "Number of qubits")->required();
    sweep->add_option("--from", from, "First q value")->required();
    sweep->add_option("--to", to, "Last q value")->required();
    sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--restarts", restarts, "Optimizer restarts (default 16)");
    sweep->add_option("--seed", seed, "Seed for the optimizer restarts (default 1)");

    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-check of a fast path");
    oracle->add_option("--spec", spec_arg, "State spec: inline JSON or a file path")->required();
    oracle->add_option("--check", check, "Which check to run")
        ->required()
        ->check(CLI::IsMember({"grid_lu", "dense_reduction", "stabilizer_sum"}));
    oracle->add_option("--resolution", resolution, "Grid pitch in degrees for grid_lu (default 2)");
    oracle->add_option("--restarts", restarts, "Optimizer restarts (default 16)");
    oracle->add_option("--seed", seed, "Seed for the optimizer restarts (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) {
            const auto spec = qfit::StateSpec::load(spec_arg);
            const auto report = qfit::analyze_report(spec, restarts, seed);
            if (format == "table") {
                std::cout << qfit::render_table(report);
            } else {
                std::cout << qfit::dump_report(report);
            }
            return 0;
        }
        if (*sweep) {
            std::ofstream out(out_path);
            if (!out) throw qfit::OutputPathError("cannot open output path: " + out_path);
            qfit::run_sweep(out, family, n_qubits, from, to, steps, restarts, seed);
            out.flush();
            if (!out) throw qfit::OutputPathError("failed writing output path: " + out_path);
            return 0;
        }
        const auto spec = qfit::StateSpec::load(spec_arg);
        const auto outcome = qfit::run_oracle(spec, check, resolution, restarts, seed);
        std::cout << outcome.text;
        return outcome.pass ? 0 : 1;
    } catch (const qfit::DimensionCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qfit::OutputPathError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
