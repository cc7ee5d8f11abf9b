#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ma_radial/cli.hpp"

using namespace ma_radial;

namespace {

// MA_RADIAL_THREADS caps the OpenMP team; results do not depend on it
bool apply_thread_env() {
    const char* env = std::getenv("MA_RADIAL_THREADS");
    if (!env || !*env) return true;
    try {
        std::size_t pos = 0;
        const int t = std::stoi(env, &pos);
        if (pos != std::string(env).size() || t < 1) throw std::invalid_argument(env);
        set_thread_count(t);
        return true;
    } catch (const std::exception&) {
        std::cerr << "error: MA_RADIAL_THREADS must be a positive integer, got '" << env << "'\n";
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial Monge-Ampere solver and regularity analyzer"};
    app.require_subcommand(1);

    std::string config, out, solution;
    int n = 2, m = 1;

    auto* solve_cmd = app.add_subcommand("solve", "solve the configured problem and write the profile CSV");
    solve_cmd->add_option("--config", config, "key=value config file")->required();
    solve_cmd->add_option("--out", out, "output CSV")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "vanishing order, smoothness verdict and comparability");
    analyze_cmd->add_option("--config", config, "key=value config file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "re-check a solution CSV against its config");
    verify_cmd->add_option("--config", config, "key=value config file")->required();
    verify_cmd->add_option("--solution", solution, "CSV written by solve")->required();

    auto* demo_cmd = app.add_subcommand("demo", "built-in demonstrations");
    demo_cmd->require_subcommand(1);
    auto* homogeneous = demo_cmd->add_subcommand("homogeneous", "fit u = c r^p for f = (2t)^m");
    homogeneous->add_option("--n", n, "dimension")->required();
    homogeneous->add_option("--m", m, "power of 2t")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (!apply_thread_env()) return 1;

    if (solve_cmd->parsed()) return run_solve(config, out, std::cout, std::cerr);
    if (analyze_cmd->parsed()) return run_analyze(config, std::cout, std::cerr);
    if (verify_cmd->parsed()) return run_verify(config, solution, std::cout, std::cerr);
    if (homogeneous->parsed()) return run_demo_homogeneous(n, m, std::cout, std::cerr);
    return 1;
}
