// Batch runner: hypercross <command> [--config PATH] [--out DIR] [--set key=value] ...
// Exit codes: 0 pass, 1 I/O or usage error, 2 tolerance failure, 3 contract violation.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hypercross/experiment.hpp>

int main(int argc, char** argv)
{
    using namespace hypercross;
    CLI::App app{"Sparse-grid trigonometric interpolation experiments"};
    std::string command;
    std::string config_path;
    std::string out_dir = "hypercross_out";
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<int> threads;
    std::vector<std::string> overrides;
    bool print_config = false;
    app.add_option("command", command, "interpolate | convergence | grid | norms | atlas")
        ->check(CLI::IsMember({"interpolate", "convergence", "grid", "norms", "atlas"}));
    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--tolerance", tolerance, "allowed |alpha_hat - alpha|");
    app.add_option("--threads", threads, "worker threads for sweeps");
    app.add_option("--set", overrides, "config override key=value (repeatable)");
    app.add_flag("--print-config", print_config, "print the resolved config and exit");
    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!command.empty()) cfg.command = command;
        for (const auto& a : overrides) apply_assignment(cfg, a);
        if (seed) cfg.seed = *seed;
        if (tolerance) cfg.tolerance = *tolerance;
        if (threads) cfg.threads = *threads;
        if (print_config) {
            std::cout << to_config_text(cfg);
            return 0;
        }
        const bool write = cfg.command != "atlas" || app.count("--out") > 0;
        const CommandResult res = run_command(cfg, out_dir, write);
        std::cout << res.summary;
        return res.exit_code;
    } catch (const contract_violation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 3;
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
