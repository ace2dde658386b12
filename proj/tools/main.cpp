#include "heatlab/config.hpp"
#include "heatlab/parallel.hpp"
#include "heatlab/scenarios.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"heatlab: nonlocal heat-equation laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir, plot_dir;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--out", out_dir, "output directory for report/profiles");
    run->add_option("--threads", threads, "worker thread cap (0 = hardware)");

    CLI::App* plot = app.add_subcommand("plot", "render SVG plots for a run directory");
    plot->add_option("dir", plot_dir, "directory containing profiles/*.csv")->required();

    app.add_subcommand("print-schema", "print the config file schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("print-schema")) {
            std::cout << heatlab::config_schema();
            return 0;
        }
        if (app.got_subcommand("plot")) {
            heatlab::emit_plots(plot_dir);
            std::cout << "plots written under " << plot_dir << "/plots\n";
            return 0;
        }
        heatlab::set_max_threads(threads);
        heatlab::ExperimentConfig cfg = heatlab::parse_config_file(config_path);
        const std::string dir = !out_dir.empty() ? out_dir : cfg.out_dir;
        const auto t0 = std::chrono::steady_clock::now();
        heatlab::RunOutcome outcome = heatlab::run_experiment(cfg, dir);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (dir.empty()) {
            std::cout << heatlab::render_json(outcome.report);
        } else {
            std::cout << "report written to " << dir << "/report.json\n";
        }
        // Wall time goes to stderr only, so report.json stays byte-identical
        // across reruns.
        std::cerr << "scenario " << cfg.scenario << " finished in " << seconds
                  << " s: " << (outcome.pass ? "pass" : "FAIL") << "\n";
        return outcome.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
