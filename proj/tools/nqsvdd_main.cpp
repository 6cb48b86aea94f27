#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nqsvdd/experiment.hpp"

namespace {

void apply_overrides(nqsvdd::ExperimentConfig& config,
                     const std::vector<std::uint64_t>& seeds, bool noise,
                     const std::string& out, const std::string& data_dir,
                     const std::string& backend_file) {
    if (!seeds.empty()) config.seeds = seeds;
    if (noise) config.noise = true;
    if (!out.empty()) config.out_dir = out;
    if (!data_dir.empty()) config.data_dir = data_dir;
    if (!backend_file.empty())
        config.backend = nqsvdd::backend_from_json_file(backend_file);
}

void print_rows(const nqsvdd::RunOutput& out) {
    for (const auto& r : out.rows)
        std::printf("%s %s target=%d seed=%llu auc=%.4f params=%d (%.1fs)\n",
                    r.dataset.c_str(), r.variant.c_str(), r.target,
                    static_cast<unsigned long long>(r.seed), r.auc, r.params,
                    r.wall_time_s);
    if (!out.results_path.empty())
        std::printf("results: %s\n", out.results_path.c_str());
    if (!out.summary_path.empty())
        std::printf("summary: %s\n", out.summary_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NQSVDD one-class classification experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, data_dir, backend_file, axis;
    std::vector<std::uint64_t> seeds;
    std::vector<int> axis_values;
    bool noise = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config JSON")
            ->required();
        cmd->add_option("--seeds", seeds, "override seeds")->delimiter(',');
        cmd->add_flag("--noise", noise, "enable the backend noise model");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--data-dir", data_dir, "dataset root directory");
        cmd->add_option("--backend", backend_file,
                        "backend noise parameter JSON");
    };

    CLI::App* run = app.add_subcommand("run", "train and evaluate one config");
    add_common(run);

    CLI::App* sweep =
        app.add_subcommand("sweep", "repeat a config along one model axis");
    add_common(sweep);
    sweep->add_option("--axis", axis, "latent-dim | embed-layers")->required();
    sweep->add_option("--values", axis_values, "axis values")
        ->delimiter(',')
        ->required();

    CLI::App* exp = app.add_subcommand(
        "export-latent", "dump 2-D latent scatter data before/after training");
    add_common(exp);

    CLI11_PARSE(app, argc, argv);

    try {
        nqsvdd::ExperimentConfig config =
            nqsvdd::ExperimentConfig::from_json_file(config_path);
        apply_overrides(config, seeds, noise, out_dir, data_dir, backend_file);

        if (run->parsed()) {
            print_rows(nqsvdd::run_experiment(config));
        } else if (sweep->parsed()) {
            print_rows(nqsvdd::sweep_experiment(config, axis, axis_values));
        } else {
            print_rows(nqsvdd::export_latent2d(config));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
