#pragma once

#include "nqsvdd/svdd.hpp"

namespace nqsvdd {

/// Fully serializable experiment description; a resolved config written to
/// a manifest reruns bitwise-identically (wall-clock timings aside).
struct ExperimentConfig {
    std::string dataset = "toy";
    std::string variant = "nqsvdd";
    std::vector<int> targets{0};
    std::vector<std::uint64_t> seeds{0};

    int steps = -1;
    int batch = -1;
    int train_samples = -1;
    int test_target = -1;
    int test_outlier = -1;
    int outliers_per_class = -1;

    double lr_max = 0.05;
    double lr_min = 0.005;
    int restart_period = 500;
    double lambda = 1e-6;

    int latent_dim = -1;   // -1: dataset default
    int embed_layers = 3;

    bool noise = false;
    BackendParams backend;

    std::string data_dir;
    std::string out_dir = "results";

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;

    /// Fill dataset-dependent defaults; idempotent.
    void resolve_defaults();

    TaskSizes task_sizes() const;
    std::string config_hash() const;  // sha1 of the resolved json
};

struct RunRow {
    std::string dataset, variant;
    int target = 0;
    std::uint64_t seed = 0;
    double auc = 0.0;
    int params = 0;
    double wall_time_s = 0.0;
};

struct RunOutput {
    std::vector<RunRow> rows;
    std::string manifest_path;
    std::string results_path;
    std::string summary_path;
};

RunOutput run_experiment(const ExperimentConfig& config);

/// One run_experiment per axis value ("latent-dim" or "embed-layers"),
/// each in its own subdirectory, plus a combined sweep summary.
RunOutput sweep_experiment(const ExperimentConfig& config,
                           const std::string& axis,
                           const std::vector<int>& values);

/// Scatter data behind the 2-D latent figures: (x, y, label, split) for
/// every train/test row at iteration 0 and after training. Requires (and
/// forces) latent_dim == 2; any other configured value is rejected.
RunOutput export_latent2d(const ExperimentConfig& config);

/// Versioned text checkpoint: tensor shapes plus round-trip-exact values.
void save_checkpoint(const SvddModel& model, const std::string& path);
void load_checkpoint(SvddModel& model, const std::string& path);

BackendParams backend_from_json_file(const std::string& path);

/// Synthetic two-Gaussian task used by the toy dataset and the test suite.
OccTask make_toy_task(std::uint64_t seed, const TaskSizes& sizes);

}  // namespace nqsvdd
