#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nqsvdd/experiment.hpp"

using namespace nqsvdd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("nqsvdd_exp_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig toy_config(const std::string& out) {
    ExperimentConfig c;
    c.dataset = "toy";
    c.variant = "nqsvdd";
    c.targets = {0};
    c.seeds = {1, 2};
    c.steps = 25;
    c.batch = 8;
    c.train_samples = 32;
    c.test_target = 12;
    c.test_outlier = 12;
    c.embed_layers = 1;
    c.restart_period = 25;
    c.out_dir = out;
    return c;
}

// Strip the wall_time_s column (the one non-deterministic field).
std::string drop_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        out << line.substr(0, pos) << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("config json round trip keeps every field") {
    ExperimentConfig c = toy_config("somewhere");
    c.noise = true;
    c.backend.p_depol2 = 0.01;
    c.lambda = 1e-5;
    ExperimentConfig d = ExperimentConfig::from_json_text(c.to_json_text());
    CHECK(d.dataset == c.dataset);
    CHECK(d.seeds == c.seeds);
    CHECK(d.steps == c.steps);
    CHECK(d.noise == c.noise);
    CHECK(d.backend.p_depol2 == c.backend.p_depol2);
    CHECK(d.lambda == c.lambda);
    CHECK(d.to_json_text() == c.to_json_text());
    CHECK(d.config_hash() == c.config_hash());
}

TEST_CASE("run writes manifest first, results and summary, model manifests") {
    TempDir tmp("run");
    ExperimentConfig c = toy_config(tmp.path.string());
    RunOutput out = run_experiment(c);

    CHECK(out.rows.size() == 2);
    CHECK(fs::exists(out.manifest_path));
    CHECK(fs::exists(out.results_path));
    CHECK(fs::exists(out.summary_path));
    CHECK(fs::exists(tmp.path / "models" / "toy_nqsvdd_t0_s1.json"));
    CHECK(fs::exists(tmp.path / "models" / "toy_nqsvdd_t0_s1.ckpt"));

    std::string results = slurp(out.results_path);
    CHECK(results.find("dataset,variant,target,seed,auc,params,wall_time_s") ==
          0);
    CHECK(results.find("toy,nqsvdd,0,1,") != std::string::npos);
    CHECK(results.find("toy,nqsvdd,0,2,") != std::string::npos);

    // params column equals count_parameters for the variant.
    auto pb = count_parameters(make_model_spec("toy", Variant::Nqsvdd, -1, 1));
    CHECK(out.rows.front().params == pb.total());

    // Model manifest carries observables, center, r2star, param breakdown.
    std::string mm = slurp((tmp.path / "models" / "toy_nqsvdd_t0_s1.json").string());
    CHECK(mm.find("\"observables\"") != std::string::npos);
    CHECK(mm.find("\"center\"") != std::string::npos);
    CHECK(mm.find("\"r2star\"") != std::string::npos);
    CHECK(mm.find("\"config_hash\"") != std::string::npos);
}

TEST_CASE("rerunning a manifest reproduces results modulo wall time") {
    TempDir a("rerun_a"), b("rerun_b");
    ExperimentConfig c = toy_config(a.path.string());
    RunOutput first = run_experiment(c);

    // Rerun from the manifest file, redirected to a fresh directory.
    ExperimentConfig again =
        ExperimentConfig::from_json_file(first.manifest_path);
    again.out_dir = b.path.string();
    RunOutput second = run_experiment(again);

    CHECK(drop_wall_time(slurp(first.results_path)) ==
          drop_wall_time(slurp(second.results_path)));
    CHECK(slurp(first.summary_path) == slurp(second.summary_path));
}

TEST_CASE("dsvdd has more parameters than nqsvdd in every shipped config") {
    for (const char* ds : {"mnist", "fashion", "credit", "network"}) {
        auto nq = count_parameters(make_model_spec(ds, Variant::Nqsvdd));
        auto dc = count_parameters(make_model_spec(ds, Variant::Dsvdd));
        CHECK(nq.total() < dc.total());
    }
}

TEST_CASE("summary aggregates match recomputation from per-seed rows") {
    TempDir tmp("summary");
    ExperimentConfig c = toy_config(tmp.path.string());
    c.seeds = {1, 2, 3};
    RunOutput out = run_experiment(c);

    double mean = 0.0;
    for (const auto& r : out.rows) mean += r.auc;
    mean /= 3.0;
    double var = 0.0;
    for (const auto& r : out.rows) var += (r.auc - mean) * (r.auc - mean);
    double sd = std::sqrt(var / 2.0);

    std::string summary = slurp(out.summary_path);
    char want[64];
    std::snprintf(want, sizeof(want), "toy,nqsvdd,0,3,%.6f,%.6f", mean, sd);
    CHECK(summary.find(want) != std::string::npos);
}

TEST_CASE("sweep: per-value directories and a combined summary") {
    TempDir tmp("sweep");
    ExperimentConfig c = toy_config(tmp.path.string());
    c.seeds = {1};
    c.steps = 10;
    RunOutput out = sweep_experiment(c, "latent-dim", {2, 3});
    CHECK(out.rows.size() == 2);
    CHECK(fs::exists(tmp.path / "latent-dim=2" / "results.csv"));
    CHECK(fs::exists(tmp.path / "latent-dim=3" / "results.csv"));
    std::string summary = slurp(out.summary_path);
    CHECK(summary.find("latent-dim,2,toy,nqsvdd") != std::string::npos);
    CHECK(summary.find("latent-dim,3,toy,nqsvdd") != std::string::npos);

    CHECK_THROWS_AS(sweep_experiment(c, "bogus", {1}), StructuralError);

    // Single-value sweep degenerates to run(): same per-seed aucs.
    TempDir tmp2("sweep1");
    ExperimentConfig c2 = toy_config(tmp2.path.string());
    c2.seeds = {1};
    c2.steps = 10;
    RunOutput single = sweep_experiment(c2, "embed-layers", {1});
    TempDir tmp3("runref");
    ExperimentConfig c3 = toy_config(tmp3.path.string());
    c3.seeds = {1};
    c3.steps = 10;
    c3.embed_layers = 1;
    RunOutput ref = run_experiment(c3);
    CHECK(single.rows.front().auc == ref.rows.front().auc);
}

TEST_CASE("export-latent: rejects d' != 2 and emits bounded scatter data") {
    TempDir tmp("latent");
    ExperimentConfig c = toy_config(tmp.path.string());
    c.steps = 15;
    c.latent_dim = 3;
    CHECK_THROWS_AS(export_latent2d(c), StructuralError);

    c.latent_dim = -1;  // forced to 2
    RunOutput out = export_latent2d(c);
    CHECK(out.rows.size() == 1);
    for (const char* f : {"latent2d_iter0.csv", "latent2d_trained.csv"}) {
        std::string text = slurp((tmp.path / f).string());
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        CHECK(line == "x,y,label,split");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            double x, y;
            char label[16], split[16];
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%15[^,],%15s", &x, &y,
                                label, split) == 4);
            CHECK(x >= -1.0);
            CHECK(x <= 1.0);
            CHECK(y >= -1.0);
            CHECK(y <= 1.0);
        }
        CHECK(rows == 32 + 24);  // train + test rows
    }
}

TEST_CASE("checkpoint: save and load restore the model exactly") {
    TempDir tmp("ckpt");
    TaskSizes sizes;
    sizes.train = 16;
    sizes.test_target = 6;
    sizes.test_outlier = 6;
    OccTask task = make_toy_task(9, sizes);

    SvddModel model(make_model_spec("toy", Variant::Nqsvdd, -1, 1), 9);
    TrainConfig tc;
    tc.steps = 8;
    tc.batch = 8;
    model.train(task.train_x, tc);

    std::string path = (tmp.path / "m.ckpt").string();
    save_checkpoint(model, path);

    SvddModel fresh(make_model_spec("toy", Variant::Nqsvdd, -1, 1), 9999);
    load_checkpoint(fresh, path);
    CHECK(fresh.theta() == model.theta());
    CHECK(fresh.center() == model.center());
    CHECK(fresh.r2star() == model.r2star());
    for (std::size_t w = 0; w < model.net().weights().size(); ++w)
        CHECK(fresh.net().weights()[w].v == model.net().weights()[w].v);

    // Identical scores after restore.
    for (const auto& x : task.test_x)
        CHECK(fresh.score(x).first == model.score(x).first);

    CHECK_THROWS_AS(load_checkpoint(fresh, (tmp.path / "nope.ckpt").string()),
                    FormatError);
}

TEST_CASE("toy dataset runs the qsvdd guard") {
    CHECK_THROWS_AS(make_model_spec("toy", Variant::QsvddAmp), StructuralError);
    CHECK_THROWS_AS(make_model_spec("credit", Variant::QsvddZz),
                    StructuralError);
}
