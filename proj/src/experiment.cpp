#include "nqsvdd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nqsvdd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json backend_to_json(const BackendParams& b) {
    return json{{"p_depol2", b.p_depol2},
                {"gate_len_1q_ns", b.gate_len_1q_ns},
                {"gate_len_2q_ns", b.gate_len_2q_ns},
                {"t1_us", b.t1_us},
                {"t2_us", b.t2_us}};
}

BackendParams backend_from_json(const json& j) {
    BackendParams b;
    b.p_depol2 = j.value("p_depol2", b.p_depol2);
    b.gate_len_1q_ns = j.value("gate_len_1q_ns", b.gate_len_1q_ns);
    b.gate_len_2q_ns = j.value("gate_len_2q_ns", b.gate_len_2q_ns);
    b.t1_us = j.value("t1_us", b.t1_us);
    b.t2_us = j.value("t2_us", b.t2_us);
    b.validate();
    return b;
}

}  // namespace

BackendParams backend_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open backend file " + path);
    json j;
    in >> j;
    return backend_from_json(j);
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("config")) j = j["config"];  // accept a manifest as input

    ExperimentConfig c;
    c.dataset = j.value("dataset", c.dataset);
    c.variant = j.value("variant", c.variant);
    if (j.contains("targets")) {
        if (j["targets"].is_string() && j["targets"] == "all") {
            c.targets.clear();
            for (int t = 0; t <= 9; ++t) c.targets.push_back(t);
        } else {
            c.targets = j["targets"].get<std::vector<int>>();
        }
    }
    if (j.contains("seeds"))
        c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    c.steps = j.value("steps", c.steps);
    c.batch = j.value("batch", c.batch);
    c.train_samples = j.value("train_samples", c.train_samples);
    c.test_target = j.value("test_target", c.test_target);
    c.test_outlier = j.value("test_outlier", c.test_outlier);
    c.outliers_per_class = j.value("outliers_per_class", c.outliers_per_class);
    c.lr_max = j.value("lr_max", c.lr_max);
    c.lr_min = j.value("lr_min", c.lr_min);
    c.restart_period = j.value("restart_period", c.restart_period);
    c.lambda = j.value("lambda", c.lambda);
    c.latent_dim = j.value("latent_dim", c.latent_dim);
    c.embed_layers = j.value("embed_layers", c.embed_layers);
    c.noise = j.value("noise", c.noise);
    if (j.contains("backend")) c.backend = backend_from_json(j["backend"]);
    c.data_dir = j.value("data_dir", c.data_dir);
    c.out_dir = j.value("out_dir", c.out_dir);
    return c;
}

std::string ExperimentConfig::to_json_text() const {
    json j{{"dataset", dataset},
           {"variant", variant},
           {"targets", targets},
           {"seeds", seeds},
           {"steps", steps},
           {"batch", batch},
           {"train_samples", train_samples},
           {"test_target", test_target},
           {"test_outlier", test_outlier},
           {"outliers_per_class", outliers_per_class},
           {"lr_max", lr_max},
           {"lr_min", lr_min},
           {"restart_period", restart_period},
           {"lambda", lambda},
           {"latent_dim", latent_dim},
           {"embed_layers", embed_layers},
           {"noise", noise},
           {"backend", backend_to_json(backend)},
           {"data_dir", data_dir},
           {"out_dir", out_dir}};
    return j.dump(2);
}

void ExperimentConfig::resolve_defaults() {
    const bool image = dataset == "mnist" || dataset == "fashion";
    if (steps < 0) steps = dataset == "toy" ? 200 : 1500;
    if (batch < 0) batch = dataset == "toy" ? 16 : 32;
    if (train_samples < 0) train_samples = dataset == "toy" ? 200 : 1000;
    if (test_target < 0) {
        if (image)
            test_target = 100;
        else if (dataset == "credit")
            test_target = 492;
        else if (dataset == "network")
            test_target = 2180;
        else
            test_target = 100;
    }
    if (image) {
        if (outliers_per_class < 0) outliers_per_class = 10;
        test_outlier = 9 * outliers_per_class;
    } else if (test_outlier < 0) {
        if (dataset == "credit")
            test_outlier = 492;
        else if (dataset == "network")
            test_outlier = 2180;
        else
            test_outlier = 100;
    }
    if (latent_dim < 0) {
        ModelSpec probe = make_model_spec(dataset, variant_from_string(variant),
                                          -1, embed_layers);
        latent_dim = probe.latent_dim;
    }
    if (!image && outliers_per_class < 0) outliers_per_class = 0;
}

TaskSizes ExperimentConfig::task_sizes() const {
    TaskSizes s;
    s.train = train_samples;
    s.test_target = test_target;
    s.test_outlier = test_outlier;
    s.outliers_per_class = outliers_per_class;
    return s;
}

std::string ExperimentConfig::config_hash() const {
    return sha1_hex(to_json_text());
}

OccTask make_toy_task(std::uint64_t seed, const TaskSizes& sizes) {
    Rng rng(seed);
    auto cluster = [&rng](double cx, double cy, double s, int n,
                          std::vector<std::vector<double>>& out) {
        for (int i = 0; i < n; ++i)
            out.push_back({cx + s * rng.normal(), cy + s * rng.normal()});
    };

    OccTask task;
    task.dataset = "toy";
    task.target_label = 0;
    task.seed = seed;
    task.input_shape = {2};
    // Clusters are generated directly inside the unit square, 13 sigma
    // apart and off the diagonal, and used as-is (identity scale bounds).
    // Re-fitting min-max bounds on a compact Gaussian would stretch the
    // target cloud across the whole square and clip the outliers onto its
    // boundary, which destroys the separation the task exists to verify.
    cluster(0.3, 0.3, 0.03, sizes.train, task.train_x);

    std::vector<std::vector<double>> test_target, test_outlier;
    cluster(0.3, 0.3, 0.03, sizes.test_target, test_target);
    cluster(0.8, 0.2, 0.03, sizes.test_outlier, test_outlier);
    for (auto& r : test_target) {
        task.test_x.push_back(std::move(r));
        task.test_is_outlier.push_back(0);
    }
    for (auto& r : test_outlier) {
        task.test_x.push_back(std::move(r));
        task.test_is_outlier.push_back(1);
    }
    for (auto& r : task.test_x)
        for (auto& v : r) v = std::clamp(v, 0.0, 1.0);
    task.scale_min = {0.0, 0.0};
    task.scale_max = {1.0, 1.0};
    return task;
}

namespace {

std::string data_path(const ExperimentConfig& c, const std::string& rel) {
    std::string root = c.data_dir;
    if (root.empty()) {
        const char* env = std::getenv("NQSVDD_DATA_DIR");
        if (env) root = env;
    }
    if (root.empty())
        throw FormatError("no data directory configured (--data-dir or "
                          "NQSVDD_DATA_DIR)");
    return (fs::path(root) / rel).string();
}

std::string first_existing(const ExperimentConfig& c,
                           const std::vector<std::string>& candidates) {
    for (const auto& rel : candidates) {
        std::string p = data_path(c, rel);
        if (fs::exists(p)) return p;
    }
    throw FormatError("dataset file not found under the data directory "
                      "(tried: " + candidates.front() + " ...)");
}

struct DatasetBundle {
    bool image = false;
    ImageSet train_images, test_images;
    Table table;
};

DatasetBundle load_dataset(const ExperimentConfig& c) {
    DatasetBundle b;
    if (c.dataset == "toy") return b;
    if (c.dataset == "mnist" || c.dataset == "fashion") {
        b.image = true;
        std::string sub = c.dataset == "mnist" ? "mnist" : "fashion-mnist";
        b.train_images =
            load_idx(first_existing(c, {sub + "/train-images-idx3-ubyte",
                                        sub + "/train-images.idx3-ubyte"}),
                     first_existing(c, {sub + "/train-labels-idx1-ubyte",
                                        sub + "/train-labels.idx1-ubyte"}));
        b.test_images =
            load_idx(first_existing(c, {sub + "/t10k-images-idx3-ubyte",
                                        sub + "/t10k-images.idx3-ubyte"}),
                     first_existing(c, {sub + "/t10k-labels-idx1-ubyte",
                                        sub + "/t10k-labels.idx1-ubyte"}));
        return b;
    }
    if (c.dataset == "credit") {
        CsvSchema schema;
        for (int i = 1; i <= 28; ++i)
            schema.feature_columns.push_back("V" + std::to_string(i));
        schema.label_column = "Class";
        b.table = load_csv(first_existing(c, {"creditcard.csv",
                                              "credit/creditcard.csv"}),
                           schema);
        return b;
    }
    if (c.dataset == "network") {
        CsvSchema schema;
        schema.label_column = "Label";
        schema.label_substrings = {{"BENIGN", 0},
                                   {"Brute Force", 1},
                                   {"Sql Injection", 2},
                                   {"XSS", 3}};
        b.table = load_csv(
            first_existing(
                c, {"Thursday-WorkingHours-Morning-WebAttacks.pcap_ISCX.csv",
                    "network/Thursday-WorkingHours-Morning-WebAttacks.pcap_"
                    "ISCX.csv",
                    "cicids2017-thursday-webattacks.csv"}),
            schema);
        return b;
    }
    throw StructuralError("unknown dataset: " + c.dataset);
}

OccTask build_task(const ExperimentConfig& c, const DatasetBundle& b,
                   int target, std::uint64_t seed) {
    TaskSizes sizes = c.task_sizes();
    if (c.dataset == "toy") return make_toy_task(seed, sizes);
    if (b.image)
        return make_task_images(b.train_images, b.test_images, c.dataset,
                                target, seed, sizes);
    // Tabular: the web-attack classes (labels 1..3) merge into the outlier
    // pool inside make_task_table by target exclusion.
    return make_task_table(b.table, c.dataset, target, seed, sizes);
}

std::string run_tag(const ExperimentConfig& c, int target,
                    std::uint64_t seed) {
    std::ostringstream ss;
    ss << c.dataset << "_" << c.variant << "_t" << target << "_s" << seed;
    return ss.str();
}

json model_manifest(const ExperimentConfig& c, const SvddModel& model,
                    int target, std::uint64_t seed, double auc_value,
                    const TrainResult& tr) {
    ParamBreakdown pb = model.params_breakdown();
    json j{{"schema", "nqsvdd-model-manifest/1"},
           {"config_hash", c.config_hash()},
           {"dataset", c.dataset},
           {"variant", c.variant},
           {"target", target},
           {"seed", seed},
           {"noise", c.noise},
           {"observables", model.observable_names().names},
           {"center", model.center()},
           {"r2star", tr.r2star},
           {"auc", auc_value},
           {"params",
            {{"classical", pb.classical},
             {"embed", pb.embed},
             {"qcnn", pb.qcnn},
             {"quantum", pb.quantum()},
             {"total", pb.total()}}},
           {"loss_history", tr.loss_history}};
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

std::string csv_rows(const std::vector<RunRow>& rows) {
    std::ostringstream ss;
    ss << "dataset,variant,target,seed,auc,params,wall_time_s\n";
    for (const auto& r : rows) {
        char auc_buf[32], wall_buf[32];
        std::snprintf(auc_buf, sizeof(auc_buf), "%.6f", r.auc);
        std::snprintf(wall_buf, sizeof(wall_buf), "%.3f", r.wall_time_s);
        ss << r.dataset << "," << r.variant << "," << r.target << "," << r.seed
           << "," << auc_buf << "," << r.params << "," << wall_buf << "\n";
    }
    return ss.str();
}

std::string summary_rows(const std::vector<RunRow>& rows) {
    std::ostringstream ss;
    ss << "dataset,variant,target,n_seeds,mean_auc,std_auc\n";
    // Per-target aggregates in first-appearance order, then an "all" row
    // over the per-target means.
    std::vector<int> order;
    for (const auto& r : rows)
        if (std::find(order.begin(), order.end(), r.target) == order.end())
            order.push_back(r.target);

    std::vector<double> target_means;
    for (int t : order) {
        std::vector<double> aucs;
        for (const auto& r : rows)
            if (r.target == t) aucs.push_back(r.auc);
        double mean = 0.0;
        for (double a : aucs) mean += a;
        mean /= static_cast<double>(aucs.size());
        double var = 0.0;
        for (double a : aucs) var += (a - mean) * (a - mean);
        double sd = aucs.size() > 1
                        ? std::sqrt(var / static_cast<double>(aucs.size() - 1))
                        : 0.0;
        target_means.push_back(mean);
        char m[32], s[32];
        std::snprintf(m, sizeof(m), "%.6f", mean);
        std::snprintf(s, sizeof(s), "%.6f", sd);
        ss << rows.front().dataset << "," << rows.front().variant << "," << t
           << "," << aucs.size() << "," << m << "," << s << "\n";
    }
    if (target_means.size() > 1) {
        double mean = 0.0;
        for (double a : target_means) mean += a;
        mean /= static_cast<double>(target_means.size());
        double var = 0.0;
        for (double a : target_means) var += (a - mean) * (a - mean);
        double sd =
            std::sqrt(var / static_cast<double>(target_means.size() - 1));
        char m[32], s[32];
        std::snprintf(m, sizeof(m), "%.6f", mean);
        std::snprintf(s, sizeof(s), "%.6f", sd);
        ss << rows.front().dataset << "," << rows.front().variant << ",all,"
           << target_means.size() << "," << m << "," << s << "\n";
    }
    return ss.str();
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& input) {
    ExperimentConfig c = input;
    c.resolve_defaults();

    fs::create_directories(c.out_dir);
    fs::create_directories(fs::path(c.out_dir) / "models");

    RunOutput out;
    out.manifest_path = (fs::path(c.out_dir) / "manifest.json").string();
    json manifest{{"schema", "nqsvdd-run-manifest/1"},
                  {"config", json::parse(c.to_json_text())},
                  {"config_hash", c.config_hash()}};
    {
        ModelSpec probe = make_model_spec(
            c.dataset, variant_from_string(c.variant), c.latent_dim,
            c.embed_layers);
        if (probe.variant != Variant::Dsvdd) {
            manifest["observables"] =
                select_observables(probe.n_f, probe.latent_dim).names;
        }
    }
    write_text(out.manifest_path, manifest.dump(2) + "\n");

    DatasetBundle bundle = load_dataset(c);

    TrainConfig tc;
    tc.steps = c.steps;
    tc.batch = c.batch;
    tc.lr_max = c.lr_max;
    tc.lr_min = c.lr_min;
    tc.restart_period = c.restart_period;
    tc.lambda = c.lambda;

    for (int target : c.targets) {
        for (std::uint64_t seed : c.seeds) {
            auto t0 = std::chrono::steady_clock::now();
            OccTask task = build_task(c, bundle, target, seed);

            SvddModel model(make_model_spec(c.dataset,
                                            variant_from_string(c.variant),
                                            c.latent_dim, c.embed_layers),
                            seed);
            if (c.noise) model.enable_noise(c.backend);

            TrainResult tr = model.train(task.train_x, tc);

            std::vector<double> target_scores, outlier_scores;
            for (std::size_t i = 0; i < task.test_x.size(); ++i) {
                double s = model.score(task.test_x[i]).first;
                (task.test_is_outlier[i] ? outlier_scores : target_scores)
                    .push_back(s);
            }
            double auc_value = auc(target_scores, outlier_scores);
            double wall = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

            std::string tag = run_tag(c, target, seed);
            write_text((fs::path(c.out_dir) / "models" / (tag + ".json"))
                           .string(),
                       model_manifest(c, model, target, seed, auc_value, tr)
                               .dump(2) +
                           "\n");
            save_checkpoint(model, (fs::path(c.out_dir) / "models" /
                                    (tag + ".ckpt"))
                                       .string());

            out.rows.push_back({c.dataset, c.variant, target, seed, auc_value,
                                model.params_breakdown().total(), wall});
        }
    }

    out.results_path = (fs::path(c.out_dir) / "results.csv").string();
    write_text(out.results_path, csv_rows(out.rows));
    out.summary_path = (fs::path(c.out_dir) / "summary.csv").string();
    write_text(out.summary_path, summary_rows(out.rows));
    return out;
}

RunOutput sweep_experiment(const ExperimentConfig& input,
                           const std::string& axis,
                           const std::vector<int>& values) {
    if (axis != "latent-dim" && axis != "embed-layers")
        throw StructuralError("sweep axis must be latent-dim or embed-layers");
    if (values.empty()) throw StructuralError("sweep: no axis values");

    ExperimentConfig base = input;
    base.resolve_defaults();
    fs::create_directories(base.out_dir);

    RunOutput combined;
    std::ostringstream summary;
    summary << "axis,value,dataset,variant,target,n_seeds,mean_auc,std_auc\n";

    for (int v : values) {
        ExperimentConfig c = input;
        if (axis == "latent-dim")
            c.latent_dim = v;
        else
            c.embed_layers = v;
        c.out_dir = (fs::path(base.out_dir) /
                     (axis + "=" + std::to_string(v)))
                        .string();
        RunOutput r = run_experiment(c);
        combined.rows.insert(combined.rows.end(), r.rows.begin(),
                             r.rows.end());

        // Re-derive the per-target aggregate lines with the axis prefix.
        std::istringstream in(summary_rows(r.rows));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line))
            summary << axis << "," << v << "," << line << "\n";
    }

    combined.summary_path =
        (fs::path(base.out_dir) / "sweep_summary.csv").string();
    write_text(combined.summary_path, summary.str());
    return combined;
}

RunOutput export_latent2d(const ExperimentConfig& input) {
    ExperimentConfig c = input;
    if (c.latent_dim > 0 && c.latent_dim != 2)
        throw StructuralError("export-latent requires latent_dim == 2");
    c.latent_dim = 2;
    c.resolve_defaults();

    fs::create_directories(c.out_dir);
    fs::create_directories(fs::path(c.out_dir) / "models");
    RunOutput out;
    out.manifest_path = (fs::path(c.out_dir) / "manifest.json").string();
    json manifest{{"schema", "nqsvdd-latent2d-manifest/1"},
                  {"config", json::parse(c.to_json_text())},
                  {"config_hash", c.config_hash()}};
    write_text(out.manifest_path, manifest.dump(2) + "\n");

    DatasetBundle bundle = load_dataset(c);
    int target = c.targets.front();
    std::uint64_t seed = c.seeds.front();
    OccTask task = build_task(c, bundle, target, seed);

    SvddModel model(make_model_spec(c.dataset, variant_from_string(c.variant),
                                    2, c.embed_layers),
                    seed);
    if (c.noise) model.enable_noise(c.backend);

    auto dump_points = [&](const std::string& path) {
        std::ostringstream ss;
        ss << "x,y,label,split\n";
        auto emit = [&](std::span<const double> x, const char* label,
                        const char* split) {
            auto lat = model.latent_of(x);
            char xb[32], yb[32];
            std::snprintf(xb, sizeof(xb), "%.9f", lat[0]);
            std::snprintf(yb, sizeof(yb), "%.9f", lat[1]);
            ss << xb << "," << yb << "," << label << "," << split << "\n";
        };
        for (const auto& x : task.train_x) emit(x, "target", "train");
        for (std::size_t i = 0; i < task.test_x.size(); ++i)
            emit(task.test_x[i], task.test_is_outlier[i] ? "outlier" : "target",
                 "test");
        write_text(path, ss.str());
    };

    dump_points((fs::path(c.out_dir) / "latent2d_iter0.csv").string());

    TrainConfig tc;
    tc.steps = c.steps;
    tc.batch = c.batch;
    tc.lr_max = c.lr_max;
    tc.lr_min = c.lr_min;
    tc.restart_period = c.restart_period;
    tc.lambda = c.lambda;
    TrainResult tr = model.train(task.train_x, tc);

    dump_points((fs::path(c.out_dir) / "latent2d_trained.csv").string());

    std::vector<double> ts, os;
    for (std::size_t i = 0; i < task.test_x.size(); ++i)
        (task.test_is_outlier[i] ? os : ts)
            .push_back(model.score(task.test_x[i]).first);
    out.rows.push_back({c.dataset, c.variant, target, seed, auc(ts, os),
                        model.params_breakdown().total(), 0.0});
    write_text((fs::path(c.out_dir) / "models" / "latent2d_model.json").string(),
               model_manifest(c, model, target, seed, out.rows.front().auc, tr)
                       .dump(2) +
                   "\n");
    return out;
}

void save_checkpoint(const SvddModel& model, const std::string& path) {
    std::ostringstream ss;
    ss << "NQSVDD-CKPT v1\n";
    ss << "model " << model.spec().dataset << " "
       << variant_to_string(model.spec().variant) << " " << model.seed()
       << "\n";
    const auto& ws = model.net().weights();
    ss << "tensors " << ws.size() << "\n";
    for (const auto& w : ws) {
        ss << "tensor";
        for (int d : w.shape) ss << " " << d;
        ss << "\n";
        for (int i = 0; i < w.numel(); ++i)
            ss << (i ? " " : "") << format_double(w.v[i]);
        ss << "\n";
    }
    ss << "theta " << model.theta().size() << "\n";
    for (std::size_t i = 0; i < model.theta().size(); ++i)
        ss << (i ? " " : "") << format_double(model.theta()[i]);
    ss << "\n";
    ss << "center " << model.center().size() << "\n";
    for (std::size_t i = 0; i < model.center().size(); ++i)
        ss << (i ? " " : "") << format_double(model.center()[i]);
    ss << "\n";
    ss << "r2star " << (model.trained() ? format_double(model.r2star()) : "-1")
       << "\n";
    write_text(path, ss.str());
}

void load_checkpoint(SvddModel& model, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open checkpoint " + path);
    std::string line;
    std::getline(in, line);
    if (line != "NQSVDD-CKPT v1")
        throw FormatError("checkpoint: bad header in " + path);
    std::getline(in, line);  // model line, informational

    std::getline(in, line);
    std::istringstream hs(line);
    std::string word;
    std::size_t n_tensors;
    hs >> word >> n_tensors;
    if (word != "tensors") throw FormatError("checkpoint: expected tensors");
    if (n_tensors != model.net().weights().size())
        throw FormatError("checkpoint: tensor count mismatch");

    for (std::size_t t = 0; t < n_tensors; ++t) {
        std::getline(in, line);
        std::istringstream shape_line(line);
        shape_line >> word;
        if (word != "tensor") throw FormatError("checkpoint: expected tensor");
        std::vector<int> shape;
        int d;
        while (shape_line >> d) shape.push_back(d);
        Tensor& w = model.net_mut().weights()[t];
        if (shape != w.shape) throw FormatError("checkpoint: shape mismatch");
        std::getline(in, line);
        std::istringstream vals(line);
        for (int i = 0; i < w.numel(); ++i)
            if (!(vals >> w.v[i]))
                throw FormatError("checkpoint: truncated tensor values");
    }

    std::getline(in, line);
    std::istringstream th(line);
    std::size_t n_theta;
    th >> word >> n_theta;
    if (word != "theta" || n_theta != model.theta().size())
        throw FormatError("checkpoint: theta mismatch");
    std::getline(in, line);
    {
        std::istringstream vals(line);
        for (std::size_t i = 0; i < n_theta; ++i)
            if (!(vals >> model.theta_mut()[i]))
                throw FormatError("checkpoint: truncated theta");
    }

    std::getline(in, line);
    std::istringstream ch(line);
    std::size_t n_center;
    ch >> word >> n_center;
    if (word != "center") throw FormatError("checkpoint: expected center");
    if (n_center > 0) {
        std::getline(in, line);
        std::istringstream vals(line);
        std::vector<double> c(n_center);
        for (std::size_t i = 0; i < n_center; ++i)
            if (!(vals >> c[i]))
                throw FormatError("checkpoint: truncated center");
        model.set_center(std::move(c));
    } else {
        std::getline(in, line);
    }

    std::getline(in, line);
    std::istringstream rs(line);
    double r2;
    rs >> word >> r2;
    if (word != "r2star") throw FormatError("checkpoint: expected r2star");
    if (r2 >= 0.0) model.set_r2star(r2);
}

}  // namespace nqsvdd
