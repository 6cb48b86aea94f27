#include "nqsvdd/svdd.hpp"

#include <algorithm>
#include <cmath>

namespace nqsvdd {

Variant variant_from_string(const std::string& s) {
    if (s == "nqsvdd") return Variant::Nqsvdd;
    if (s == "qsvdd-amp") return Variant::QsvddAmp;
    if (s == "qsvdd-zz") return Variant::QsvddZz;
    if (s == "dsvdd") return Variant::Dsvdd;
    throw StructuralError("unknown variant: " + s);
}

std::string variant_to_string(Variant v) {
    switch (v) {
        case Variant::Nqsvdd: return "nqsvdd";
        case Variant::QsvddAmp: return "qsvdd-amp";
        case Variant::QsvddZz: return "qsvdd-zz";
        case Variant::Dsvdd: return "dsvdd";
    }
    return "?";
}

ParamBreakdown count_parameters(const ModelSpec& spec) {
    ParamBreakdown b;
    if (!spec.frontend.empty())
        b.classical = ClassicalNet(spec.frontend, spec.input_shape).param_count();
    if (spec.variant != Variant::Dsvdd) {
        if (spec.embed_trainable && !spec.amplitude_input && spec.n_qubits >= 2)
            b.embed = spec.embed_layers * 15;
        b.qcnn = spec.qcnn.param_count();
    }
    return b;
}

namespace {

std::vector<LayerSpec> image_backbone() {
    return {LayerSpec::conv2d(1, 4, 5),  LayerSpec::relu(),
            LayerSpec::avgpool2d(2),     LayerSpec::conv2d(4, 9, 5),
            LayerSpec::relu(),           LayerSpec::avgpool2d(4),
            LayerSpec::flatten()};
}

std::vector<LayerSpec> credit_backbone() {
    return {LayerSpec::conv1d(1, 4, 2),  LayerSpec::relu(),
            LayerSpec::avgpool1d(3),     LayerSpec::conv1d(4, 7, 4),
            LayerSpec::relu(),           LayerSpec::avgpool1d(2),
            LayerSpec::flatten()};
}

std::vector<LayerSpec> network_backbone() {
    return {LayerSpec::conv1d(1, 4, 2),  LayerSpec::relu(),
            LayerSpec::avgpool1d(6),     LayerSpec::conv1d(4, 7, 4),
            LayerSpec::relu(),           LayerSpec::avgpool1d(3),
            LayerSpec::flatten()};
}

int default_latent(const std::string& dataset) {
    if (dataset == "mnist" || dataset == "fashion") return 32;
    if (dataset == "credit") return 8;
    if (dataset == "network") return 16;
    if (dataset == "toy") return 3;
    throw StructuralError("unknown dataset: " + dataset);
}

}  // namespace

ModelSpec make_model_spec(const std::string& dataset, Variant variant,
                          int latent_dim, int embed_layers) {
    ModelSpec spec;
    spec.variant = variant;
    spec.dataset = dataset;
    spec.embed_layers = embed_layers;
    spec.latent_dim = latent_dim > 0 ? latent_dim : default_latent(dataset);

    const bool image = dataset == "mnist" || dataset == "fashion";
    if (image) {
        spec.input_shape = {1, 28, 28};
        switch (variant) {
            case Variant::Nqsvdd:
                spec.frontend = image_backbone();
                spec.n_qubits = 8;
                spec.qcnn = {8, {2, 2}};
                break;
            case Variant::QsvddAmp:
                spec.amplitude_input = true;
                spec.amp_resize = {16, 16};
                spec.n_qubits = 8;
                spec.qcnn = {8, {3, 2}};
                break;
            case Variant::QsvddZz:
                spec.zz_resize = {6, 6};
                spec.n_qubits = 8;
                spec.embed_trainable = false;
                spec.qcnn = {8, {3, 2}};
                break;
            case Variant::Dsvdd: {
                spec.frontend = image_backbone();
                spec.frontend.push_back(LayerSpec::dense(36, spec.latent_dim));
                break;
            }
        }
    } else if (dataset == "credit") {
        spec.input_shape = {1, 28};
        switch (variant) {
            case Variant::Nqsvdd:
                spec.frontend = credit_backbone();
                spec.n_qubits = 6;
                spec.qcnn = {6, {2, 1, 0}};
                break;
            case Variant::QsvddAmp:
                spec.amplitude_input = true;
                spec.n_qubits = 5;
                spec.qcnn = {5, {2, 2, 1}};
                break;
            case Variant::QsvddZz:
                throw StructuralError(
                    "qsvdd-zz is only configured for image datasets");
            case Variant::Dsvdd:
                spec.frontend = credit_backbone();
                spec.frontend.push_back(LayerSpec::dense(21, spec.latent_dim));
                break;
        }
    } else if (dataset == "network") {
        spec.input_shape = {1, 78};
        switch (variant) {
            case Variant::Nqsvdd:
                spec.frontend = network_backbone();
                spec.n_qubits = 6;
                spec.qcnn = {6, {2, 2}};
                break;
            case Variant::QsvddAmp:
                spec.amplitude_input = true;
                spec.n_qubits = 7;
                spec.qcnn = {7, {3, 2}};
                break;
            case Variant::QsvddZz:
                throw StructuralError(
                    "qsvdd-zz is only configured for image datasets");
            case Variant::Dsvdd:
                spec.frontend = network_backbone();
                spec.frontend.push_back(LayerSpec::dense(21, spec.latent_dim));
                break;
        }
    } else if (dataset == "toy") {
        spec.input_shape = {2};
        switch (variant) {
            case Variant::Nqsvdd:
                spec.frontend = {LayerSpec::dense(2, 3)};
                spec.n_qubits = 2;
                spec.qcnn = {2, {1}};
                break;
            case Variant::Dsvdd:
                spec.frontend = {LayerSpec::dense(2, spec.latent_dim)};
                break;
            default:
                throw StructuralError("toy dataset supports nqsvdd and dsvdd");
        }
    } else {
        throw StructuralError("unknown dataset: " + dataset);
    }

    if (spec.variant != Variant::Dsvdd) {
        spec.qcnn.validate();
        spec.n_f = spec.qcnn.final_active_count();
        std::size_t cap = (std::size_t{1} << (2 * spec.n_f)) - 1;
        if (static_cast<std::size_t>(spec.latent_dim) > cap)
            throw StructuralError("latent_dim exceeds 4^n_f - 1");
    }
    return spec;
}

SvddModel::SvddModel(ModelSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {
    Rng rng(seed_);
    if (!spec_.frontend.empty()) {
        net_ = ClassicalNet(spec_.frontend, spec_.input_shape);
        net_.init_weights(rng);
    }

    if (spec_.variant == Variant::Dsvdd) {
        if (net_.output_dim() != spec_.latent_dim)
            throw StructuralError("dsvdd: frontend output != latent_dim");
        return;
    }

    program_ = CircuitProgram(spec_.n_qubits);
    int qcnn_base = 0;
    if (!spec_.amplitude_input) {
        ReuploadSpec reup;
        reup.embedding = ZzEmbeddingSpec::complete(spec_.n_qubits, 1);
        reup.repetitions = spec_.embed_layers;
        reup.trainable_layers = spec_.embed_trainable;
        program_.append_program(build_reupload_circuit(reup));
        if (spec_.embed_trainable) qcnn_base = spec_.embed_layers * 15;

        if (!spec_.frontend.empty() &&
            net_.output_dim() != reup.embedding.features_per_layer())
            throw StructuralError(
                "frontend output does not match embedding feature demand");
    }
    active_ = append_qcnn(program_, spec_.qcnn, qcnn_base);
    lowered_ = lower(program_);

    obs_names_ = select_observables(spec_.n_f, spec_.latent_dim);
    observables_ = lift_observables(obs_names_, active_, spec_.n_qubits);

    theta_.resize(qcnn_base + spec_.qcnn.param_count());
    for (auto& t : theta_) t = rng.uniform(0.0, 2.0 * M_PI);
}

void SvddModel::set_center(std::vector<double> c) {
    if (static_cast<int>(c.size()) != spec_.latent_dim)
        throw StructuralError("set_center: dimension mismatch");
    center_ = std::move(c);
    center_set_ = true;
}

void SvddModel::set_r2star(double r2) {
    if (r2 < 0.0) throw StructuralError("set_r2star: negative radius");
    r2_ = r2;
}

void SvddModel::enable_noise(const BackendParams& backend) {
    if (spec_.variant == Variant::Dsvdd)
        throw StructuralError("noise model applies to quantum variants only");
    channels_ = noisify(program_, backend);
    noisy_ = true;
}

double SvddModel::r2star() const {
    if (r2_ < 0.0) throw StateError("model is not trained");
    return r2_;
}

std::vector<double> SvddModel::quantum_features(
    std::span<const double> x, ClassicalNet::Cache* cache) const {
    switch (spec_.variant) {
        case Variant::Nqsvdd:
        case Variant::Dsvdd: {
            Tensor in(spec_.input_shape);
            if (static_cast<int>(x.size()) != in.numel())
                throw StructuralError("input size mismatch");
            std::copy(x.begin(), x.end(), in.v.begin());
            Tensor z = net_.forward(in, cache);
            return z.v;
        }
        case Variant::QsvddAmp: {
            if (!spec_.amp_resize.empty()) {
                int h = spec_.input_shape[1], w = spec_.input_shape[2];
                return bilinear_resize(x, h, w, spec_.amp_resize[0],
                                       spec_.amp_resize[1]);
            }
            return std::vector<double>(x.begin(), x.end());
        }
        case Variant::QsvddZz: {
            if (!spec_.zz_resize.empty()) {
                int h = spec_.input_shape[1], w = spec_.input_shape[2];
                return bilinear_resize(x, h, w, spec_.zz_resize[0],
                                       spec_.zz_resize[1]);
            }
            return std::vector<double>(x.begin(), x.end());
        }
    }
    throw StructuralError("unreachable");
}

std::vector<double> SvddModel::latent_from_features(
    std::span<const double> feats) const {
    if (spec_.variant == Variant::Dsvdd)
        return std::vector<double>(feats.begin(), feats.end());

    if (spec_.amplitude_input) {
        PureState encoded = amplitude_encode(feats);
        if (encoded.n_qubits() != spec_.n_qubits)
            throw StructuralError("amplitude input does not fill the register");
        if (noisy_) {
            MixedState rho0 = to_mixed(encoded);
            return noisy_latent(channels_, theta_, {}, observables_, &rho0);
        }
        PureState psi = simulate(lowered_, theta_, {}, {}, &encoded);
        return latent(psi, observables_);
    }

    if (noisy_) return noisy_latent(channels_, theta_, feats, observables_);
    PureState psi = simulate(lowered_, theta_, feats);
    return latent(psi, observables_);
}

std::vector<double> SvddModel::latent_of(std::span<const double> x) const {
    return latent_from_features(quantum_features(x, nullptr));
}

QuantumJacobian SvddModel::sample_jacobian(
    std::span<const double> feats) const {
    if (spec_.amplitude_input) {
        PureState encoded = amplitude_encode(feats);
        if (noisy_) {
            MixedState rho0 = to_mixed(encoded);
            return noisy_jacobian_reverse(channels_, theta_, {}, observables_,
                                          &rho0);
        }
        return jacobian_adjoint(lowered_, theta_, {}, observables_, &encoded);
    }
    if (noisy_)
        return noisy_jacobian_reverse(channels_, theta_, feats, observables_);
    return jacobian_adjoint(lowered_, theta_, feats, observables_);
}

void SvddModel::init_center(const std::vector<std::vector<double>>& train_x) {
    if (train_x.empty()) throw StructuralError("init_center: empty training set");
    std::vector<double> c(spec_.latent_dim, 0.0);
    for (const auto& x : train_x) {
        auto lat = latent_of(x);
        for (int i = 0; i < spec_.latent_dim; ++i) c[i] += lat[i];
    }
    for (auto& v : c) v /= static_cast<double>(train_x.size());
    for (auto& v : c) {
        if (std::abs(v) < 0.1) v = v < 0.0 ? -0.1 : 0.1;
    }
    center_ = std::move(c);
    center_set_ = true;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

double SvddModel::loss(const std::vector<std::vector<double>>& batch) const {
    if (!center_set_) throw StateError("loss: center not initialized");
    if (batch.empty()) throw StructuralError("loss: empty batch");
    double data = 0.0;
    for (const auto& x : batch) data += sq_dist(latent_of(x), center_);
    data /= static_cast<double>(batch.size());

    bool regularized = spec_.variant == Variant::Nqsvdd ||
                       spec_.variant == Variant::Dsvdd;
    if (regularized && lambda_ > 0.0) {
        double frob = 0.0;
        for (const auto& w : net_.weights())
            for (double v : w.v) frob += v * v;
        data += 0.5 * lambda_ * frob;
    }
    return data;
}

TrainResult SvddModel::train(const std::vector<std::vector<double>>& train_x,
                             const TrainConfig& cfg) {
    if (train_x.empty()) throw StructuralError("train: empty training set");
    if (cfg.batch < 1 || cfg.steps < 0)
        throw StructuralError("train: bad steps/batch");
    lambda_ = cfg.lambda;
    if (!center_set_) init_center(train_x);

    const bool has_net = !spec_.frontend.empty() &&
                         (spec_.variant == Variant::Nqsvdd ||
                          spec_.variant == Variant::Dsvdd);
    const double eff_lambda =
        (spec_.variant == Variant::Nqsvdd || spec_.variant == Variant::Dsvdd)
            ? cfg.lambda
            : 0.0;

    // Flat parameter vector: classical weights in layer order, then theta.
    std::size_t n_classical = 0;
    for (const auto& w : net_.weights()) n_classical += w.numel();
    std::size_t n_total = n_classical + theta_.size();

    auto gather = [&](std::vector<double>& flat) {
        flat.resize(n_total);
        std::size_t o = 0;
        for (const auto& w : net_.weights())
            for (double v : w.v) flat[o++] = v;
        for (double v : theta_) flat[o++] = v;
    };
    auto scatter = [&](const std::vector<double>& flat) {
        std::size_t o = 0;
        for (auto& w : net_.weights())
            for (auto& v : w.v) v = flat[o++];
        for (auto& v : theta_) v = flat[o++];
    };

    AdamConfig adam_cfg;
    AdamState adam(n_total);
    CosineRestartSchedule sched{cfg.lr_max, cfg.lr_min, cfg.restart_period};
    Rng batch_rng(seed_ ^ 0x9E3779B97F4A7C15ULL);

    TrainResult result;
    result.loss_history.reserve(cfg.steps);

    const int batch_n =
        std::min<int>(cfg.batch, static_cast<int>(train_x.size()));

    for (int step = 0; step < cfg.steps; ++step) {
        auto idx = batch_rng.sample_without_replacement(train_x.size(),
                                                        batch_n);
        std::vector<ClassicalNet::Cache> caches(batch_n);
        std::vector<QuantumJacobian> jacs(batch_n);
        std::vector<std::vector<double>> dlat(batch_n);
        double data_loss = 0.0;

        for (int s = 0; s < batch_n; ++s) {
            const auto& x = train_x[idx[s]];
            std::vector<double> lat;
            if (spec_.variant == Variant::Dsvdd) {
                lat = quantum_features(x, &caches[s]);
            } else {
                auto feats = quantum_features(x, has_net ? &caches[s] : nullptr);
                jacs[s] = sample_jacobian(feats);
                lat = jacs[s].latent;
            }
            data_loss += sq_dist(lat, center_);
            dlat[s].resize(spec_.latent_dim);
            for (int i = 0; i < spec_.latent_dim; ++i)
                dlat[s][i] = 2.0 * (lat[i] - center_[i]) /
                             static_cast<double>(batch_n);
        }
        data_loss /= static_cast<double>(batch_n);

        double loss_value = data_loss;
        if (eff_lambda > 0.0) {
            double frob = 0.0;
            for (const auto& w : net_.weights())
                for (double v : w.v) frob += v * v;
            loss_value += 0.5 * eff_lambda * frob;
        }
        if (!std::isfinite(loss_value))
            throw StateError("training diverged (non-finite loss) at step " +
                             std::to_string(step));
        result.loss_history.push_back(loss_value);

        // Gradients.
        std::vector<double> flat_grad(n_total, 0.0);
        if (spec_.variant == Variant::Nqsvdd) {
            HybridGrads hg =
                hybrid_backward(net_, caches, dlat, jacs, eff_lambda);
            std::size_t o = 0;
            for (const auto& gw : hg.d_weights)
                for (double v : gw.v) flat_grad[o++] = v;
            for (std::size_t p = 0; p < theta_.size(); ++p)
                flat_grad[n_classical + p] = hg.d_theta[p];
        } else if (spec_.variant == Variant::Dsvdd) {
            std::vector<Tensor> acc;
            for (const auto& w : net_.weights()) acc.push_back(Tensor(w.shape));
            for (int s = 0; s < batch_n; ++s) {
                Tensor g({spec_.latent_dim});
                g.v = dlat[s];
                auto wg = net_.backward(caches[s], g);
                for (std::size_t w = 0; w < wg.size(); ++w)
                    for (int i = 0; i < wg[w].numel(); ++i)
                        acc[w].v[i] += wg[w].v[i];
            }
            if (eff_lambda > 0.0)
                for (std::size_t w = 0; w < acc.size(); ++w)
                    for (int i = 0; i < acc[w].numel(); ++i)
                        acc[w].v[i] += eff_lambda * net_.weights()[w].v[i];
            std::size_t o = 0;
            for (const auto& gw : acc)
                for (double v : gw.v) flat_grad[o++] = v;
        } else {
            // QSVDD variants: theta only, no regularizer.
            for (int s = 0; s < batch_n; ++s)
                for (int i = 0; i < spec_.latent_dim; ++i) {
                    if (dlat[s][i] == 0.0) continue;
                    for (std::size_t p = 0; p < theta_.size(); ++p)
                        flat_grad[n_classical + p] +=
                            dlat[s][i] * jacs[s].d_params[i][p];
                }
        }

        std::vector<double> flat;
        gather(flat);
        adam_step(adam, flat, flat_grad, adam_cfg, sched.at(step));
        scatter(flat);
    }

    double r2 = 0.0;
    for (const auto& x : train_x)
        r2 = std::max(r2, sq_dist(latent_of(x), center_));
    r2_ = r2;
    result.r2star = r2;
    return result;
}

std::pair<double, double> SvddModel::score(std::span<const double> x) const {
    if (!center_set_) throw StateError("score: center not initialized");
    if (r2_ < 0.0) throw StateError("score: model is not trained");
    double s = sq_dist(latent_of(x), center_);
    return {s, s - r2_};
}

ParamBreakdown SvddModel::params_breakdown() const {
    return count_parameters(spec_);
}

double auc(std::span<const double> target_scores,
           std::span<const double> outlier_scores) {
    if (target_scores.empty() || outlier_scores.empty())
        throw std::invalid_argument("auc: empty score list");

    struct Entry {
        double score;
        bool outlier;
    };
    std::vector<Entry> all;
    all.reserve(target_scores.size() + outlier_scores.size());
    for (double s : target_scores) all.push_back({s, false});
    for (double s : outlier_scores) all.push_back({s, true});
    std::sort(all.begin(), all.end(),
              [](const Entry& a, const Entry& b) { return a.score < b.score; });

    // Mann-Whitney with midranks for ties.
    double rank_sum_outliers = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].score == all[i].score) ++j;
        double midrank = 0.5 * (static_cast<double>(i + 1) +
                                static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k)
            if (all[k].outlier) rank_sum_outliers += midrank;
        i = j;
    }
    double no = static_cast<double>(outlier_scores.size());
    double nt = static_cast<double>(target_scores.size());
    double u = rank_sum_outliers - no * (no + 1.0) / 2.0;
    return u / (nt * no);
}

}  // namespace nqsvdd
