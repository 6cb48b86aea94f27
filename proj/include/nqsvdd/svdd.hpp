#pragma once

#include "nqsvdd/ansatz.hpp"
#include "nqsvdd/dataio.hpp"
#include "nqsvdd/embed.hpp"
#include "nqsvdd/noise.hpp"

namespace nqsvdd {

enum class Variant { Nqsvdd, QsvddAmp, QsvddZz, Dsvdd };

Variant variant_from_string(const std::string& s);
std::string variant_to_string(Variant v);

/// Everything needed to assemble one model: classical frontend layers,
/// embedding repetition count, QCNN schedule, and latent dimension.
struct ModelSpec {
    Variant variant = Variant::Nqsvdd;
    std::string dataset;
    std::vector<int> input_shape;
    std::vector<LayerSpec> frontend;   // empty for quantum-only variants
    int n_qubits = 0;                  // 0 for dsvdd
    int embed_layers = 3;              // re-uploading repetitions t
    bool embed_trainable = true;       // false: plain re-uploading (qsvdd-zz)
    QcnnSpec qcnn;
    int n_f = 0;
    int latent_dim = 0;
    bool amplitude_input = false;
    std::vector<int> amp_resize;  // {oh, ow} image resize before encoding
    std::vector<int> zz_resize;   // {oh, ow} image resize for qsvdd-zz
};

struct ParamBreakdown {
    int classical = 0;
    int embed = 0;
    int qcnn = 0;
    int quantum() const { return embed + qcnn; }
    int total() const { return classical + quantum(); }
};

ParamBreakdown count_parameters(const ModelSpec& spec);

/// Published configurations. latent_dim <= 0 selects the per-dataset
/// default (mnist/fashion 32, credit 8, network 16, toy 3).
ModelSpec make_model_spec(const std::string& dataset, Variant variant,
                          int latent_dim = -1, int embed_layers = 3);

struct TrainConfig {
    int steps = 1500;
    int batch = 32;
    double lr_max = 0.05;
    double lr_min = 0.005;
    int restart_period = 500;
    double lambda = 1e-6;
};

struct TrainResult {
    std::vector<double> loss_history;
    double r2star = 0.0;
};

class SvddModel {
  public:
    SvddModel(ModelSpec spec, std::uint64_t seed);

    const ModelSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }
    const ClassicalNet& net() const { return net_; }
    const std::vector<double>& theta() const { return theta_; }
    const ObservableSet& observable_names() const { return obs_names_; }
    const std::vector<int>& active_qubits() const { return active_; }
    const std::vector<double>& center() const { return center_; }
    bool center_initialized() const { return center_set_; }
    double r2star() const;
    bool trained() const { return r2_ >= 0.0; }

    void enable_noise(const BackendParams& backend);
    bool noisy() const { return noisy_; }

    /// Latent embedding phi(x) for one raw (preprocessed) input row.
    std::vector<double> latent_of(std::span<const double> x) const;

    /// Mean initial latent over the training rows, with coordinates snapped
    /// away from zero (|c_i| < 0.1 becomes sign(c_i) * 0.1, +0.1 at zero).
    /// The center freezes afterwards.
    void init_center(const std::vector<std::vector<double>>& train_x);

    double loss(const std::vector<std::vector<double>>& batch) const;

    TrainResult train(const std::vector<std::vector<double>>& train_x,
                      const TrainConfig& cfg);

    /// (anomaly score, decision value): score = ||phi(x)-c||^2, decision =
    /// score - R^2*; the input is a target iff decision <= 0.
    std::pair<double, double> score(std::span<const double> x) const;

    ParamBreakdown params_breakdown() const;

    // Checkpoint restore hooks.
    ClassicalNet& net_mut() { return net_; }
    std::vector<double>& theta_mut() { return theta_; }
    void set_center(std::vector<double> c);
    void set_r2star(double r2);

  private:
    std::vector<double> quantum_features(std::span<const double> x,
                                         ClassicalNet::Cache* cache) const;
    QuantumJacobian sample_jacobian(std::span<const double> feats) const;
    std::vector<double> latent_from_features(std::span<const double> feats) const;

    ModelSpec spec_;
    std::uint64_t seed_ = 0;
    ClassicalNet net_;
    std::vector<double> theta_;
    CircuitProgram program_;
    CircuitProgram lowered_;
    ChannelProgram channels_;
    bool noisy_ = false;
    ObservableSet obs_names_;
    std::vector<int> active_;
    std::vector<PauliString> observables_;
    std::vector<double> center_;
    bool center_set_ = false;
    double r2_ = -1.0;
    double lambda_ = 1e-6;
};

/// Rank-statistic ROC AUC: the fraction of (target, outlier) pairs where
/// the target scores lower, ties counted one half. Matches the O(n^2)
/// pair-counting definition exactly, ties included.
double auc(std::span<const double> target_scores,
           std::span<const double> outlier_scores);

}  // namespace nqsvdd
