#pragma once

#include <span>

#include "nqsvdd/core.hpp"

namespace nqsvdd {

struct Tensor {
    std::vector<int> shape;
    std::vector<double> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s);

    int numel() const { return static_cast<int>(v.size()); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

/// Bias-free layers only; ReLU is the sole activation. Both constraints are
/// the hypersphere-collapse guard: with no biases and ReLU, the all-zero
/// input maps to the all-zero output for every architecture.
struct LayerSpec {
    enum class Type { Conv2d, Conv1d, AvgPool2d, AvgPool1d, Flatten, Dense, Relu };
    Type type = Type::Relu;
    int in_ch = 0, out_ch = 0, kernel = 0;  // conv layers
    int window = 0;                         // pooling (window == stride, floor)
    int in_dim = 0, out_dim = 0;            // dense

    static LayerSpec conv2d(int in_ch, int out_ch, int kernel);
    static LayerSpec conv1d(int in_ch, int out_ch, int kernel);
    static LayerSpec avgpool2d(int window);
    static LayerSpec avgpool1d(int window);
    static LayerSpec flatten();
    static LayerSpec dense(int in_dim, int out_dim);
    static LayerSpec relu();

    bool has_weights() const {
        return type == Type::Conv2d || type == Type::Conv1d || type == Type::Dense;
    }
};

class ClassicalNet {
  public:
    ClassicalNet() = default;
    ClassicalNet(std::vector<LayerSpec> layers, std::vector<int> input_shape);

    /// Uniform(-s, s) with s = sqrt(6 / fan_in).
    void init_weights(Rng& rng);

    int param_count() const;
    std::vector<Tensor>& weights() { return weights_; }
    const std::vector<Tensor>& weights() const { return weights_; }
    const std::vector<LayerSpec>& layers() const { return layers_; }
    const std::vector<int>& input_shape() const { return input_shape_; }
    const std::vector<int>& output_shape() const { return shapes_.back(); }
    int output_dim() const;

    struct Cache {
        std::vector<Tensor> inputs;  // input seen by each layer
        bool valid = false;
    };

    Tensor forward(const Tensor& x, Cache* cache = nullptr) const;

    /// Weight gradients (aligned with weights()) for upstream gradient g_out.
    std::vector<Tensor> backward(const Cache& cache, const Tensor& g_out) const;

  private:
    std::vector<LayerSpec> layers_;
    std::vector<Tensor> weights_;          // one per weighted layer, in order
    std::vector<int> weight_of_layer_;     // layer index -> weights_ index or -1
    std::vector<int> input_shape_;
    std::vector<std::vector<int>> shapes_;  // shapes_[i] = input shape of layer i; back() = output
};

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    std::vector<double> m, v;
    long long t = 0;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads, const AdamConfig& cfg, double lr);

/// Cosine annealing with warm restarts, restart multiplier 1: the rate
/// starts at lr_max, decays toward lr_min over `period` steps, and resets.
struct CosineRestartSchedule {
    double lr_max = 0.05;
    double lr_min = 0.005;
    int period = 500;

    double at(long long step) const;
};

}  // namespace nqsvdd
