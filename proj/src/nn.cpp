#include "nqsvdd/nn.hpp"

#include <cmath>
#include <numeric>

namespace nqsvdd {

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
    int n = 1;
    for (int d : shape) {
        if (d <= 0) throw StructuralError("Tensor: nonpositive dimension");
        n *= d;
    }
    v.assign(n, 0.0);
}

LayerSpec LayerSpec::conv2d(int in_ch, int out_ch, int kernel) {
    LayerSpec s;
    s.type = Type::Conv2d;
    s.in_ch = in_ch;
    s.out_ch = out_ch;
    s.kernel = kernel;
    return s;
}

LayerSpec LayerSpec::conv1d(int in_ch, int out_ch, int kernel) {
    LayerSpec s;
    s.type = Type::Conv1d;
    s.in_ch = in_ch;
    s.out_ch = out_ch;
    s.kernel = kernel;
    return s;
}

LayerSpec LayerSpec::avgpool2d(int window) {
    LayerSpec s;
    s.type = Type::AvgPool2d;
    s.window = window;
    return s;
}

LayerSpec LayerSpec::avgpool1d(int window) {
    LayerSpec s;
    s.type = Type::AvgPool1d;
    s.window = window;
    return s;
}

LayerSpec LayerSpec::flatten() {
    LayerSpec s;
    s.type = Type::Flatten;
    return s;
}

LayerSpec LayerSpec::dense(int in_dim, int out_dim) {
    LayerSpec s;
    s.type = Type::Dense;
    s.in_dim = in_dim;
    s.out_dim = out_dim;
    return s;
}

LayerSpec LayerSpec::relu() {
    LayerSpec s;
    s.type = Type::Relu;
    return s;
}

namespace {

std::vector<int> infer_shape(const LayerSpec& l, const std::vector<int>& in) {
    using T = LayerSpec::Type;
    switch (l.type) {
        case T::Conv2d: {
            if (in.size() != 3 || in[0] != l.in_ch)
                throw StructuralError("conv2d: input shape mismatch");
            int h = in[1] - l.kernel + 1, w = in[2] - l.kernel + 1;
            if (h <= 0 || w <= 0) throw StructuralError("conv2d: kernel too large");
            return {l.out_ch, h, w};
        }
        case T::Conv1d: {
            if (in.size() != 2 || in[0] != l.in_ch)
                throw StructuralError("conv1d: input shape mismatch");
            int n = in[1] - l.kernel + 1;
            if (n <= 0) throw StructuralError("conv1d: kernel too large");
            return {l.out_ch, n};
        }
        case T::AvgPool2d: {
            if (in.size() != 3) throw StructuralError("avgpool2d: needs (c,h,w)");
            int h = in[1] / l.window, w = in[2] / l.window;
            if (h <= 0 || w <= 0) throw StructuralError("avgpool2d: window too large");
            return {in[0], h, w};
        }
        case T::AvgPool1d: {
            if (in.size() != 2) throw StructuralError("avgpool1d: needs (c,n)");
            int n = in[1] / l.window;
            if (n <= 0) throw StructuralError("avgpool1d: window too large");
            return {in[0], n};
        }
        case T::Flatten: {
            int n = 1;
            for (int d : in) n *= d;
            return {n};
        }
        case T::Dense: {
            if (in.size() != 1 || in[0] != l.in_dim)
                throw StructuralError("dense: input shape mismatch");
            return {l.out_dim};
        }
        case T::Relu: return in;
    }
    throw StructuralError("unknown layer");
}

Tensor weight_tensor(const LayerSpec& l) {
    using T = LayerSpec::Type;
    switch (l.type) {
        case T::Conv2d: return Tensor({l.out_ch, l.in_ch, l.kernel, l.kernel});
        case T::Conv1d: return Tensor({l.out_ch, l.in_ch, l.kernel});
        case T::Dense: return Tensor({l.out_dim, l.in_dim});
        default: throw StructuralError("layer has no weights");
    }
}

int fan_in(const LayerSpec& l) {
    using T = LayerSpec::Type;
    switch (l.type) {
        case T::Conv2d: return l.in_ch * l.kernel * l.kernel;
        case T::Conv1d: return l.in_ch * l.kernel;
        case T::Dense: return l.in_dim;
        default: return 1;
    }
}

}  // namespace

ClassicalNet::ClassicalNet(std::vector<LayerSpec> layers,
                           std::vector<int> input_shape)
    : layers_(std::move(layers)), input_shape_(std::move(input_shape)) {
    shapes_.push_back(input_shape_);
    weight_of_layer_.assign(layers_.size(), -1);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        shapes_.push_back(infer_shape(layers_[i], shapes_.back()));
        if (layers_[i].has_weights()) {
            weight_of_layer_[i] = static_cast<int>(weights_.size());
            weights_.push_back(weight_tensor(layers_[i]));
        }
    }
}

void ClassicalNet::init_weights(Rng& rng) {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        if (weight_of_layer_[i] < 0) continue;
        double s = std::sqrt(6.0 / fan_in(layers_[i]));
        for (auto& w : weights_[weight_of_layer_[i]].v) w = rng.uniform(-s, s);
    }
}

int ClassicalNet::param_count() const {
    int n = 0;
    for (const auto& w : weights_) n += w.numel();
    return n;
}

int ClassicalNet::output_dim() const {
    int n = 1;
    for (int d : output_shape()) n *= d;
    return n;
}

Tensor ClassicalNet::forward(const Tensor& x, Cache* cache) const {
    if (x.shape != input_shape_)
        throw StructuralError("forward: input shape mismatch");
    if (cache) {
        cache->inputs.clear();
        cache->inputs.reserve(layers_.size());
        cache->valid = true;
    }

    using T = LayerSpec::Type;
    Tensor cur = x;
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const LayerSpec& l = layers_[li];
        if (cache) cache->inputs.push_back(cur);
        const std::vector<int>& oshape = shapes_[li + 1];
        Tensor out(oshape);
        switch (l.type) {
            case T::Conv2d: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                int ih = shapes_[li][1], iw = shapes_[li][2];
                int oh = oshape[1], ow = oshape[2];
                for (int oc = 0; oc < l.out_ch; ++oc)
                    for (int y = 0; y < oh; ++y)
                        for (int x2 = 0; x2 < ow; ++x2) {
                            double acc = 0.0;
                            for (int ic = 0; ic < l.in_ch; ++ic)
                                for (int ky = 0; ky < l.kernel; ++ky)
                                    for (int kx = 0; kx < l.kernel; ++kx)
                                        acc += w.v[((oc * l.in_ch + ic) * l.kernel + ky) * l.kernel + kx] *
                                               cur.v[(ic * ih + y + ky) * iw + x2 + kx];
                            out.v[(oc * oh + y) * ow + x2] = acc;
                        }
                break;
            }
            case T::Conv1d: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                int in = shapes_[li][1], on = oshape[1];
                for (int oc = 0; oc < l.out_ch; ++oc)
                    for (int p = 0; p < on; ++p) {
                        double acc = 0.0;
                        for (int ic = 0; ic < l.in_ch; ++ic)
                            for (int k = 0; k < l.kernel; ++k)
                                acc += w.v[(oc * l.in_ch + ic) * l.kernel + k] *
                                       cur.v[ic * in + p + k];
                        out.v[oc * on + p] = acc;
                    }
                break;
            }
            case T::AvgPool2d: {
                int c = oshape[0], oh = oshape[1], ow = oshape[2];
                int ih = shapes_[li][1], iw = shapes_[li][2];
                double inv = 1.0 / (l.window * l.window);
                for (int ch = 0; ch < c; ++ch)
                    for (int y = 0; y < oh; ++y)
                        for (int x2 = 0; x2 < ow; ++x2) {
                            double acc = 0.0;
                            for (int wy = 0; wy < l.window; ++wy)
                                for (int wx = 0; wx < l.window; ++wx)
                                    acc += cur.v[(ch * ih + y * l.window + wy) * iw +
                                                 x2 * l.window + wx];
                            out.v[(ch * oh + y) * ow + x2] = acc * inv;
                        }
                break;
            }
            case T::AvgPool1d: {
                int c = oshape[0], on = oshape[1];
                int in = shapes_[li][1];
                double inv = 1.0 / l.window;
                for (int ch = 0; ch < c; ++ch)
                    for (int p = 0; p < on; ++p) {
                        double acc = 0.0;
                        for (int k = 0; k < l.window; ++k)
                            acc += cur.v[ch * in + p * l.window + k];
                        out.v[ch * on + p] = acc * inv;
                    }
                break;
            }
            case T::Flatten:
                out.v = cur.v;
                break;
            case T::Dense: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                for (int o = 0; o < l.out_dim; ++o) {
                    double acc = 0.0;
                    for (int i2 = 0; i2 < l.in_dim; ++i2)
                        acc += w.v[o * l.in_dim + i2] * cur.v[i2];
                    out.v[o] = acc;
                }
                break;
            }
            case T::Relu:
                for (int i2 = 0; i2 < cur.numel(); ++i2)
                    out.v[i2] = cur.v[i2] > 0.0 ? cur.v[i2] : 0.0;
                break;
        }
        cur = std::move(out);
    }
    return cur;
}

std::vector<Tensor> ClassicalNet::backward(const Cache& cache,
                                           const Tensor& g_out) const {
    if (!cache.valid || cache.inputs.size() != layers_.size())
        throw StateError("backward: stale or missing forward cache");
    if (g_out.shape != output_shape())
        throw StructuralError("backward: upstream gradient shape mismatch");

    std::vector<Tensor> grads;
    grads.reserve(weights_.size());
    for (const auto& w : weights_) grads.push_back(Tensor(w.shape));

    using T = LayerSpec::Type;
    Tensor g = g_out;
    for (int li = static_cast<int>(layers_.size()) - 1; li >= 0; --li) {
        const LayerSpec& l = layers_[li];
        const Tensor& in = cache.inputs[li];
        Tensor gin(shapes_[li]);
        switch (l.type) {
            case T::Conv2d: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                Tensor& gw = grads[weight_of_layer_[li]];
                int ih = shapes_[li][1], iw = shapes_[li][2];
                int oh = shapes_[li + 1][1], ow = shapes_[li + 1][2];
                for (int oc = 0; oc < l.out_ch; ++oc)
                    for (int y = 0; y < oh; ++y)
                        for (int x2 = 0; x2 < ow; ++x2) {
                            double gv = g.v[(oc * oh + y) * ow + x2];
                            if (gv == 0.0) continue;
                            for (int ic = 0; ic < l.in_ch; ++ic)
                                for (int ky = 0; ky < l.kernel; ++ky)
                                    for (int kx = 0; kx < l.kernel; ++kx) {
                                        int widx = ((oc * l.in_ch + ic) * l.kernel + ky) * l.kernel + kx;
                                        int iidx = (ic * ih + y + ky) * iw + x2 + kx;
                                        gw.v[widx] += gv * in.v[iidx];
                                        gin.v[iidx] += gv * w.v[widx];
                                    }
                        }
                break;
            }
            case T::Conv1d: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                Tensor& gw = grads[weight_of_layer_[li]];
                int in_n = shapes_[li][1], on = shapes_[li + 1][1];
                for (int oc = 0; oc < l.out_ch; ++oc)
                    for (int p = 0; p < on; ++p) {
                        double gv = g.v[oc * on + p];
                        if (gv == 0.0) continue;
                        for (int ic = 0; ic < l.in_ch; ++ic)
                            for (int k = 0; k < l.kernel; ++k) {
                                int widx = (oc * l.in_ch + ic) * l.kernel + k;
                                int iidx = ic * in_n + p + k;
                                gw.v[widx] += gv * in.v[iidx];
                                gin.v[iidx] += gv * w.v[widx];
                            }
                    }
                break;
            }
            case T::AvgPool2d: {
                int c = shapes_[li + 1][0], oh = shapes_[li + 1][1],
                    ow = shapes_[li + 1][2];
                int ih = shapes_[li][1], iw = shapes_[li][2];
                double inv = 1.0 / (l.window * l.window);
                for (int ch = 0; ch < c; ++ch)
                    for (int y = 0; y < oh; ++y)
                        for (int x2 = 0; x2 < ow; ++x2) {
                            double gv = g.v[(ch * oh + y) * ow + x2] * inv;
                            for (int wy = 0; wy < l.window; ++wy)
                                for (int wx = 0; wx < l.window; ++wx)
                                    gin.v[(ch * ih + y * l.window + wy) * iw +
                                          x2 * l.window + wx] += gv;
                        }
                break;
            }
            case T::AvgPool1d: {
                int c = shapes_[li + 1][0], on = shapes_[li + 1][1];
                int in_n = shapes_[li][1];
                double inv = 1.0 / l.window;
                for (int ch = 0; ch < c; ++ch)
                    for (int p = 0; p < on; ++p) {
                        double gv = g.v[ch * on + p] * inv;
                        for (int k = 0; k < l.window; ++k)
                            gin.v[ch * in_n + p * l.window + k] += gv;
                    }
                break;
            }
            case T::Flatten:
                gin.v = g.v;
                break;
            case T::Dense: {
                const Tensor& w = weights_[weight_of_layer_[li]];
                Tensor& gw = grads[weight_of_layer_[li]];
                for (int o = 0; o < l.out_dim; ++o) {
                    double gv = g.v[o];
                    if (gv == 0.0) continue;
                    for (int i2 = 0; i2 < l.in_dim; ++i2) {
                        gw.v[o * l.in_dim + i2] += gv * in.v[i2];
                        gin.v[i2] += gv * w.v[o * l.in_dim + i2];
                    }
                }
                break;
            }
            case T::Relu:
                for (int i2 = 0; i2 < in.numel(); ++i2)
                    gin.v[i2] = in.v[i2] > 0.0 ? g.v[i2] : 0.0;
                break;
        }
        g = std::move(gin);
    }
    return grads;
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads, const AdamConfig& cfg,
               double lr) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw StructuralError("adam_step: size mismatch");
    state.t += 1;
    double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        double mhat = state.m[i] / bc1;
        double vhat = state.v[i] / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
}

double CosineRestartSchedule::at(long long step) const {
    if (period <= 0) return lr_max;
    long long pos = step % period;
    double frac = static_cast<double>(pos) / static_cast<double>(period);
    return lr_min + 0.5 * (lr_max - lr_min) * (1.0 + std::cos(M_PI * frac));
}

}  // namespace nqsvdd
