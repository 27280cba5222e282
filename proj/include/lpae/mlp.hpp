#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lpae/linalg.hpp"
#include "lpae/rng.hpp"

namespace lpae {

enum class Activation { Identity, Relu, Sigmoid };

inline const char* to_string(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "unknown";
}

inline Activation activation_from_string(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::Relu;
    if (s == "sigmoid") return Activation::Sigmoid;
    throw std::invalid_argument("unknown activation '" + s + "'");
}

// Fully connected net: layer k maps layer_dims[k] -> layer_dims[k+1] via
// weights[k] x + biases[k], followed by hidden_activation (inner layers) or
// output_activation (last layer).
struct Mlp {
    std::vector<std::size_t> layer_dims;
    std::vector<Matrix> weights;
    std::vector<Vec> biases;
    Activation hidden_activation = Activation::Relu;
    Activation output_activation = Activation::Identity;

    std::size_t layers() const { return weights.size(); }
    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t output_dim() const { return layer_dims.back(); }

    bool all_parameters_finite() const {
        for (const auto& w : weights)
            if (!w.all_finite()) return false;
        for (const auto& b : biases)
            if (!all_finite(b)) return false;
        return true;
    }
};

// Weights uniform on +-sqrt(6 / (fan_in + fan_out)), biases zero.
inline Mlp xavier_init(const std::vector<std::size_t>& layer_dims, std::uint64_t seed,
                       Activation output_activation = Activation::Identity) {
    if (layer_dims.size() < 2) throw std::invalid_argument("xavier_init: need at least two layer dims");
    for (std::size_t d : layer_dims)
        if (d < 1) throw std::invalid_argument("xavier_init: layer dims must be >= 1");
    Mlp mlp;
    mlp.layer_dims = layer_dims;
    mlp.output_activation = output_activation;
    Rng rng(seed);
    for (std::size_t k = 0; k + 1 < layer_dims.size(); ++k) {
        const std::size_t fan_in = layer_dims[k];
        const std::size_t fan_out = layer_dims[k + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_out, fan_in);
        for (std::size_t i = 0; i < fan_out; ++i)
            for (std::size_t j = 0; j < fan_in; ++j) w(i, j) = rng.uniform(-limit, limit);
        mlp.weights.push_back(std::move(w));
        mlp.biases.emplace_back(fan_out, 0.0);
    }
    return mlp;
}

// Every intermediate of one forward pass; backward() replays it.
struct ForwardTrace {
    std::vector<Vec> pre;  // pre[k]  = W_k post[k] + b_k
    std::vector<Vec> post; // post[0] = input, post[k+1] = act(pre[k])
};

namespace detail {

inline double apply_act(Activation a, double v) {
    switch (a) {
        case Activation::Identity: return v;
        case Activation::Relu: return v > 0.0 ? v : 0.0;
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
    }
    return v;
}

// Derivative in terms of the pre-activation. ReLU subgradient at 0 is 0.
inline double act_deriv(Activation a, double pre) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::Relu: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-pre));
            return s * (1.0 - s);
        }
    }
    return 1.0;
}

} // namespace detail

inline Vec forward(const Mlp& mlp, const Vec& x, ForwardTrace* trace = nullptr) {
    if (x.size() != mlp.input_dim()) throw std::invalid_argument("forward: dim(x) != input_dim");
    if (trace) {
        trace->pre.clear();
        trace->post.clear();
        trace->post.push_back(x);
    }
    Vec a = x;
    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        Vec p = matvec(mlp.weights[k], a);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += mlp.biases[k][i];
        const Activation act = (k + 1 == mlp.layers()) ? mlp.output_activation : mlp.hidden_activation;
        Vec out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = detail::apply_act(act, p[i]);
        if (trace) {
            trace->pre.push_back(std::move(p));
            trace->post.push_back(out);
        }
        a = std::move(out);
    }
    return a;
}

// Gradients of grad_output . output with respect to every parameter, plus the
// gradient passed through to the input (needed to chain decoder into encoder).
struct MlpGrads {
    std::vector<Matrix> weights;
    std::vector<Vec> biases;
    Vec input;

    void add_scaled(const MlpGrads& other, double scale) {
        for (std::size_t k = 0; k < weights.size(); ++k) {
            auto& w = weights[k].data();
            const auto& ow = other.weights[k].data();
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * ow[i];
            for (std::size_t i = 0; i < biases[k].size(); ++i) biases[k][i] += scale * other.biases[k][i];
        }
    }

    void scale(double s) {
        for (auto& w : weights)
            for (auto& v : w.data()) v *= s;
        for (auto& b : biases)
            for (auto& v : b) v *= s;
    }
};

inline MlpGrads zero_grads(const Mlp& mlp) {
    MlpGrads g;
    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        g.weights.emplace_back(mlp.weights[k].rows(), mlp.weights[k].cols());
        g.biases.emplace_back(mlp.biases[k].size(), 0.0);
    }
    g.input.assign(mlp.input_dim(), 0.0);
    return g;
}

inline MlpGrads backward(const Mlp& mlp, const ForwardTrace& trace, const Vec& grad_output) {
    const std::size_t layers = mlp.layers();
    if (trace.pre.size() != layers || trace.post.size() != layers + 1)
        throw std::invalid_argument("backward: trace does not match network depth");
    for (std::size_t k = 0; k < layers; ++k)
        if (trace.pre[k].size() != mlp.biases[k].size() || trace.post[k].size() != mlp.weights[k].cols())
            throw std::invalid_argument("backward: trace shapes do not match network");
    if (grad_output.size() != mlp.output_dim())
        throw std::invalid_argument("backward: dim(grad_output) != output_dim");

    MlpGrads g;
    g.weights.resize(layers);
    g.biases.resize(layers);

    Vec delta = grad_output;
    for (std::size_t k = layers; k-- > 0;) {
        const Activation act = (k + 1 == layers) ? mlp.output_activation : mlp.hidden_activation;
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= detail::act_deriv(act, trace.pre[k][i]);
        const Vec& a_in = trace.post[k];
        Matrix gw(mlp.weights[k].rows(), mlp.weights[k].cols());
        for (std::size_t i = 0; i < gw.rows(); ++i)
            for (std::size_t j = 0; j < gw.cols(); ++j) gw(i, j) = delta[i] * a_in[j];
        g.weights[k] = std::move(gw);
        g.biases[k] = delta;
        delta = mat_t_vec(mlp.weights[k], delta);
    }
    g.input = std::move(delta);
    return g;
}

} // namespace lpae
