#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "lpae/mlp.hpp"

namespace lpae {

// Bias-corrected Adam with decoupled weight decay (decay hits weights
// directly, never the moment accumulators, and is not applied to biases).
struct AdamState {
    std::vector<Matrix> m_w, v_w;
    std::vector<Vec> m_b, v_b;
    std::uint64_t t = 0;
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 1e-5;
};

inline AdamState make_adam(const Mlp& mlp, double learning_rate, double weight_decay = 1e-5) {
    AdamState s;
    s.learning_rate = learning_rate;
    s.weight_decay = weight_decay;
    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        s.m_w.emplace_back(mlp.weights[k].rows(), mlp.weights[k].cols());
        s.v_w.emplace_back(mlp.weights[k].rows(), mlp.weights[k].cols());
        s.m_b.emplace_back(mlp.biases[k].size(), 0.0);
        s.v_b.emplace_back(mlp.biases[k].size(), 0.0);
    }
    return s;
}

inline void adam_step(Mlp& mlp, const MlpGrads& grads, AdamState& state) {
    if (grads.weights.size() != mlp.layers()) throw std::invalid_argument("adam_step: grad shape mismatch");
    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        if (!grads.weights[k].all_finite() || !all_finite(grads.biases[k]))
            throw std::runtime_error("adam_step: non-finite gradient (training diverged)");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    const double lr = state.learning_rate;

    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        auto& w = mlp.weights[k].data();
        const auto& gw = grads.weights[k].data();
        auto& mw = state.m_w[k].data();
        auto& vw = state.v_w[k].data();
        for (std::size_t i = 0; i < w.size(); ++i) {
            mw[i] = state.beta1 * mw[i] + (1.0 - state.beta1) * gw[i];
            vw[i] = state.beta2 * vw[i] + (1.0 - state.beta2) * gw[i] * gw[i];
            const double mhat = mw[i] / bc1;
            const double vhat = vw[i] / bc2;
            w[i] -= lr * (mhat / (std::sqrt(vhat) + state.eps) + state.weight_decay * w[i]);
        }
        auto& b = mlp.biases[k];
        const auto& gb = grads.biases[k];
        auto& mb = state.m_b[k];
        auto& vb = state.v_b[k];
        for (std::size_t i = 0; i < b.size(); ++i) {
            mb[i] = state.beta1 * mb[i] + (1.0 - state.beta1) * gb[i];
            vb[i] = state.beta2 * vb[i] + (1.0 - state.beta2) * gb[i] * gb[i];
            const double mhat = mb[i] / bc1;
            const double vhat = vb[i] / bc2;
            b[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
        }
    }
    if (!mlp.all_parameters_finite()) throw std::runtime_error("adam_step: parameters became non-finite");
}

} // namespace lpae
