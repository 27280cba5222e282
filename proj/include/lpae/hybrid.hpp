#pragma once

#include <cmath>
#include <stdexcept>

#include "lpae/lp.hpp"
#include "lpae/mlp.hpp"

namespace lpae {

// Weights of the two LP terms in the hybrid loss.
struct HybridLossConfig {
    double lambda = 1.0; // penalty on constraint violation
    double mu = 0.1;     // bias toward larger LP objective

    void validate() const {
        if (!(std::isfinite(lambda) && lambda >= 0.0)) throw std::invalid_argument("HybridLossConfig: lambda must be finite and >= 0");
        if (!(std::isfinite(mu) && mu >= 0.0)) throw std::invalid_argument("HybridLossConfig: mu must be finite and >= 0");
    }
};

// Geometric penalty growth lambda0 * alpha^epoch, capped at lambda_max.
struct AnnealSchedule {
    double lambda0 = 1.0;
    double alpha = 1.5;
    double lambda_max = 1e3;

    void validate() const {
        if (!(lambda0 > 0.0)) throw std::invalid_argument("AnnealSchedule: lambda0 must be > 0");
        if (!(alpha >= 1.0)) throw std::invalid_argument("AnnealSchedule: alpha must be >= 1");
        if (!(lambda_max >= lambda0)) throw std::invalid_argument("AnnealSchedule: lambda_max must be >= lambda0");
    }
};

inline double lambda_at(const AnnealSchedule& schedule, std::size_t epoch) {
    const double grown = schedule.lambda0 * std::pow(schedule.alpha, static_cast<double>(epoch));
    return std::min(grown, schedule.lambda_max);
}

// total = rec + lambda * viol - mu * obj, in exactly that arithmetic.
struct LossBreakdown {
    double rec = 0.0;   // ||x - g(f(x))||^2
    double viol = 0.0;  // phi(A f(x) - b), before the lambda weight
    double obj = 0.0;   // c^T f(x)
    double total = 0.0;
};

inline LossBreakdown hybrid_loss(const Vec& x, const Mlp& encoder, const Mlp& decoder,
                                 const LinearProgram& lp, const HybridLossConfig& cfg) {
    cfg.validate();
    if (encoder.output_dim() != lp.cols() || decoder.input_dim() != lp.cols())
        throw std::invalid_argument("hybrid_loss: latent dim != n");
    if (decoder.output_dim() != encoder.input_dim() || x.size() != encoder.input_dim())
        throw std::invalid_argument("hybrid_loss: data dim mismatch");
    const Vec z = forward(encoder, x);
    const Vec xhat = forward(decoder, z);
    LossBreakdown out;
    out.rec = norm2_sq(sub(x, xhat));
    out.viol = violation(lp, z);
    out.obj = dot(lp.c, z);
    out.total = out.rec + cfg.lambda * out.viol - cfg.mu * out.obj;
    return out;
}

struct HybridGrads {
    MlpGrads encoder;
    MlpGrads decoder;
    LossBreakdown breakdown;
};

// Exact gradient of the hybrid loss. The decoder sees only the
// reconstruction signal; the encoder accumulates three signals at the
// latent: reconstruction chained through the decoder, the violation
// gradient 2*lambda*A^T max{0, A z - b}, and the objective bias -mu*c.
inline HybridGrads hybrid_grad(const Vec& x, const Mlp& encoder, const Mlp& decoder,
                               const LinearProgram& lp, const HybridLossConfig& cfg) {
    cfg.validate();
    if (encoder.output_dim() != lp.cols() || decoder.input_dim() != lp.cols())
        throw std::invalid_argument("hybrid_grad: latent dim != n");
    if (decoder.output_dim() != encoder.input_dim() || x.size() != encoder.input_dim())
        throw std::invalid_argument("hybrid_grad: data dim mismatch");

    ForwardTrace enc_trace, dec_trace;
    const Vec z = forward(encoder, x, &enc_trace);
    const Vec xhat = forward(decoder, z, &dec_trace);

    HybridGrads out;
    out.breakdown.rec = norm2_sq(sub(x, xhat));
    out.breakdown.viol = violation(lp, z);
    out.breakdown.obj = dot(lp.c, z);
    out.breakdown.total = out.breakdown.rec + cfg.lambda * out.breakdown.viol - cfg.mu * out.breakdown.obj;

    // d rec / d xhat = 2 (xhat - x)
    Vec rec_grad(xhat.size());
    for (std::size_t i = 0; i < xhat.size(); ++i) rec_grad[i] = 2.0 * (xhat[i] - x[i]);
    out.decoder = backward(decoder, dec_trace, rec_grad);

    Vec latent_grad = out.decoder.input; // reconstruction term through the decoder
    const Vec vg = violation_grad(lp, z);
    for (std::size_t i = 0; i < latent_grad.size(); ++i)
        latent_grad[i] += cfg.lambda * vg[i] - cfg.mu * lp.c[i];
    out.encoder = backward(encoder, enc_trace, latent_grad);

    if (!all_finite(out.encoder.input) || !all_finite(out.decoder.input))
        throw std::runtime_error("hybrid_grad: non-finite intermediate");
    return out;
}

// Penalty-side bound (lambda/mu) * phi(A z - b) from the optimality-gap
// discussion. Reported as a diagnostic next to the measured gap; nothing is
// asserted about the bound holding.
inline double gap_bound(const LinearProgram& lp, const Vec& z_hat, const HybridLossConfig& cfg) {
    if (cfg.mu <= 0.0) throw std::invalid_argument("gap_bound: mu must be > 0");
    return (cfg.lambda / cfg.mu) * violation(lp, z_hat);
}

} // namespace lpae
