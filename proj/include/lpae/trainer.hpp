#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpae/adam.hpp"
#include "lpae/dataset.hpp"
#include "lpae/hybrid.hpp"
#include "lpae/mlp.hpp"
#include "lpae/projection.hpp"
#include "lpae/simplex.hpp"

namespace lpae {

// Defaults are the reference hyperparameters: Adam 1e-4, batch 64, 100
// epochs, lambda growing 1.5x per epoch from 1 up to 1e3, mu fixed at 0.1,
// weight decay 1e-5. lambda0 = 0 freezes the penalty off (plain autoencoder).
struct TrainConfig {
    std::size_t epochs = 100;
    std::size_t batch_size = 64;
    double learning_rate = 1e-4;
    double lambda0 = 1.0;
    double alpha = 1.5;
    double lambda_max = 1e3;
    double mu = 0.1;
    std::size_t latent_dim = 4;
    std::size_t hidden_width = 64;
    std::uint64_t seed = 0;
    double weight_decay = 1e-5;

    void validate() const {
        if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
        if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
        if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
        if (lambda0 < 0.0 || alpha < 1.0 || lambda_max < lambda0)
            throw std::invalid_argument("TrainConfig: bad annealing parameters");
        if (mu < 0.0) throw std::invalid_argument("TrainConfig: mu must be >= 0");
        if (latent_dim < 1 || hidden_width < 1) throw std::invalid_argument("TrainConfig: bad dims");
    }

    double lambda_for_epoch(std::size_t epoch) const {
        if (lambda0 <= 0.0) return 0.0;
        return lambda_at(AnnealSchedule{lambda0, alpha, lambda_max}, epoch);
    }
};

struct EpochLog {
    std::size_t epoch = 0;
    double lambda = 0.0;
    LossBreakdown mean_loss;
    double probe_feasibility_pct = std::numeric_limits<double>::quiet_NaN();
};

struct TrainResult {
    Mlp encoder;
    Mlp decoder;
    std::vector<EpochLog> logs;
};

// The training loop: per epoch set lambda from the schedule, run shuffled
// mini-batches, take one Adam step per batch on the batch-mean gradient.
// Deterministic for a fixed config: shuffles derive from (seed, epoch) and
// gradients accumulate in sample order.
inline TrainResult train(const Dataset& train_ds, const TrainConfig& cfg,
                         const Dataset* probe = nullptr, double probe_tol = 1e-6) {
    cfg.validate();
    if (train_ds.records.empty()) throw std::invalid_argument("train: empty dataset");
    if (cfg.latent_dim != train_ds.decision_dim)
        throw std::invalid_argument("train: latent_dim must equal the LP decision dimension (got " +
                                    std::to_string(cfg.latent_dim) + " vs n = " +
                                    std::to_string(train_ds.decision_dim) + ")");
    const std::size_t d = train_ds.feature_dim;

    TrainResult result;
    result.encoder = xavier_init({d, cfg.hidden_width, cfg.latent_dim}, derive_seed(cfg.seed, 1));
    result.decoder = xavier_init({cfg.latent_dim, cfg.hidden_width, d}, derive_seed(cfg.seed, 2));
    AdamState enc_state = make_adam(result.encoder, cfg.learning_rate, cfg.weight_decay);
    AdamState dec_state = make_adam(result.decoder, cfg.learning_rate, cfg.weight_decay);

    std::vector<std::size_t> order(train_ds.records.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double lambda = cfg.lambda_for_epoch(epoch);
        const HybridLossConfig loss_cfg{lambda, cfg.mu};
        Rng shuffle_rng(derive_seed(cfg.seed, 1000 + epoch));
        shuffle_rng.shuffle(order);

        LossBreakdown epoch_sum;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_index) {
            const std::size_t stop = std::min(start + cfg.batch_size, order.size());
            const double inv = 1.0 / static_cast<double>(stop - start);
            MlpGrads enc_grads = zero_grads(result.encoder);
            MlpGrads dec_grads = zero_grads(result.decoder);
            for (std::size_t i = start; i < stop; ++i) {
                const Record& rec = train_ds.records[order[i]];
                HybridGrads g;
                try {
                    g = hybrid_grad(rec.features, result.encoder, result.decoder, rec.lp, loss_cfg);
                } catch (const std::runtime_error& e) {
                    throw std::runtime_error("train: diverged at epoch " + std::to_string(epoch) +
                                             ", batch " + std::to_string(batch_index) + ": " + e.what());
                }
                enc_grads.add_scaled(g.encoder, inv);
                dec_grads.add_scaled(g.decoder, inv);
                epoch_sum.rec += g.breakdown.rec;
                epoch_sum.viol += g.breakdown.viol;
                epoch_sum.obj += g.breakdown.obj;
                epoch_sum.total += g.breakdown.total;
            }
            try {
                adam_step(result.encoder, enc_grads, enc_state);
                adam_step(result.decoder, dec_grads, dec_state);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error("train: diverged at epoch " + std::to_string(epoch) +
                                         ", batch " + std::to_string(batch_index) + ": " + e.what());
            }
        }

        EpochLog log;
        log.epoch = epoch;
        log.lambda = lambda;
        const double inv_n = 1.0 / static_cast<double>(order.size());
        log.mean_loss = {epoch_sum.rec * inv_n, epoch_sum.viol * inv_n, epoch_sum.obj * inv_n,
                         epoch_sum.total * inv_n};
        if (probe && !probe->records.empty()) {
            std::size_t feasible = 0;
            for (const auto& rec : probe->records) {
                const Vec z = forward(result.encoder, rec.features);
                if (is_feasible(rec.lp, z, probe_tol)) ++feasible;
            }
            log.probe_feasibility_pct = 100.0 * static_cast<double>(feasible) /
                                        static_cast<double>(probe->records.size());
        }
        result.logs.push_back(log);
    }
    return result;
}

// Per-record LP optima; the evaluation oracle. Throws if any solve fails.
inline std::vector<LpSolution> solve_all(const Dataset& ds) {
    std::vector<LpSolution> out;
    out.reserve(ds.records.size());
    for (const auto& rec : ds.records) {
        LpSolution sol = solve_simplex(rec.lp);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("solve_all: record " + std::to_string(rec.id) + " returned " +
                                     std::string(to_string(sol.status)));
        out.push_back(std::move(sol));
    }
    return out;
}

struct Metrics {
    double feasibility_pct = 0.0;
    double cost_gap_pct = std::numeric_limits<double>::quiet_NaN(); // mean over feasible records
    double mse = std::numeric_limits<double>::quiet_NaN();          // per-feature reconstruction MSE
    double time_ms = 0.0;                                           // per-instance inference
    double mean_violation = std::numeric_limits<double>::quiet_NaN();
    double mean_gap_bound = std::numeric_limits<double>::quiet_NaN();
    std::size_t bound_violations = 0; // records where measured gap exceeds the (lambda/mu) phi bound
    std::size_t n_records = 0;
    std::size_t n_feasible = 0;
};

struct EvalOptions {
    double tol = 1e-6;
    bool project_latent = false; // AE+projection baseline: decisions go through Frank-Wolfe first
    std::size_t projection_iters = 500;
    double projection_tol = 1e-6;
    const std::vector<LpSolution>* optima = nullptr; // reuse cached solves
    const HybridLossConfig* bound_cfg = nullptr;     // enables the gap-bound diagnostic
    std::size_t timing_reps = 5;
};

// Feasibility / cost gap / MSE / per-instance time for one model on one
// dataset. Timing covers the latent pipeline only (forward passes, plus the
// projection when enabled) as the median of timing_reps sweeps.
inline Metrics evaluate(const Mlp& encoder, const Mlp& decoder, const Dataset& ds,
                        const EvalOptions& opt = {}) {
    if (ds.records.empty()) throw std::invalid_argument("evaluate: empty dataset");
    std::vector<LpSolution> local_optima;
    const std::vector<LpSolution>* optima = opt.optima;
    if (!optima) {
        local_optima = solve_all(ds);
        optima = &local_optima;
    }
    if (optima->size() != ds.records.size()) throw std::invalid_argument("evaluate: optima size mismatch");

    Metrics m;
    m.n_records = ds.records.size();
    double gap_sum = 0.0, mse_sum = 0.0, viol_sum = 0.0, bound_sum = 0.0;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const Record& rec = ds.records[i];
        Vec z = forward(encoder, rec.features);
        if (opt.project_latent)
            z = project_onto_polytope(rec.lp, z, opt.projection_iters, opt.projection_tol);
        const Vec xhat = forward(decoder, z);
        mse_sum += norm2_sq(sub(rec.features, xhat)) / static_cast<double>(ds.feature_dim);
        viol_sum += violation(rec.lp, z);
        if (opt.bound_cfg) bound_sum += gap_bound(rec.lp, z, *opt.bound_cfg);
        const double opt_obj = (*optima)[i].objective;
        const double gap = opt_obj - dot(rec.lp.c, z);
        if (opt.bound_cfg && gap > gap_bound(rec.lp, z, *opt.bound_cfg) + 1e-9) ++m.bound_violations;
        if (is_feasible(rec.lp, z, opt.tol)) {
            ++m.n_feasible;
            if (gap < -1e-9 * std::max(1.0, std::fabs(opt_obj)))
                throw std::logic_error("evaluate: negative cost gap on a feasible point (solver bug)");
            if (std::fabs(opt_obj) > 1e-12) gap_sum += 100.0 * gap / opt_obj;
        }
    }
    m.feasibility_pct = 100.0 * static_cast<double>(m.n_feasible) / static_cast<double>(m.n_records);
    if (m.n_feasible > 0) m.cost_gap_pct = gap_sum / static_cast<double>(m.n_feasible);
    m.mse = mse_sum / static_cast<double>(m.n_records);
    m.mean_violation = viol_sum / static_cast<double>(m.n_records);
    if (opt.bound_cfg) m.mean_gap_bound = bound_sum / static_cast<double>(m.n_records);

    // median-of-reps timing over the whole pass, batch-1 semantics
    std::vector<double> rep_ms(opt.timing_reps, 0.0);
    for (auto& rep : rep_ms) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& rec : ds.records) {
            Vec z = forward(encoder, rec.features);
            if (opt.project_latent)
                z = project_onto_polytope(rec.lp, z, opt.projection_iters, opt.projection_tol);
            volatile double sink = z[0];
            (void)sink;
        }
        const auto t1 = std::chrono::steady_clock::now();
        rep = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    std::sort(rep_ms.begin(), rep_ms.end());
    m.time_ms = rep_ms[rep_ms.size() / 2] / static_cast<double>(ds.records.size());
    return m;
}

// Vanilla autoencoder (lambda = 0, mu = 0) with post-hoc Euclidean projection
// of the latent at evaluation time.
inline Metrics baseline_ae_project(const Dataset& train_ds, const Dataset& eval_ds, TrainConfig cfg,
                                   EvalOptions opt = {}) {
    cfg.lambda0 = 0.0;
    cfg.lambda_max = std::max(cfg.lambda_max, 0.0);
    cfg.mu = 0.0;
    TrainResult r = train(train_ds, cfg);
    opt.project_latent = true;
    return evaluate(r.encoder, r.decoder, eval_ds, opt);
}

// Classical per-record exact solve: feasibility 100%, gap 0 by definition,
// MSE not applicable. Timing is the reference solver cost.
inline Metrics baseline_lp(const Dataset& ds, std::size_t timing_reps = 5) {
    if (ds.records.empty()) throw std::invalid_argument("baseline_lp: empty dataset");
    std::vector<double> rep_ms(timing_reps, 0.0);
    for (auto& rep : rep_ms) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& rec : ds.records) {
            LpSolution sol = solve_simplex(rec.lp);
            if (sol.status != LpStatus::Optimal)
                throw std::runtime_error("baseline_lp: solve failed on record " + std::to_string(rec.id));
        }
        const auto t1 = std::chrono::steady_clock::now();
        rep = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    std::sort(rep_ms.begin(), rep_ms.end());
    Metrics m;
    m.n_records = ds.records.size();
    m.n_feasible = ds.records.size();
    m.feasibility_pct = 100.0;
    m.cost_gap_pct = 0.0;
    m.mean_violation = 0.0;
    m.time_ms = rep_ms[rep_ms.size() / 2] / static_cast<double>(ds.records.size());
    return m;
}

} // namespace lpae
