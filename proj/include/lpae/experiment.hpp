#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpae/manifest.hpp"
#include "lpae/trainer.hpp"

namespace lpae {

// One input-corruption setting ("none", "noise:<snr_db>:<fraction>",
// "mask:<fraction>"). Corruptions touch features only; evaluation always
// scores decisions against the record's true LP.
struct Corruption {
    enum class Kind { None, Noise, Mask };
    Kind kind = Kind::None;
    double snr_db = 0.0;
    double fraction = 0.0;
    std::string spec = "none";

    static Corruption parse(const std::string& text) {
        Corruption c;
        c.spec = text;
        if (text == "none") return c;
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : text) {
            if (ch == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        parts.push_back(cur);
        if (parts[0] == "noise" && parts.size() == 3) {
            c.kind = Kind::Noise;
            c.snr_db = parse_double(parts[1]);
            c.fraction = parse_double(parts[2]);
        } else if (parts[0] == "mask" && parts.size() == 2) {
            c.kind = Kind::Mask;
            c.fraction = parse_double(parts[1]);
        } else {
            throw std::invalid_argument("Corruption: bad spec '" + text + "'");
        }
        return c;
    }

    Dataset apply(const Dataset& ds, std::uint64_t seed) const {
        switch (kind) {
            case Kind::None: return ds;
            case Kind::Noise: return corrupt_noise(ds, snr_db, fraction, seed);
            case Kind::Mask: return mask_features(ds, fraction, seed);
        }
        return ds;
    }

    std::string file_tag() const {
        std::string t = spec;
        for (char& ch : t)
            if (ch == ':' || ch == '+' || ch == '.') ch = '_';
        return t;
    }
};

struct ExperimentConfig {
    std::string preset = kPresetHospital;
    std::size_t count = 500;
    std::uint64_t data_seed = 7;
    std::uint64_t corruption_seed = 99;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    std::vector<std::string> methods = {"lp_solver", "ae_proj", "lp_ae"};
    std::vector<std::string> corruptions = {"none"};
    std::vector<double> lambda_max_values = {1000.0};
    std::vector<double> alpha_values = {1.5};
    TrainConfig train;
    double eval_tol = 1e-6;
    std::string out_dir = "bench_out";

    static ExperimentConfig from_json(const nlohmann::json& j) {
        ExperimentConfig cfg;
        cfg.preset = j.value("preset", cfg.preset);
        cfg.count = j.value("count", cfg.count);
        cfg.data_seed = j.value("data_seed", cfg.data_seed);
        cfg.corruption_seed = j.value("corruption_seed", cfg.corruption_seed);
        if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("methods")) cfg.methods = j.at("methods").get<std::vector<std::string>>();
        if (j.contains("corruptions")) cfg.corruptions = j.at("corruptions").get<std::vector<std::string>>();
        if (j.contains("lambda_max")) cfg.lambda_max_values = j.at("lambda_max").get<std::vector<double>>();
        if (j.contains("alpha")) cfg.alpha_values = j.at("alpha").get<std::vector<double>>();
        if (j.contains("train")) {
            const auto& t = j.at("train");
            cfg.train.epochs = t.value("epochs", cfg.train.epochs);
            cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
            cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
            cfg.train.lambda0 = t.value("lambda0", cfg.train.lambda0);
            cfg.train.mu = t.value("mu", cfg.train.mu);
            cfg.train.latent_dim = t.value("latent_dim", cfg.train.latent_dim);
            cfg.train.hidden_width = t.value("hidden_width", cfg.train.hidden_width);
            cfg.train.weight_decay = t.value("weight_decay", cfg.train.weight_decay);
        }
        cfg.eval_tol = j.value("eval_tol", cfg.eval_tol);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        return cfg;
    }
};

struct CellResult {
    std::string method;
    std::string corruption;
    double lambda_max = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::uint64_t> seeds;
    std::vector<Metrics> per_seed;
    std::string status = "ok"; // or "failed: <reason>"

    std::string tag(const Corruption& c) const {
        std::string t = method + "__" + c.file_tag();
        if (method == "lp_ae") {
            t += "__lam" + format_double(lambda_max) + "__a" + format_double(alpha);
            for (char& ch : t)
                if (ch == '.' || ch == '+') ch = '_';
        }
        return t;
    }
};

namespace detail {

inline double mean_of(const std::vector<Metrics>& ms, double Metrics::* field) {
    double s = 0.0;
    for (const auto& m : ms) s += m.*field;
    return ms.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(ms.size());
}

inline double std_of(const std::vector<Metrics>& ms, double Metrics::* field) {
    if (ms.size() < 2) return 0.0;
    const double mu = mean_of(ms, field);
    double s = 0.0;
    for (const auto& m : ms) {
        const double d = m.*field - mu;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(ms.size() - 1));
}

inline void write_epoch_csv(const std::filesystem::path& path, const std::vector<EpochLog>& logs) {
    std::ofstream os(path);
    os << "epoch,lambda,rec,viol,obj,total,probe_feasibility_pct\n";
    for (const auto& log : logs) {
        os << log.epoch << ',' << format_double(log.lambda) << ',' << format_double(log.mean_loss.rec)
           << ',' << format_double(log.mean_loss.viol) << ',' << format_double(log.mean_loss.obj) << ','
           << format_double(log.mean_loss.total) << ',' << format_double(log.probe_feasibility_pct)
           << '\n';
    }
}

inline std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    return format_double(v);
}

} // namespace detail

inline const char* kMetricsHeader =
    "method,corruption,lambda_max,alpha,n_seeds,feas_mean,feas_std,gap_mean,gap_std,mse_mean,mse_std,"
    "time_ms_mean,time_ms_std,viol_mean,viol_std,gap_bound_mean,bound_violations,status";

// Cross product of methods x corruptions x (lambda_max x alpha for lp_ae),
// each cell aggregated over seeds. Trained models are shared across
// corruptions of the same cell family. Rows are flushed as they complete so
// an interrupted run leaves a usable partial CSV. A failed cell is recorded
// and the sweep continues.
inline std::vector<CellResult> run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path out_dir(cfg.out_dir);

    Dataset full = generate_dataset(cfg.count, cfg.data_seed, cfg.preset);
    auto [train_ds, eval_ds] = split_train_eval(full);
    const std::vector<LpSolution> eval_optima = solve_all(eval_ds); // corruption keeps LPs intact

    std::vector<Corruption> corruptions;
    for (const auto& spec : cfg.corruptions) corruptions.push_back(Corruption::parse(spec));
    std::vector<Dataset> eval_variants;
    for (const auto& c : corruptions) eval_variants.push_back(c.apply(eval_ds, cfg.corruption_seed));

    std::ofstream metrics_csv(out_dir / "metrics.csv");
    metrics_csv << kMetricsHeader << '\n' << std::flush;
    std::ofstream seeds_csv(out_dir / "metrics_seeds.csv");
    seeds_csv << "method,corruption,lambda_max,alpha,seed,feasibility_pct,cost_gap_pct,mse,time_ms,"
                 "mean_violation,gap_bound_mean,bound_violations\n"
              << std::flush;

    std::vector<CellResult> cells;

    auto emit_cell = [&](CellResult& cell, const Corruption& corr) {
        metrics_csv << cell.method << ',' << corr.spec << ',' << detail::csv_num(cell.lambda_max) << ','
                    << detail::csv_num(cell.alpha) << ',' << cell.per_seed.size() << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::feasibility_pct)) << ','
                    << detail::csv_num(detail::std_of(cell.per_seed, &Metrics::feasibility_pct)) << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::cost_gap_pct)) << ','
                    << detail::csv_num(detail::std_of(cell.per_seed, &Metrics::cost_gap_pct)) << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::mse)) << ','
                    << detail::csv_num(detail::std_of(cell.per_seed, &Metrics::mse)) << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::time_ms)) << ','
                    << detail::csv_num(detail::std_of(cell.per_seed, &Metrics::time_ms)) << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::mean_violation)) << ','
                    << detail::csv_num(detail::std_of(cell.per_seed, &Metrics::mean_violation)) << ','
                    << detail::csv_num(detail::mean_of(cell.per_seed, &Metrics::mean_gap_bound)) << ',';
        std::size_t bv = 0;
        for (const auto& m : cell.per_seed) bv += m.bound_violations;
        metrics_csv << bv << ',' << cell.status << '\n' << std::flush;
        for (std::size_t si = 0; si < cell.per_seed.size(); ++si) {
            const Metrics& m = cell.per_seed[si];
            seeds_csv << cell.method << ',' << corr.spec << ',' << detail::csv_num(cell.lambda_max) << ','
                      << detail::csv_num(cell.alpha) << ',' << cell.seeds[si] << ','
                      << detail::csv_num(m.feasibility_pct) << ',' << detail::csv_num(m.cost_gap_pct)
                      << ',' << detail::csv_num(m.mse) << ',' << detail::csv_num(m.time_ms) << ','
                      << detail::csv_num(m.mean_violation) << ',' << detail::csv_num(m.mean_gap_bound)
                      << ',' << m.bound_violations << '\n'
                      << std::flush;
        }
        cells.push_back(cell);
    };

    for (const auto& method : cfg.methods) {
        if (method == "lp_solver") {
            for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
                CellResult cell;
                cell.method = method;
                cell.corruption = corruptions[ci].spec;
                try {
                    for (std::uint64_t seed : cfg.seeds) {
                        cell.seeds.push_back(seed);
                        cell.per_seed.push_back(baseline_lp(eval_variants[ci]));
                    }
                } catch (const std::exception& e) {
                    cell.status = std::string("failed: ") + e.what();
                }
                emit_cell(cell, corruptions[ci]);
            }
        } else if (method == "ae_proj") {
            std::vector<std::vector<Metrics>> per_corr(corruptions.size());
            std::string status = "ok";
            try {
                for (std::uint64_t seed : cfg.seeds) {
                    TrainConfig tc = cfg.train;
                    tc.seed = seed;
                    tc.lambda0 = 0.0;
                    tc.mu = 0.0;
                    tc.latent_dim = full.decision_dim;
                    TrainResult r = train(train_ds, tc, &eval_ds, cfg.eval_tol);
                    detail::write_epoch_csv(out_dir / ("epochs_ae_proj__s" + std::to_string(seed) + ".csv"),
                                            r.logs);
                    for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
                        EvalOptions opt;
                        opt.tol = cfg.eval_tol;
                        opt.project_latent = true;
                        opt.optima = &eval_optima;
                        per_corr[ci].push_back(evaluate(r.encoder, r.decoder, eval_variants[ci], opt));
                    }
                }
            } catch (const std::exception& e) {
                status = std::string("failed: ") + e.what();
            }
            for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
                CellResult cell;
                cell.method = method;
                cell.corruption = corruptions[ci].spec;
                cell.seeds = cfg.seeds;
                cell.per_seed = per_corr[ci];
                cell.status = status;
                emit_cell(cell, corruptions[ci]);
            }
        } else if (method == "lp_ae") {
            for (double lam_max : cfg.lambda_max_values) {
                for (double alpha : cfg.alpha_values) {
                    std::vector<std::vector<Metrics>> per_corr(corruptions.size());
                    std::string status = "ok";
                    try {
                        for (std::uint64_t seed : cfg.seeds) {
                            TrainConfig tc = cfg.train;
                            tc.seed = seed;
                            tc.lambda_max = lam_max;
                            tc.alpha = alpha;
                            tc.latent_dim = full.decision_dim;
                            TrainResult r = train(train_ds, tc, &eval_ds, cfg.eval_tol);
                            const HybridLossConfig final_cfg{tc.lambda_for_epoch(tc.epochs - 1), tc.mu};
                            std::string tag = "lp_ae__lam" + format_double(lam_max) + "__a" +
                                              format_double(alpha) + "__s" + std::to_string(seed);
                            for (char& ch : tag)
                                if (ch == '.' || ch == '+') ch = '_';
                            detail::write_epoch_csv(out_dir / ("epochs_" + tag + ".csv"), r.logs);
                            for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
                                EvalOptions opt;
                                opt.tol = cfg.eval_tol;
                                opt.optima = &eval_optima;
                                opt.bound_cfg = final_cfg.mu > 0.0 ? &final_cfg : nullptr;
                                per_corr[ci].push_back(
                                    evaluate(r.encoder, r.decoder, eval_variants[ci], opt));
                            }
                        }
                    } catch (const std::exception& e) {
                        status = std::string("failed: ") + e.what();
                    }
                    for (std::size_t ci = 0; ci < corruptions.size(); ++ci) {
                        CellResult cell;
                        cell.method = method;
                        cell.corruption = corruptions[ci].spec;
                        cell.lambda_max = lam_max;
                        cell.alpha = alpha;
                        cell.seeds = cfg.seeds;
                        cell.per_seed = per_corr[ci];
                        cell.status = status;
                        emit_cell(cell, corruptions[ci]);
                    }
                }
            }
        } else {
            CellResult cell;
            cell.method = method;
            cell.corruption = "none";
            cell.status = "failed: unknown method '" + method + "'";
            emit_cell(cell, Corruption{});
        }
    }

    // Table-style summary, one block per corruption.
    std::ofstream summary(out_dir / "summary.txt");
    summary << "LP-AE benchmark summary\n";
    summary << "dataset: preset=" << cfg.preset << " count=" << cfg.count << " data_seed=" << cfg.data_seed
            << " eval_records=" << eval_ds.records.size() << "\n\n";
    for (const auto& corr : corruptions) {
        summary << "corruption: " << corr.spec << '\n';
        summary << "  " << std::left << std::setw(34) << "Method" << std::setw(18) << "Feas.(%)"
                << std::setw(18) << "Cost Gap(%)" << std::setw(18) << "MSE" << std::setw(18) << "Time(ms)"
                << '\n';
        for (const auto& cell : cells) {
            if (cell.corruption != corr.spec) continue;
            std::string label = cell.method;
            if (cell.method == "lp_ae")
                label += " (lam=" + format_double(cell.lambda_max) + ",a=" + format_double(cell.alpha) + ")";
            auto fmt = [&](double Metrics::* f, bool applicable = true) {
                if (!applicable || cell.per_seed.empty()) return std::string("-");
                std::ostringstream os;
                os << std::fixed << std::setprecision(3) << detail::mean_of(cell.per_seed, f) << " +- "
                   << detail::std_of(cell.per_seed, f);
                return os.str();
            };
            const bool mse_applicable = cell.method != "lp_solver";
            summary << "  " << std::left << std::setw(34) << label << std::setw(18)
                    << fmt(&Metrics::feasibility_pct) << std::setw(18) << fmt(&Metrics::cost_gap_pct)
                    << std::setw(18) << fmt(&Metrics::mse, mse_applicable) << std::setw(18)
                    << fmt(&Metrics::time_ms) << '\n';
            if (cell.status != "ok") summary << "    status: " << cell.status << '\n';
        }
        summary << '\n';
    }
    return cells;
}

} // namespace lpae
