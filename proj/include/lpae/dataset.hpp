#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lpae/hospital.hpp"
#include "lpae/lp.hpp"
#include "lpae/numio.hpp"
#include "lpae/rng.hpp"

namespace lpae {

struct Record {
    std::uint64_t id = 0; // stable identity; corruption and split seeds hang off it
    Vec features;
    LinearProgram lp;
    std::optional<HospitalScenario> scenario;
};

struct Dataset {
    std::string preset;
    std::uint64_t seed = 0;
    std::size_t feature_dim = 0;
    std::size_t decision_dim = 0;   // n
    std::size_t constraint_rows = 0; // m
    FeatureBounds bounds;
    std::vector<Record> records;

    std::size_t size() const { return records.size(); }
};

inline constexpr const char* kPresetHospital = "hospital";
inline constexpr const char* kPresetRealScale = "real-scale";

namespace detail {

// Seed streams per record, per purpose.
enum class Stream : std::uint64_t { Scenario = 1, Noise = 2, Mask = 3, Split = 4, Features = 5 };

inline std::uint64_t record_seed(std::uint64_t base, std::uint64_t id, Stream stream) {
    return derive_seed(derive_seed(base, static_cast<std::uint64_t>(stream)), id);
}

inline Record make_hospital_record(std::uint64_t seed, std::uint64_t id, const FeatureBounds& bounds) {
    Rng rng(record_seed(seed, id, Stream::Scenario));
    Record r;
    r.id = id;
    r.scenario = sample_scenario(rng);
    r.lp = scenario_to_lp(*r.scenario);
    r.features = scenario_to_features(*r.scenario, bounds);
    return r;
}

// Table-1-scale synthetic stand-in for the unavailable real hospital data:
// n = 136 variables, m = 57 constraints, d = 64 features. A and c are shared
// per dataset; each record scales the row capacities b from its features, so
// b_i = rowsum_i * (0.2 + 0.1 * u). All capacities are positive and every
// column of A is positive, keeping the polytope nonempty and bounded.
inline constexpr std::size_t kRealScaleVars = 136;
inline constexpr std::size_t kRealScaleRows = 57;
inline constexpr std::size_t kRealScaleFeatures = 64;

struct RealScaleBase {
    Matrix a;
    Vec c;
    Vec row_sums;
};

inline RealScaleBase make_real_scale_base(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xa11ce));
    RealScaleBase base;
    base.a = Matrix(kRealScaleRows, kRealScaleVars);
    base.row_sums.assign(kRealScaleRows, 0.0);
    for (std::size_t i = 0; i < kRealScaleRows; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < kRealScaleVars; ++j) {
            const double v = rng.uniform(0.05, 1.0);
            base.a(i, j) = v;
            sum += v;
        }
        base.row_sums[i] = sum;
    }
    base.c.assign(kRealScaleVars, 0.0);
    for (auto& v : base.c) v = rng.uniform(0.5, 1.5);
    return base;
}

inline Record make_real_scale_record(std::uint64_t seed, std::uint64_t id, const RealScaleBase& base) {
    Rng rng(record_seed(seed, id, Stream::Features));
    Record r;
    r.id = id;
    r.features.assign(kRealScaleFeatures, 0.0);
    for (auto& f : r.features) f = rng.uniform01();
    Vec b(kRealScaleRows);
    for (std::size_t i = 0; i < kRealScaleRows; ++i)
        b[i] = base.row_sums[i] * (0.2 + 0.1 * r.features[i % kRealScaleFeatures]);
    r.lp = LinearProgram(base.a, std::move(b), base.c);
    return r;
}

} // namespace detail

inline Dataset generate_dataset(std::size_t count, std::uint64_t seed,
                                const std::string& preset = kPresetHospital) {
    if (count < 1) throw std::invalid_argument("generate_dataset: count must be >= 1");
    Dataset ds;
    ds.preset = preset;
    ds.seed = seed;
    ds.records.reserve(count);
    if (preset == kPresetHospital) {
        ds.bounds = FeatureBounds::hospital();
        ds.feature_dim = kHospitalFeatureDim;
        ds.decision_dim = HospitalScenario::kProcedureTypes;
        ds.constraint_rows = 3 + HospitalScenario::kProcedureTypes;
        for (std::uint64_t id = 0; id < count; ++id)
            ds.records.push_back(detail::make_hospital_record(seed, id, ds.bounds));
    } else if (preset == kPresetRealScale) {
        ds.feature_dim = detail::kRealScaleFeatures;
        ds.decision_dim = detail::kRealScaleVars;
        ds.constraint_rows = detail::kRealScaleRows;
        ds.bounds.lo.assign(ds.feature_dim, 0.0);
        ds.bounds.hi.assign(ds.feature_dim, 1.0);
        const auto base = detail::make_real_scale_base(seed);
        for (std::uint64_t id = 0; id < count; ++id)
            ds.records.push_back(detail::make_real_scale_record(seed, id, base));
    } else {
        throw std::invalid_argument("generate_dataset: unknown preset '" + preset + "'");
    }
    return ds;
}

// Adds zero-mean Gaussian noise to a deterministic floor(fraction * N) subset
// of records. Per-feature noise variance is the dataset's per-feature signal
// variance divided by 10^(snr_db / 10); features are re-clipped to [0, 1].
// LPs are untouched. Record selection and draws key off record ids, so the
// operator commutes with dataset reordering.
inline Dataset corrupt_noise(const Dataset& ds, double snr_db, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("corrupt_noise: fraction outside [0, 1]");
    Dataset out = ds;
    if (fraction == 0.0 || ds.records.empty() || std::isinf(snr_db)) return out;

    const std::size_t d = ds.feature_dim;
    Vec mean(d, 0.0), var(d, 0.0);
    for (const auto& r : ds.records)
        for (std::size_t j = 0; j < d; ++j) mean[j] += r.features[j];
    for (auto& v : mean) v /= static_cast<double>(ds.records.size());
    for (const auto& r : ds.records)
        for (std::size_t j = 0; j < d; ++j) {
            const double dlt = r.features[j] - mean[j];
            var[j] += dlt * dlt;
        }
    for (auto& v : var) v /= static_cast<double>(ds.records.size());

    const double ratio = std::pow(10.0, snr_db / 10.0);
    Vec sigma(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) sigma[j] = std::sqrt(var[j] / ratio);

    // rank records by a per-id hash; corrupt the first floor(fraction * N)
    const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.records.size())));
    std::vector<std::pair<std::uint64_t, std::size_t>> ranked(ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i)
        ranked[i] = {detail::record_seed(seed, ds.records[i].id, detail::Stream::Noise), i};
    std::sort(ranked.begin(), ranked.end());
    for (std::size_t r = 0; r < k; ++r) {
        Record& rec = out.records[ranked[r].second];
        Rng rng(detail::record_seed(seed, rec.id, detail::Stream::Noise));
        for (std::size_t j = 0; j < d; ++j) {
            double v = rec.features[j] + rng.normal(0.0, sigma[j]);
            rec.features[j] = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

// Zeroes a deterministic share of feature components per record. The count
// is floor(fraction * d) plus one more with probability frac(fraction * d),
// so a 30% mask of 8 features hits either 2 or 3 components.
inline Dataset mask_features(const Dataset& ds, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("mask_features: fraction outside [0, 1]");
    Dataset out = ds;
    if (fraction == 0.0) return out;
    const std::size_t d = ds.feature_dim;
    const double exact = fraction * static_cast<double>(d);
    for (auto& rec : out.records) {
        Rng rng(detail::record_seed(seed, rec.id, detail::Stream::Mask));
        auto k = static_cast<std::size_t>(std::floor(exact));
        const double frac = exact - std::floor(exact);
        if (frac > 0.0 && rng.uniform01() < frac) ++k;
        std::vector<std::size_t> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        for (std::size_t j = 0; j < k && j < d; ++j) rec.features[idx[j]] = 0.0;
    }
    return out;
}

// Deterministic 80/20 split keyed on record-id hashes.
inline std::pair<Dataset, Dataset> split_train_eval(const Dataset& ds, double eval_share = 0.2) {
    Dataset train = ds, eval = ds;
    train.records.clear();
    eval.records.clear();
    for (const auto& r : ds.records) {
        std::uint64_t h = detail::record_seed(ds.seed, r.id, detail::Stream::Split);
        const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
        (u < eval_share ? eval : train).records.push_back(r);
    }
    return {std::move(train), std::move(eval)};
}

// --- file format ----------------------------------------------------------

inline constexpr const char* kDatasetMagic = "lpae-dataset-v1";

inline void save_dataset(std::ostream& os, const Dataset& ds) {
    os << kDatasetMagic << '\n';
    os << "preset " << ds.preset << '\n';
    os << "seed " << ds.seed << '\n';
    os << "count " << ds.records.size() << '\n';
    os << "d " << ds.feature_dim << '\n';
    os << "n " << ds.decision_dim << '\n';
    os << "m " << ds.constraint_rows << '\n';
    os << "bounds_lo";
    for (double v : ds.bounds.lo) os << ' ' << format_double(v);
    os << '\n' << "bounds_hi";
    for (double v : ds.bounds.hi) os << ' ' << format_double(v);
    os << '\n';
    for (const auto& r : ds.records) {
        os << "record " << r.id << '\n' << "features";
        for (double v : r.features) os << ' ' << format_double(v);
        os << '\n';
        write_lp(os, r.lp);
        if (r.scenario) {
            const auto& s = *r.scenario;
            os << "scenario " << s.doctors << ' ' << s.nurses << ' ' << s.machines;
            for (double t : s.elective_hours) os << ' ' << format_double(t);
            os << ' ' << format_double(s.emergency_hours) << '\n';
        }
    }
}

inline Dataset load_dataset(std::istream& is) {
    std::string tok;
    if (!(is >> tok) || tok != kDatasetMagic) throw std::runtime_error("load_dataset: bad magic");
    Dataset ds;
    std::size_t count = 0;
    auto expect = [&](const char* key) {
        if (!(is >> tok) || tok != key) throw std::runtime_error(std::string("load_dataset: expected ") + key);
    };
    expect("preset");
    is >> ds.preset;
    expect("seed");
    is >> ds.seed;
    expect("count");
    is >> count;
    expect("d");
    is >> ds.feature_dim;
    expect("n");
    is >> ds.decision_dim;
    expect("m");
    is >> ds.constraint_rows;
    expect("bounds_lo");
    ds.bounds.lo.resize(ds.feature_dim);
    for (auto& v : ds.bounds.lo) {
        is >> tok;
        v = parse_double(tok);
    }
    expect("bounds_hi");
    ds.bounds.hi.resize(ds.feature_dim);
    for (auto& v : ds.bounds.hi) {
        is >> tok;
        v = parse_double(tok);
    }
    ds.records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        expect("record");
        Record r;
        is >> r.id;
        expect("features");
        r.features.resize(ds.feature_dim);
        for (auto& v : r.features) {
            is >> tok;
            v = parse_double(tok);
        }
        r.lp = read_lp(is);
        if (ds.preset == kPresetHospital) {
            expect("scenario");
            HospitalScenario s;
            is >> s.doctors >> s.nurses >> s.machines;
            for (auto& t : s.elective_hours) {
                is >> tok;
                t = parse_double(tok);
            }
            is >> tok;
            s.emergency_hours = parse_double(tok);
            r.scenario = s;
        }
        ds.records.push_back(std::move(r));
    }
    return ds;
}

inline void write_features_csv(std::ostream& os, const Dataset& ds) {
    os << "id";
    for (std::size_t j = 0; j < ds.feature_dim; ++j) os << ",f" << j;
    os << '\n';
    for (const auto& r : ds.records) {
        os << r.id;
        for (double v : r.features) os << ',' << format_double(v);
        os << '\n';
    }
}

} // namespace lpae
