#pragma once

#include <array>
#include <cmath>

#include "lpae/lp.hpp"
#include "lpae/rng.hpp"

namespace lpae {

// One synthetic operating-theatre day: staffed resources plus the stochastic
// durations of three elective blocks and one emergency block.
struct HospitalScenario {
    int doctors = 0;  // Unif{4..12}
    int nurses = 0;   // Unif{8..24}
    int machines = 0; // Unif{2..8}
    std::array<double, 3> elective_hours{}; // Triangular(1, 3, 5)
    double emergency_hours = 0.0;           // LogNormal(1.1, 0.4)

    static constexpr double kShiftHours = 8.0;
    static constexpr int kProcedureTypes = 4; // three electives + emergency
};

inline HospitalScenario sample_scenario(Rng& rng) {
    HospitalScenario s;
    s.doctors = static_cast<int>(rng.uniform_int(4, 12));
    s.nurses = static_cast<int>(rng.uniform_int(8, 24));
    s.machines = static_cast<int>(rng.uniform_int(2, 8));
    for (auto& t : s.elective_hours) t = rng.triangular(1.0, 3.0, 5.0);
    s.emergency_hours = rng.lognormal(1.1, 0.4);
    return s;
}

// Continuous relaxation of the daily scheduling problem. Variables z_k count
// blocks of each procedure type; throughput c = 1 per block. Rows: doctor
// hours, nurse hours (two nurses staff one running block), machine hours,
// then one cap row per type so every variable is boxed. All rhs are positive,
// so z = 0 is feasible and the polytope is bounded.
inline LinearProgram scenario_to_lp(const HospitalScenario& s) {
    constexpr int types = HospitalScenario::kProcedureTypes;
    const std::array<double, 4> hours = {s.elective_hours[0], s.elective_hours[1], s.elective_hours[2],
                                         s.emergency_hours};
    const double shift = HospitalScenario::kShiftHours;
    Matrix a(3 + types, types, 0.0);
    Vec b(3 + types, 0.0);
    for (int k = 0; k < types; ++k) {
        a(0, k) = hours[k];
        a(1, k) = hours[k];
        a(2, k) = hours[k];
    }
    b[0] = shift * s.doctors;
    b[1] = shift * (s.nurses / 2.0);
    b[2] = shift * s.machines;
    for (int k = 0; k < types; ++k) {
        a(3 + k, k) = 1.0;
        b[3 + k] = shift * s.machines / hours[k];
    }
    Vec c(types, 1.0);
    return LinearProgram(std::move(a), std::move(b), std::move(c));
}

// Per-feature min-max scaling ranges. For the stochastic fields these are the
// distribution supports; the unbounded emergency duration is clipped at its
// 99.9th percentile, and the constant shift limit is scaled against [0, 16]
// so the feature stays interior.
struct FeatureBounds {
    std::vector<double> lo;
    std::vector<double> hi;

    static FeatureBounds hospital() {
        // 99.9th percentile of LogNormal(1.1, 0.4); 3.0902323... = Phi^-1(0.999)
        const double em_hi = std::exp(1.1 + 0.4 * 3.090232306167813);
        FeatureBounds fb;
        fb.lo = {4.0, 8.0, 2.0, 1.0, 1.0, 1.0, 0.0, 0.0};
        fb.hi = {12.0, 24.0, 8.0, 5.0, 5.0, 5.0, em_hi, 16.0};
        return fb;
    }
};

inline constexpr std::size_t kHospitalFeatureDim = 8;

inline Vec scenario_to_features(const HospitalScenario& s, const FeatureBounds& bounds) {
    const std::array<double, kHospitalFeatureDim> raw = {
        static_cast<double>(s.doctors), static_cast<double>(s.nurses), static_cast<double>(s.machines),
        s.elective_hours[0], s.elective_hours[1], s.elective_hours[2],
        s.emergency_hours, HospitalScenario::kShiftHours};
    Vec f(kHospitalFeatureDim);
    for (std::size_t i = 0; i < kHospitalFeatureDim; ++i) {
        double v = (raw[i] - bounds.lo[i]) / (bounds.hi[i] - bounds.lo[i]);
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        f[i] = v;
    }
    return f;
}

// Inverse of scenario_to_features on the unclipped support (integer fields
// are rounded back).
inline HospitalScenario features_to_scenario(const Vec& f, const FeatureBounds& bounds) {
    auto unscale = [&](std::size_t i) { return bounds.lo[i] + f[i] * (bounds.hi[i] - bounds.lo[i]); };
    HospitalScenario s;
    s.doctors = static_cast<int>(std::lround(unscale(0)));
    s.nurses = static_cast<int>(std::lround(unscale(1)));
    s.machines = static_cast<int>(std::lround(unscale(2)));
    for (std::size_t k = 0; k < 3; ++k) s.elective_hours[k] = unscale(3 + k);
    s.emergency_hours = unscale(6);
    return s;
}

} // namespace lpae
