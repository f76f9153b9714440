#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "conres/models.hpp"
#include "conres/scene.hpp"

namespace conres {

struct ScheduleEntry {
    double n = 0.0;  // derivatives gained
    double t = 0.0;  // smoothing time T_N
};

struct SmoothingSchedule {
    std::vector<ScheduleEntry> entries;
    double r0 = 0.0;
    double r1 = 0.0;  // must exceed r0
};

struct BarTResult {
    double value = 0.0;     // inf over entries of T_N / N
    bool subadditive = true;  // T_{N+M} <= T_N + T_M on all stored pairs
    // Least-squares slope of T_N against N; for affine schedules this
    // estimates the Fekete limit better than the finite inf.
    double limit_estimate = 0.0;
};

enum class StripSource { Smoothing, Converse, ConicFree, ConicBand, DeltaObstacle };

// A predicted logarithmic region: resonance-free strip of the form
// Im λ > -width·log Re λ (free sources) or a band of that depth
// containing infinitely many resonances (band source).
struct StripPrediction {
    double width = 0.0;   // coefficient of log Re λ; may be +infinity
    double delta = 0.0;
    double lambda0 = 0.0;  // onset threshold
    StripSource source = StripSource::Smoothing;
    double asymptote = 0.0;  // large-N / large-frequency limit of the width
    bool clamped = false;    // delta ate the whole width
    bool empty_band = false;  // band prediction with no admissible cycle
    bool width_is_upper_bound = false;  // geometry from capped enumeration
};

// inf T_N/N over the stored entries (Fekete limit for subadditive data).
BarTResult bar_t(const SmoothingSchedule& schedule);

// Strip width (N-1)/T' - delta with T' = T_N + R0 + 2*R1 + 3, clamped at
// zero. The asymptote field carries the large-N value 1/bar_t - delta.
StripPrediction strip_from_smoothing(const SmoothingSchedule& schedule,
                                     double n, double delta);

struct ConverseSchedule {
    double t_n = 0.0;
    double bar_t = 0.0;  // 1/L
};

// Schedule implied by a known strip: T_N = (N + M + T + 2)/L.
ConverseSchedule smoothing_from_strip(double l, double m, double t, double n);

// Free-strip width (d-1)/(2*D_max) - delta for a cone geometry.
StripPrediction conic_strip(int d, double d_max, double delta,
                            bool from_capped_enumeration = false);

// Band depth (d-1)/(2*D_plus) + delta; D_plus = -infinity yields the
// empty-band sentinel.
StripPrediction conic_band(int d, double d_plus, double delta);

// Delta-obstacle strip of width 1/diam - delta.
StripPrediction delta_obstacle_strip(double diam, double delta);

// #{λ : |Re λ| <= r, Im λ >= -rho*log|Re λ|}, with multiplicity.
int counting_function(const std::vector<Resonance>& resonances, double r,
                      double rho);

struct LogStripFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    int points = 0;
};

// Least-squares fit of -Im λ against log Re λ over Re λ in [re_lo, re_hi].
// Needs at least 10 resonances in the window.
LogStripFit fit_log_strip(const std::vector<Resonance>& resonances,
                          double re_lo, double re_hi);

// s(t) = Σ m(λ)·e^{-iλt} over the supplied resonances, sampled on t_grid.
std::vector<std::complex<double>> poisson_trace(
    const std::vector<Resonance>& resonances, const std::vector<double>& t_grid);

struct BandVerification {
    std::vector<ValidationCheck> checks;
    LogStripFit fitted;
    bool has_fit = false;
    std::vector<Resonance> violators;
    // Smallest onset making the free-region check pass; 0 when it passes
    // for every onset.
    double smallest_passing_lambda0 = 0.0;
    bool passed() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Violated) return false;
        return true;
    }
};

// Free-region check (no resonance above the predicted curve past λ0)
// plus an informational counting-growth fit.
BandVerification verify_band(const std::vector<Resonance>& resonances,
                             const StripPrediction& prediction, double lambda0);

// {"checks":[...], "fitted":{...}, "violators":[...]}
std::string band_verification_to_json(const BandVerification& report);

inline constexpr double kInfiniteWidth = std::numeric_limits<double>::infinity();

}  // namespace conres
