#include "conres/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace conres {

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Verified: return "verified";
        case CheckStatus::AssertedByUser: return "asserted";
        case CheckStatus::NeedsAssertion: return "needs_assertion";
        case CheckStatus::Violated: return "violated";
    }
    return "unknown";
}

}  // namespace

BarTResult bar_t(const SmoothingSchedule& schedule) {
    if (schedule.entries.empty())
        throw EmptySchedule("smoothing schedule has no entries");

    BarTResult out;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& e : schedule.entries) {
        if (!(e.n > 0.0 && e.t > 0.0))
            throw InvariantViolation("schedule entries must be positive");
        out.value = std::min(out.value, e.t / e.n);
    }

    if (schedule.entries.size() < 2) {
        out.limit_estimate = out.value;
    } else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& e : schedule.entries) {
            sx += e.n;
            sy += e.t;
            sxx += e.n * e.n;
            sxy += e.n * e.t;
        }
        const double n = static_cast<double>(schedule.entries.size());
        const double denom = n * sxx - sx * sx;
        out.limit_estimate =
            std::abs(denom) > 1e-14 ? (n * sxy - sx * sy) / denom : out.value;
    }

    // Subadditivity on all stored pairs whose sum is also stored.
    for (const auto& a : schedule.entries) {
        for (const auto& b : schedule.entries) {
            for (const auto& c : schedule.entries) {
                if (std::abs(c.n - (a.n + b.n)) > 1e-12) continue;
                if (c.t > a.t + b.t + 1e-12) out.subadditive = false;
            }
        }
    }
    return out;
}

StripPrediction strip_from_smoothing(const SmoothingSchedule& schedule,
                                     double n, double delta) {
    if (!(delta > 0.0)) throw InvariantViolation("delta must be positive");
    const ScheduleEntry* entry = nullptr;
    for (const auto& e : schedule.entries)
        if (std::abs(e.n - n) <= 1e-12) entry = &e;
    if (!entry) throw MissingEntry("no schedule entry for the requested N");

    const double t_prime = entry->t + schedule.r0 + 2.0 * schedule.r1 + 3.0;
    StripPrediction p;
    p.source = StripSource::Smoothing;
    p.delta = delta;
    p.width = (n - 1.0) / t_prime - delta;
    if (p.width < 0.0) {
        p.width = 0.0;
        p.clamped = true;
    }
    const BarTResult bt = bar_t(schedule);
    p.asymptote = (bt.value > 0.0 ? 1.0 / bt.value : kInfiniteWidth) - delta;
    return p;
}

ConverseSchedule smoothing_from_strip(double l, double m, double t, double n) {
    if (!(l > 0.0)) throw NonpositiveL("strip slope L must be positive");
    return {(n + m + t + 2.0) / l, 1.0 / l};
}

StripPrediction conic_strip(int d, double d_max, double delta,
                            bool from_capped_enumeration) {
    if (d < 2) throw InvariantViolation("dimension must be at least 2");
    if (!(d_max > 0.0)) throw NonpositiveDmax("D_max must be positive");
    StripPrediction p;
    p.source = StripSource::ConicFree;
    p.delta = delta;
    p.width = (d - 1.0) / (2.0 * d_max) - delta;
    p.asymptote = (d - 1.0) / (2.0 * d_max);
    p.width_is_upper_bound = from_capped_enumeration;
    if (p.width < 0.0) {
        p.width = 0.0;
        p.clamped = true;
    }
    return p;
}

StripPrediction conic_band(int d, double d_plus, double delta) {
    StripPrediction p;
    p.source = StripSource::ConicBand;
    p.delta = delta;
    if (!(std::isfinite(d_plus) && d_plus > 0.0)) {
        p.empty_band = true;
        p.width = 0.0;
        return p;
    }
    p.width = (d - 1.0) / (2.0 * d_plus) + delta;
    p.asymptote = (d - 1.0) / (2.0 * d_plus);
    return p;
}

StripPrediction delta_obstacle_strip(double diam, double delta) {
    if (!(diam > 0.0)) throw NonpositiveDiam("diameter must be positive");
    StripPrediction p;
    p.source = StripSource::DeltaObstacle;
    p.delta = delta;
    p.width = 1.0 / diam - delta;
    p.asymptote = 1.0 / diam;
    if (p.width < 0.0) {
        p.width = 0.0;
        p.clamped = true;
    }
    return p;
}

int counting_function(const std::vector<Resonance>& resonances, double r,
                      double rho) {
    if (!(r > 1.0)) throw InvariantViolation("counting radius must exceed 1");
    int count = 0;
    for (const auto& res : resonances) {
        const double re = std::abs(res.lambda.real());
        if (re > r || re == 0.0) continue;
        if (res.lambda.imag() >= -rho * std::log(re)) count += res.multiplicity;
    }
    return count;
}

LogStripFit fit_log_strip(const std::vector<Resonance>& resonances,
                          double re_lo, double re_hi) {
    std::vector<std::pair<double, double>> pts;  // (log Re, -Im)
    for (const auto& r : resonances) {
        const double re = r.lambda.real();
        if (re < re_lo || re > re_hi || re <= 0.0) continue;
        pts.emplace_back(std::log(re), -r.lambda.imag());
    }
    if (pts.size() < 10)
        throw TooFewPoints("log-strip fit needs at least 10 resonances");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-14)
        throw NumericalError("degenerate abscissa in log-strip fit");

    LogStripFit fit;
    fit.points = static_cast<int>(pts.size());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double d = y - (fit.slope * x + fit.intercept);
        ss += d * d;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

std::vector<std::complex<double>> poisson_trace(
    const std::vector<Resonance>& resonances, const std::vector<double>& t_grid) {
    std::vector<std::complex<double>> out(t_grid.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        for (const auto& r : resonances) {
            out[i] += static_cast<double>(r.multiplicity) *
                      std::exp(std::complex<double>(r.lambda.imag() * t,
                                                    -r.lambda.real() * t));
        }
    }
    return out;
}

BandVerification verify_band(const std::vector<Resonance>& resonances,
                             const StripPrediction& prediction, double lambda0) {
    BandVerification report;

    // (i) Free region: nothing above Im = -width * log Re past lambda0.
    double worst_re = 0.0;
    for (const auto& r : resonances) {
        const double re = r.lambda.real();
        if (re <= lambda0 || re <= 1.0) continue;
        const double bound = -prediction.width * std::log(re);
        if (r.lambda.imag() > bound) {
            report.violators.push_back(r);
        }
    }
    // Smallest onset that would clear all violators (over the full set,
    // not just past the supplied lambda0).
    for (const auto& r : resonances) {
        const double re = r.lambda.real();
        if (re <= 1.0) continue;
        if (r.lambda.imag() > -prediction.width * std::log(re))
            worst_re = std::max(worst_re, re);
    }
    report.smallest_passing_lambda0 = worst_re;

    ValidationCheck free_check;
    free_check.name = "free_region";
    if (resonances.empty()) {
        free_check.status = CheckStatus::Verified;
        free_check.details = "no resonances supplied; trivially free";
    } else if (report.violators.empty()) {
        free_check.status = CheckStatus::Verified;
        free_check.details = "no resonance above the predicted curve past lambda0";
    } else {
        free_check.status = CheckStatus::Violated;
        free_check.details = std::to_string(report.violators.size()) +
                             " resonance(s) inside the claimed free region";
    }
    report.checks.push_back(free_check);

    // (ii) Band side: growth of the counting function along a grid.
    ValidationCheck band_check;
    band_check.name = "band_counting_growth";
    double re_max = 0.0;
    for (const auto& r : resonances) re_max = std::max(re_max, r.lambda.real());
    if (resonances.empty() || re_max <= 4.0) {
        band_check.status = CheckStatus::NeedsAssertion;
        band_check.details = "no data";
    } else {
        // Fit log N(r) ~ e * log r on a geometric grid.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int npts = 0;
        for (double r = re_max / 16.0; r <= re_max * 1.0001; r *= 1.5) {
            if (r <= 1.0) continue;
            const int cnt = counting_function(resonances, r, prediction.width);
            if (cnt <= 0) continue;
            const double x = std::log(r), y = std::log(static_cast<double>(cnt));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++npts;
        }
        if (npts >= 3) {
            const double denom = npts * sxx - sx * sx;
            const double exponent = (npts * sxy - sx * sy) / denom;
            band_check.status = exponent > 0.0 ? CheckStatus::Verified
                                               : CheckStatus::Violated;
            band_check.details =
                "fitted counting growth exponent " + std::to_string(exponent);
        } else {
            band_check.status = CheckStatus::NeedsAssertion;
            band_check.details = "no data";
        }
    }
    report.checks.push_back(band_check);

    // Informational slope fit over the top half of the frequency range.
    try {
        report.fitted = fit_log_strip(resonances, re_max / 2.0, re_max);
        report.has_fit = true;
    } catch (const TooFewPoints&) {
        report.has_fit = false;
    }
    return report;
}

std::string band_verification_to_json(const BandVerification& report) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name},
                               {"status", status_name(c.status)},
                               {"details", c.details}});
    if (report.has_fit)
        j["fitted"] = {{"slope", report.fitted.slope},
                       {"intercept", report.fitted.intercept},
                       {"rms", report.fitted.rms}};
    else
        j["fitted"] = nullptr;
    j["violators"] = nlohmann::json::array();
    for (const auto& v : report.violators)
        j["violators"].push_back({{"re_lambda", v.lambda.real()},
                                  {"im_lambda", v.lambda.imag()},
                                  {"multiplicity", v.multiplicity},
                                  {"model", v.model_tag},
                                  {"mode", v.mode_index}});
    j["smallest_passing_lambda0"] = report.smallest_passing_lambda0;
    return j.dump(2);
}

}  // namespace conres
