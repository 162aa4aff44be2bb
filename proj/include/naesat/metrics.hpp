#pragma once

// Running-time model and scaling fits. Instance running time is geometric in
// the success probability, drawn by inverse CDF; exponential fits are least
// squares on (n, log2 value), so slopes are in bits per variable with a
// natural-units accessor for comparisons against 2^{1-k} r (which the
// zero-angle analysis states in natural-log units).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "naesat/rng.hpp"
#include "naesat/statevector.hpp"

namespace naesat {

struct RunningTimeSample {
    int instance_id = 0;
    std::uint64_t samples_needed = 1;
};

// Geometric(p) via r = ceil(ln u / ln(1 - p)), u ~ Uniform(0, 1].
inline std::uint64_t geometric_sample(double p, Rng& rng) {
    if (!(p > 0.0)) throw std::invalid_argument("geometric_sample: p must be positive");
    if (p >= 1.0) return 1;
    const double u = 1.0 - rng.uniform01();
    const double r = std::ceil(std::log(u) / std::log1p(-p));
    if (!(r >= 1.0)) return 1;
    return static_cast<std::uint64_t>(r);
}

// Literal repeated measure-and-check; distributionally identical to
// geometric_sample, kept for validation.
template <typename Real>
std::uint64_t sampled_running_time(const BasicStateVector<Real>& state, const CostTable& table,
                                   Rng& rng, std::uint64_t cap = 100000000) {
    for (std::uint64_t r = 1; r <= cap; ++r)
        if (table.costs[sample_bitstring(state, rng).index()] == 0) return r;
    throw std::runtime_error("sampled_running_time: cap exceeded");
}

inline RunningTimeSample instance_running_time(const CostTable& table, const QaoaParams& params,
                                               Rng& rng, int instance_id = 0) {
    const StateVector state = run_circuit(table, params);
    const double p = success_probability(state, table);
    if (!(p > 0.0))
        throw std::invalid_argument("instance_running_time: success probability is zero");
    return RunningTimeSample{instance_id, geometric_sample(p, rng)};
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return (values.size() % 2 == 1) ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

inline double median_running_time(const std::vector<CostTable>& ensemble, const QaoaParams& params,
                                  Rng& rng) {
    if (ensemble.empty()) throw std::invalid_argument("median_running_time: empty ensemble");
    std::vector<double> samples;
    samples.reserve(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        samples.push_back(static_cast<double>(
            instance_running_time(ensemble[i], params, rng, static_cast<int>(i)).samples_needed));
    return median(std::move(samples));
}

// value ~ 2^{c n + d}; c is the fitted slope in bits per variable.
// Success-probability exponents report C_hat = -c, running times C_tilde = +c.
struct ExponentFit {
    double c = 0.0;
    double d = 0.0;
    double residual = 0.0;  // RMS in log2 space
    int n_points = 0;

    double c_nats() const { return c * std::numbers::ln2; }
};

inline ExponentFit fit_exponential(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_exponential: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> logs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].second > 0.0))
            throw std::invalid_argument("fit_exponential: values must be positive");
        logs[i] = std::log2(points[i].second);
        sx += points[i].first;
        sy += logs[i];
        sxx += points[i].first * points[i].first;
        sxy += points[i].first * logs[i];
    }
    const double count = static_cast<double>(points.size());
    const double denom = count * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_exponential: degenerate abscissae");
    ExponentFit fit;
    fit.c = (count * sxy - sx * sy) / denom;
    fit.d = (sy - fit.c * sx) / count;
    double ss = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = logs[i] - (fit.c * points[i].first + fit.d);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    fit.n_points = static_cast<int>(points.size());
    return fit;
}

struct PowerLawFit {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;  // RMS in ln space
};

// value ~ a P^b via least squares on (ln P, ln value).
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_power_law: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(points.size()), ly(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            throw std::invalid_argument("fit_power_law: inputs must be positive");
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double count = static_cast<double>(points.size());
    const double denom = count * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_power_law: degenerate abscissae");
    PowerLawFit fit;
    fit.b = (count * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.b * sx) / count;
    fit.a = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = ly[i] - (fit.b * lx[i] + intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

inline double relative_error(double c_hat, double c_tilde) {
    if (c_hat == 0) throw std::invalid_argument("relative_error: zero reference exponent");
    return std::fabs((c_hat - c_tilde) / c_hat);
}

// Zero-angle (random assignment) scaling exponent 2^{1-k} r, in natural-log
// units per variable.
inline double random_scaling_exponent(int k, double r) {
    if (k < 2) throw std::invalid_argument("random_scaling_exponent: k must be >= 2");
    if (!(r > 0)) throw std::invalid_argument("random_scaling_exponent: r must be positive");
    return std::ldexp(1.0, 1 - k) * r;
}

// Smallest depth whose exponent drops below the baseline; input ascending in P.
inline std::optional<int> crossover_depth(const std::vector<std::pair<int, double>>& exponents,
                                          double baseline) {
    if (exponents.empty()) throw std::invalid_argument("crossover_depth: empty input");
    for (const auto& [depth, c] : exponents)
        if (c < baseline) return depth;
    return std::nullopt;
}

}  // namespace naesat
