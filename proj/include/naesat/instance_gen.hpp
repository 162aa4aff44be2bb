#pragma once

// Random k-NAE-SAT generation at density r: m ~ Poisson(rn) clauses, each a
// uniform k-subset of variables with independent fair negations; clauses are
// drawn with replacement. Satisfiable ensembles use unbiased rejection.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/parallel.hpp"
#include "naesat/rng.hpp"
#include "naesat/solver.hpp"

namespace naesat {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conjectured satisfiability threshold (2^{k-1} - 1/2 - 1/(4 ln 2)) ln 2.
inline double nae_threshold(int k) {
    if (k < 2) throw std::invalid_argument("nae_threshold: k must be >= 2");
    constexpr double ln2 = std::numbers::ln2;
    return (std::ldexp(1.0, k - 1) - 0.5 - 1.0 / (4.0 * ln2)) * ln2;
}

// Density 2^{k-1} ln(k)/k above which no known algorithm works in polytime.
inline double algorithmic_ratio(int k) {
    if (k < 2) throw std::invalid_argument("algorithmic_ratio: k must be >= 2");
    return std::ldexp(1.0, k - 1) * std::log(static_cast<double>(k)) / k;
}

namespace detail {

// Partial Fisher-Yates over `pool`; the first k entries, in draw order,
// become the clause's variables.
inline void sample_k_subset(std::vector<int>& pool, int k, Rng& rng) {
    const int n = static_cast<int>(pool.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < k; ++j) {
        const int pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
        std::swap(pool[j], pool[pick]);
    }
}

}  // namespace detail

inline CnfFormula sample_instance(int n, int k, double r, Rng& rng) {
    if (k < 1 || k > n) throw std::invalid_argument("sample_instance: need 1 <= k <= n");
    if (r < 0) throw std::invalid_argument("sample_instance: r must be non-negative");
    CnfFormula f;
    f.n = n;
    f.mode = Mode::Nae;
    const std::uint64_t m = rng.poisson(r * n);
    f.clauses.reserve(m);
    std::vector<int> pool(n);
    for (std::uint64_t i = 0; i < m; ++i) {
        detail::sample_k_subset(pool, k, rng);
        Clause c;
        c.literals.reserve(k);
        for (int j = 0; j < k; ++j) c.literals.push_back(Literal{pool[j], rng.bernoulli(0.5)});
        f.clauses.push_back(std::move(c));
    }
    return f;
}

struct EnsembleSpec {
    int n = 0;
    int k = 0;
    double r = 0.0;
    int count = 0;
    std::uint64_t seed = 0;
    bool require_satisfiable = true;
};

inline void validate(const EnsembleSpec& spec) {
    if (spec.k < 1 || spec.k > spec.n)
        throw std::invalid_argument("EnsembleSpec: need 1 <= k <= n");
    if (spec.r < 0) throw std::invalid_argument("EnsembleSpec: r must be non-negative");
    if (spec.count < 1) throw std::invalid_argument("EnsembleSpec: count must be >= 1");
}

// Instance i draws from child stream i of the ensemble seed; rejection keeps
// sampling that stream until a NAE-satisfiable instance appears, so results
// are identical for any thread count.
inline std::vector<CnfFormula> generate_satisfiable_ensemble(const EnsembleSpec& spec,
                                                             int threads = 1,
                                                             std::uint64_t max_attempts = 10000) {
    validate(spec);
    std::vector<CnfFormula> out(spec.count);
    const Rng root(spec.seed);
    parallel_for(static_cast<std::size_t>(spec.count), threads, [&](std::size_t i) {
        Rng rng = root.child(i);
        for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
            CnfFormula f = sample_instance(spec.n, spec.k, spec.r, rng);
            if (!spec.require_satisfiable || is_nae_satisfiable(f)) {
                out[i] = std::move(f);
                return;
            }
        }
        throw BudgetError("generate_satisfiable_ensemble: no satisfiable instance in " +
                          std::to_string(max_attempts) + " attempts (n=" +
                          std::to_string(spec.n) + ", k=" + std::to_string(spec.k) +
                          ", r=" + std::to_string(spec.r) + ")");
    });
    return out;
}

}  // namespace naesat
