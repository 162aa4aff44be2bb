#pragma once

// Exact QAOA simulation. Amplitude index x is the assignment (bit j <->
// variable j); the cost unitary is a diagonal phase lookup and the mixer
// e^{+i beta sum_j X_j} factorizes into n single-qubit passes.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/rng.hpp"

namespace naesat {

template <typename Real = double>
struct BasicStateVector {
    int n = 0;
    std::vector<std::complex<Real>> amp;

    static BasicStateVector uniform(int n) {
        if (n < 0 || n > 30) throw std::invalid_argument("StateVector: n out of range");
        BasicStateVector s;
        s.n = n;
        const Real a = std::pow(Real(2), Real(-0.5) * n);
        s.amp.assign(std::size_t{1} << n, std::complex<Real>(a, 0));
        return s;
    }

    Real norm_sq() const {
        Real total = 0;
        for (const auto& a : amp) total += std::norm(a);
        return total;
    }
};

using StateVector = BasicStateVector<double>;

struct CostTable {
    int n = 0;
    int m = 0;
    std::vector<std::uint16_t> costs;
};

// Exhaustive per-assignment NAE (or SAT) violation counts. Clauses with
// distinct variables reduce to popcount((x ^ negmask) & varmask); a clause
// repeating a variable falls back to literal-by-literal evaluation.
inline CostTable precompute_costs(const CnfFormula& f, int n_cap = 24) {
    if (f.n > n_cap) throw std::invalid_argument("precompute_costs: n exceeds cap");
    if (f.m() > 65535) throw std::invalid_argument("precompute_costs: too many clauses");
    f.validate();
    CostTable table;
    table.n = f.n;
    table.m = f.m();
    const std::uint64_t size = std::uint64_t{1} << f.n;
    table.costs.assign(size, 0);
    for (const Clause& c : f.clauses) {
        std::uint64_t varmask = 0, negmask = 0;
        bool distinct = true;
        for (const Literal& l : c.literals) {
            const std::uint64_t bit = std::uint64_t{1} << l.variable;
            if (varmask & bit) distinct = false;
            varmask |= bit;
            if (l.negated) negmask |= bit;
        }
        if (distinct) {
            const int width = c.size();
            for (std::uint64_t x = 0; x < size; ++x) {
                const int tau = std::popcount((x ^ negmask) & varmask);
                const bool sat = (f.mode == Mode::Sat) ? tau >= 1 : (tau >= 1 && tau <= width - 1);
                table.costs[x] += sat ? 0 : 1;
            }
        } else {
            for (std::uint64_t x = 0; x < size; ++x)
                table.costs[x] += clause_satisfied(c, Assignment{x, f.n}, f.mode) ? 0 : 1;
        }
    }
    return table;
}

struct QaoaParams {
    std::vector<double> beta;
    std::vector<double> gamma;

    int depth() const { return static_cast<int>(beta.size()); }

    void validate() const {
        if (beta.size() != gamma.size() || beta.empty())
            throw std::invalid_argument("QaoaParams: beta and gamma must share a positive length");
    }
};

// amp[x] *= e^{-i gamma cost[x]}; phases precomputed per cost value.
template <typename Real>
void apply_cost_unitary(BasicStateVector<Real>& state, const CostTable& table, double gamma) {
    if (state.n != table.n) throw std::invalid_argument("apply_cost_unitary: dimension mismatch");
    std::uint16_t max_cost = 0;
    for (std::uint16_t c : table.costs) max_cost = std::max(max_cost, c);
    std::vector<std::complex<Real>> phase(max_cost + 1);
    for (int c = 0; c <= max_cost; ++c)
        phase[c] = std::polar(Real(1), static_cast<Real>(-gamma * c));
    for (std::size_t x = 0; x < state.amp.size(); ++x) state.amp[x] *= phase[table.costs[x]];
}

// e^{+i beta sum_j X_j} as n passes; each pass mixes amplitude pairs
// differing in bit j: (a, b) -> (c a + i s b, i s a + c b).
template <typename Real>
void apply_mixer(BasicStateVector<Real>& state, double beta) {
    const Real c = static_cast<Real>(std::cos(beta));
    const Real s = static_cast<Real>(std::sin(beta));
    const std::complex<Real> is(0, s);
    const std::size_t size = state.amp.size();
    for (int j = 0; j < state.n; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t base = 0; base < size; base += 2 * bit) {
            for (std::size_t off = 0; off < bit; ++off) {
                const std::size_t lo = base + off;
                const std::size_t hi = lo + bit;
                const std::complex<Real> a = state.amp[lo];
                const std::complex<Real> b = state.amp[hi];
                state.amp[lo] = c * a + is * b;
                state.amp[hi] = is * a + c * b;
            }
        }
    }
}

template <typename Real = double>
BasicStateVector<Real> run_circuit(const CostTable& table, const QaoaParams& params) {
    params.validate();
    auto state = BasicStateVector<Real>::uniform(table.n);
    for (int i = 0; i < params.depth(); ++i) {
        apply_cost_unitary(state, table, params.gamma[i]);
        apply_mixer(state, params.beta[i]);
    }
    return state;
}

template <typename Real = double>
BasicStateVector<Real> run_circuit(const CnfFormula& f, const QaoaParams& params) {
    return run_circuit<Real>(precompute_costs(f), params);
}

template <typename Real>
double success_probability(const BasicStateVector<Real>& state, const CostTable& table) {
    if (state.n != table.n) throw std::invalid_argument("success_probability: dimension mismatch");
    double p = 0;
    for (std::size_t x = 0; x < state.amp.size(); ++x)
        if (table.costs[x] == 0) p += static_cast<double>(std::norm(state.amp[x]));
    return p;
}

template <typename Real>
Assignment sample_bitstring(const BasicStateVector<Real>& state, Rng& rng) {
    const double u = rng.uniform01();
    double cdf = 0;
    const std::size_t size = state.amp.size();
    for (std::size_t x = 0; x < size; ++x) {
        cdf += static_cast<double>(std::norm(state.amp[x]));
        if (u < cdf) return Assignment::from_index(x, state.n);
    }
    return Assignment::from_index(size - 1, state.n);
}

}  // namespace naesat
