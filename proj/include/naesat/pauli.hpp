#pragma once

// Pauli-Z expansion of the NAE cost Hamiltonian. Per clause, the not-all-true
// and not-all-false penalty terms cancel on odd-size Z-strings and double on
// even ones: a subset S keeps coefficient 2 (prod_{j in S} s_j) / 2^k with
// s = +1 for negated literals, -1 for positive. Constants are dropped; the
// omitted offset is 2^{1-k} per clause.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "naesat/formula.hpp"

namespace naesat {

struct PauliZTerm {
    double coefficient = 0.0;
    std::vector<int> support;  // sorted variable indices
};

inline std::vector<PauliZTerm> pauli_expansion(const CnfFormula& f) {
    if (f.mode != Mode::Nae) throw std::invalid_argument("pauli_expansion: formula must be NAE mode");
    f.validate();
    std::map<std::vector<int>, double> merged;
    for (const Clause& c : f.clauses) {
        const int k = c.size();
        if (k > 20) throw std::invalid_argument("pauli_expansion: clause width exceeds 20");
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (c.literals[i].variable == c.literals[j].variable)
                    throw std::invalid_argument(
                        "pauli_expansion: clause repeats a variable");
        const double scale = std::ldexp(1.0, 1 - k);  // 2 / 2^k
        for (std::uint32_t subset = 1; subset < (1u << k); ++subset) {
            if (std::popcount(subset) % 2 != 0) continue;
            double sign = 1.0;
            std::vector<int> support;
            support.reserve(std::popcount(subset));
            for (int j = 0; j < k; ++j)
                if (subset & (1u << j)) {
                    sign *= c.literals[j].negated ? 1.0 : -1.0;
                    support.push_back(c.literals[j].variable);
                }
            std::sort(support.begin(), support.end());
            merged[std::move(support)] += sign * scale;
        }
    }
    std::vector<PauliZTerm> terms;
    terms.reserve(merged.size());
    for (auto& [support, coeff] : merged)
        if (std::fabs(coeff) > 1e-15) terms.push_back(PauliZTerm{coeff, support});
    return terms;
}

// Offset separating the expansion from the exact cost: cost(x) equals
// pauli_diagonal_value(terms, x) + pauli_constant_offset(f) for every x.
inline double pauli_constant_offset(const CnfFormula& f) {
    double offset = 0;
    for (const Clause& c : f.clauses) offset += std::ldexp(1.0, 1 - c.size());
    return offset;
}

inline double pauli_diagonal_value(const std::vector<PauliZTerm>& terms, const Assignment& x) {
    double value = 0;
    for (const PauliZTerm& t : terms) {
        double prod = t.coefficient;
        for (int v : t.support) prod *= x.get(v) ? -1.0 : 1.0;  // Z eigenvalue 1 - 2x_v
        value += prod;
    }
    return value;
}

}  // namespace naesat
