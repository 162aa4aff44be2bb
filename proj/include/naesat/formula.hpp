#pragma once

// Clause-literal CNF representation with SAT and NAE semantics.
// A clause is NAE-satisfied when its true-literal count tau obeys 1 <= tau <= k-1.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace naesat {

enum class Mode { Sat, Nae };

struct Literal {
    int variable = 0;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
    std::vector<Literal> literals;

    int size() const { return static_cast<int>(literals.size()); }

    friend bool operator==(const Clause&, const Clause&) = default;
};

// Packed bit assignment; bit j of the index denotes variable j. The same
// index convention addresses statevector amplitudes.
struct Assignment {
    std::uint64_t bits = 0;
    int n = 0;

    static Assignment from_index(std::uint64_t x, int n) {
        if (n < 0 || n > 64) throw std::invalid_argument("Assignment: n must be in [0, 64]");
        if (n < 64 && (x >> n) != 0) throw std::invalid_argument("Assignment: index exceeds n bits");
        return Assignment{x, n};
    }

    bool get(int v) const {
        check_var(v);
        return (bits >> v) & 1u;
    }

    void set(int v, bool value) {
        check_var(v);
        if (value)
            bits |= (std::uint64_t{1} << v);
        else
            bits &= ~(std::uint64_t{1} << v);
    }

    void flip(int v) {
        check_var(v);
        bits ^= (std::uint64_t{1} << v);
    }

    std::uint64_t index() const { return bits; }

    Assignment flipped_all() const {
        std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        return Assignment{bits ^ mask, n};
    }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    void check_var(int v) const {
        if (v < 0 || v >= n) throw std::invalid_argument("Assignment: variable out of range");
    }
};

struct CnfFormula {
    int n = 0;
    Mode mode = Mode::Nae;
    std::vector<Clause> clauses;

    int m() const { return static_cast<int>(clauses.size()); }

    void validate() const {
        for (const Clause& c : clauses) {
            if (c.literals.empty()) throw std::invalid_argument("CnfFormula: empty clause");
            for (const Literal& l : c.literals)
                if (l.variable < 0 || l.variable >= n)
                    throw std::invalid_argument("CnfFormula: literal variable out of range");
        }
    }
};

inline bool literal_true(const Literal& l, const Assignment& x) {
    return x.get(l.variable) != l.negated;
}

inline int count_true_literals(const Clause& c, const Assignment& x) {
    int tau = 0;
    for (const Literal& l : c.literals) tau += literal_true(l, x) ? 1 : 0;
    return tau;
}

inline bool clause_satisfied(const Clause& c, const Assignment& x, Mode mode) {
    const int tau = count_true_literals(c, x);
    if (mode == Mode::Sat) return tau >= 1;
    return tau >= 1 && tau <= c.size() - 1;
}

inline int cost(const CnfFormula& f, const Assignment& x) {
    if (x.n != f.n) throw std::invalid_argument("cost: assignment dimension mismatch");
    int violated = 0;
    for (const Clause& c : f.clauses) violated += clause_satisfied(c, x, f.mode) ? 0 : 1;
    return violated;
}

}  // namespace naesat
