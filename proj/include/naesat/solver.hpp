#pragma once

// Complete solving for verification: NAE -> SAT reduction and a compact DPLL
// (unit propagation, pure-literal elimination, chronological backtracking,
// most-occurrences-in-shortest-clauses branching).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "naesat/formula.hpp"

namespace naesat {

enum class Status { Sat, Unsat };

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
};

struct SolveResult {
    Status status = Status::Unsat;
    std::optional<Assignment> witness;
    SolveStats stats;
};

// Each NAE clause emits itself and its literal-wise negation: x NAE-satisfies
// the input iff x satisfies both copies classically.
inline CnfFormula nae_to_sat(const CnfFormula& f) {
    if (f.mode != Mode::Nae) throw std::invalid_argument("nae_to_sat: formula must be NAE mode");
    CnfFormula out;
    out.n = f.n;
    out.mode = Mode::Sat;
    out.clauses.reserve(2 * f.clauses.size());
    for (const Clause& c : f.clauses) {
        out.clauses.push_back(c);
        Clause neg = c;
        for (Literal& l : neg.literals) l.negated = !l.negated;
        out.clauses.push_back(std::move(neg));
    }
    return out;
}

namespace detail {

class Dpll {
public:
    explicit Dpll(const CnfFormula& f) : f_(f), value_(f.n, -1) {}

    SolveResult run() {
        SolveResult res;
        if (search()) {
            res.status = Status::Sat;
            Assignment w{0, f_.n};
            for (int v = 0; v < f_.n; ++v)
                if (value_[v] == 1) w.set(v, true);
            res.witness = w;
        }
        res.stats = stats_;
        return res;
    }

private:
    bool literal_value(const Literal& l) const {
        int v = value_[l.variable];
        if (v < 0) return false;
        return (v == 1) != l.negated;
    }

    bool literal_assigned(const Literal& l) const { return value_[l.variable] >= 0; }

    // Simplification to fixpoint; false on conflict.
    bool simplify() {
        for (;;) {
            bool changed = false;
            for (const Clause& c : f_.clauses) {
                int unassigned = 0;
                const Literal* unit = nullptr;
                bool satisfied = false;
                for (const Literal& l : c.literals) {
                    if (!literal_assigned(l)) {
                        ++unassigned;
                        unit = &l;
                    } else if (literal_value(l)) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    value_[unit->variable] = unit->negated ? 0 : 1;
                    ++stats_.propagations;
                    changed = true;
                }
            }
            if (changed) continue;

            // Pure literals over clauses not yet satisfied.
            std::vector<std::uint8_t> polarity(f_.n, 0);  // bit0 positive, bit1 negative
            for (const Clause& c : f_.clauses) {
                bool satisfied = false;
                for (const Literal& l : c.literals)
                    if (literal_assigned(l) && literal_value(l)) {
                        satisfied = true;
                        break;
                    }
                if (satisfied) continue;
                for (const Literal& l : c.literals)
                    if (!literal_assigned(l)) polarity[l.variable] |= l.negated ? 2 : 1;
            }
            for (int v = 0; v < f_.n; ++v) {
                if (value_[v] >= 0) continue;
                if (polarity[v] == 1 || polarity[v] == 2) {
                    value_[v] = (polarity[v] == 1) ? 1 : 0;
                    ++stats_.propagations;
                    changed = true;
                }
            }
            if (!changed) return true;
        }
    }

    // -1: all satisfied; -2: conflict handled in simplify; else branch variable.
    int pick_branch() const {
        int shortest = INT32_MAX;
        for (const Clause& c : f_.clauses) {
            int unassigned = 0;
            bool satisfied = false;
            for (const Literal& l : c.literals) {
                if (literal_assigned(l)) {
                    if (literal_value(l)) {
                        satisfied = true;
                        break;
                    }
                } else {
                    ++unassigned;
                }
            }
            if (!satisfied && unassigned < shortest) shortest = unassigned;
        }
        if (shortest == INT32_MAX) return -1;

        std::vector<int> occurrences(f_.n, 0);
        for (const Clause& c : f_.clauses) {
            int unassigned = 0;
            bool satisfied = false;
            for (const Literal& l : c.literals) {
                if (literal_assigned(l)) {
                    if (literal_value(l)) {
                        satisfied = true;
                        break;
                    }
                } else {
                    ++unassigned;
                }
            }
            if (satisfied || unassigned != shortest) continue;
            for (const Literal& l : c.literals)
                if (!literal_assigned(l)) ++occurrences[l.variable];
        }
        int best = -1, best_count = -1;
        for (int v = 0; v < f_.n; ++v)
            if (value_[v] < 0 && occurrences[v] > best_count) {
                best = v;
                best_count = occurrences[v];
            }
        return best;
    }

    bool search() {
        std::vector<int> saved = value_;
        if (!simplify()) {
            value_ = saved;
            return false;
        }
        int branch = pick_branch();
        if (branch < 0) return true;
        ++stats_.decisions;
        std::vector<int> at_branch = value_;
        for (int phase : {0, 1}) {
            value_ = at_branch;
            value_[branch] = phase;
            if (search()) return true;
        }
        value_ = saved;
        return false;
    }

    const CnfFormula& f_;
    std::vector<int> value_;  // -1 unassigned, else 0/1
    SolveStats stats_;
};

}  // namespace detail

inline SolveResult dpll_solve(const CnfFormula& f) {
    if (f.mode != Mode::Sat) throw std::invalid_argument("dpll_solve: formula must be SAT mode");
    f.validate();
    SolveResult res = detail::Dpll(f).run();
    if (res.status == Status::Sat && cost(f, *res.witness) != 0)
        throw std::logic_error("dpll_solve: witness failed verification");
    return res;
}

inline bool is_nae_satisfiable(const CnfFormula& f) {
    return dpll_solve(nae_to_sat(f)).status == Status::Sat;
}

inline std::uint64_t brute_force_count(const CnfFormula& f, Mode mode) {
    if (f.n > 24) throw std::invalid_argument("brute_force_count: n exceeds 24");
    CnfFormula g = f;
    g.mode = mode;
    std::uint64_t count = 0;
    const std::uint64_t total = std::uint64_t{1} << f.n;
    for (std::uint64_t x = 0; x < total; ++x)
        if (cost(g, Assignment{x, f.n}) == 0) ++count;
    return count;
}

inline std::uint64_t brute_force_count(const CnfFormula& f) { return brute_force_count(f, f.mode); }

}  // namespace naesat
