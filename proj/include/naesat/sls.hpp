#pragma once

// WalkSAT, WalkSATlm, WalkSATm2b2 with incremental true-literal-count
// bookkeeping. In NAE mode clause selection, freebies, and break-minimization
// all use the NAE break score; the tiebreak scores distinguish the variants.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/parallel.hpp"
#include "naesat/rng.hpp"

namespace naesat {

struct SlsConfig {
    double noise = 0.5;
    std::uint64_t max_flips = 100000;
    double w1 = 0.0;
    double w2 = 0.0;
    std::uint64_t seed = 0;
};

enum class SlsStatus { Solved, GaveUp };

struct SlsOutcome {
    SlsStatus status = SlsStatus::GaveUp;
    std::optional<Assignment> witness;
    std::uint64_t flips_used = 0;
};

enum class SlsAlgorithm { WalkSat, WalkSatLm, WalkSatM2b2 };

inline const char* to_string(SlsAlgorithm a) {
    switch (a) {
        case SlsAlgorithm::WalkSat: return "walksat";
        case SlsAlgorithm::WalkSatLm: return "walksatlm";
        case SlsAlgorithm::WalkSatM2b2: return "walksatm2b2";
    }
    return "?";
}

// Assignment plus per-clause tau counts and the unsatisfied-clause set,
// maintained incrementally: a flip touches only the flipped variable's
// occurrence list. Score queries scan that list, never the whole formula.
class SlsState {
public:
    explicit SlsState(const CnfFormula& f) : f_(&f) {
        f.validate();
        if (f.n > 64) throw std::invalid_argument("SlsState: n exceeds 64");
        const int n = f.n;
        std::vector<int> counts(n, 0);
        for (const Clause& c : f.clauses)
            for (const Literal& l : c.literals) ++counts[l.variable];
        occ_start_.assign(n + 1, 0);
        for (int v = 0; v < n; ++v) occ_start_[v + 1] = occ_start_[v] + counts[v];
        occ_clause_.resize(occ_start_[n]);
        occ_negated_.resize(occ_start_[n]);
        std::vector<int> cursor(occ_start_.begin(), occ_start_.end() - 1);
        for (int ci = 0; ci < f.m(); ++ci)
            for (const Literal& l : f.clauses[ci].literals) {
                occ_clause_[cursor[l.variable]] = ci;
                occ_negated_[cursor[l.variable]] = l.negated ? 1 : 0;
                ++cursor[l.variable];
            }
        width_.resize(f.m());
        for (int ci = 0; ci < f.m(); ++ci) width_[ci] = static_cast<std::uint8_t>(f.clauses[ci].size());
        tau_.resize(f.m());
        pos_.resize(f.m());
        reset(Assignment{0, n});
    }

    // The state keeps a pointer to the formula; a temporary would dangle.
    explicit SlsState(CnfFormula&&) = delete;

    void reset(const Assignment& x) {
        if (x.n != f_->n) throw std::invalid_argument("SlsState::reset: dimension mismatch");
        x_ = x;
        unsat_.clear();
        for (int ci = 0; ci < f_->m(); ++ci) {
            tau_[ci] = static_cast<std::uint8_t>(count_true_literals(f_->clauses[ci], x_));
            pos_[ci] = -1;
            if (clause_unsat(ci)) {
                pos_[ci] = static_cast<int>(unsat_.size());
                unsat_.push_back(ci);
            }
        }
        flips_ = 0;
    }

    void flip(int v) {
        const bool was_true = x_.get(v);
        x_.flip(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j) {
            const int ci = occ_clause_[j];
            const bool lit_was_true = was_true != static_cast<bool>(occ_negated_[j]);
            const bool before = clause_unsat(ci);
            tau_[ci] = static_cast<std::uint8_t>(tau_[ci] + (lit_was_true ? -1 : 1));
            const bool after = clause_unsat(ci);
            if (before == after) continue;
            if (after) {
                pos_[ci] = static_cast<int>(unsat_.size());
                unsat_.push_back(ci);
            } else {
                const int p = pos_[ci];
                const int last = unsat_.back();
                unsat_[p] = last;
                pos_[last] = p;
                unsat_.pop_back();
                pos_[ci] = -1;
            }
        }
        ++flips_;
    }

    int make_tau(int v, int t) const {
        check_level(t);
        int count = 0;
        const bool xv = x_.get(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j)
            if (xv == static_cast<bool>(occ_negated_[j]) && tau_[occ_clause_[j]] == t - 1) ++count;
        return count;
    }

    int break_tau(int v, int t) const {
        check_level(t);
        int count = 0;
        const bool xv = x_.get(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j)
            if (xv != static_cast<bool>(occ_negated_[j]) && tau_[occ_clause_[j]] == t) ++count;
        return count;
    }

    // make_nae = make_1 + break_k and break_nae = break_1 + make_k, with k each
    // clause's own width, so mixed-width formulas keep the flip symmetry.
    int make_nae(int v) const {
        int count = 0;
        const bool xv = x_.get(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j) {
            const int ci = occ_clause_[j];
            if (xv != static_cast<bool>(occ_negated_[j])) {
                if (tau_[ci] == width_[ci]) ++count;
            } else {
                if (tau_[ci] == 0) ++count;
            }
        }
        return count;
    }

    int break_nae(int v) const {
        int count = 0;
        const bool xv = x_.get(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j) {
            const int ci = occ_clause_[j];
            if (xv != static_cast<bool>(occ_negated_[j])) {
                if (tau_[ci] == 1) ++count;
            } else {
                if (tau_[ci] == width_[ci] - 1) ++count;
            }
        }
        return count;
    }

    double lmake(int v, double w1, double w2) const {
        return w1 * make_tau(v, 1) + w2 * make_tau(v, 2);
    }

    double m2b2(int v, double w1, double w2) const {
        int m1 = 0, m2 = 0, bk = 0, bk1 = 0;
        const bool xv = x_.get(v);
        for (int j = occ_start_[v]; j < occ_start_[v + 1]; ++j) {
            const int ci = occ_clause_[j];
            if (xv != static_cast<bool>(occ_negated_[j])) {
                if (tau_[ci] == width_[ci])
                    ++bk;
                else if (tau_[ci] == width_[ci] - 1)
                    ++bk1;
            } else {
                if (tau_[ci] == 0)
                    ++m1;
                else if (tau_[ci] == 1)
                    ++m2;
            }
        }
        return w1 * (m1 + bk) + w2 * (m2 + bk1);
    }

    // Break score driving selection: NAE break in NAE mode, classic break in SAT mode.
    int break_score(int v) const {
        return f_->mode == Mode::Nae ? break_nae(v) : break_tau(v, 1);
    }

    const Assignment& assignment() const { return x_; }
    const CnfFormula& formula() const { return *f_; }
    const std::vector<int>& unsat_clauses() const { return unsat_; }
    int tau_of(int clause) const { return tau_[clause]; }
    std::uint64_t flips() const { return flips_; }

private:
    bool clause_unsat(int ci) const {
        if (f_->mode == Mode::Nae) return tau_[ci] == 0 || tau_[ci] == width_[ci];
        return tau_[ci] == 0;
    }

    static void check_level(int t) {
        if (t < 1) throw std::invalid_argument("tau level must be >= 1");
    }

    const CnfFormula* f_;
    Assignment x_{0, 0};
    std::vector<int> occ_start_;
    std::vector<int> occ_clause_;
    std::vector<std::uint8_t> occ_negated_;
    std::vector<std::uint8_t> width_;
    std::vector<std::uint8_t> tau_;
    std::vector<int> unsat_;
    std::vector<int> pos_;
    std::uint64_t flips_ = 0;
};

inline void validate(const SlsConfig& cfg) {
    if (!(cfg.noise >= 0.0 && cfg.noise <= 1.0))
        throw std::invalid_argument("SlsConfig: noise must lie in [0, 1]");
    if (cfg.w1 < 0 || cfg.w2 < 0) throw std::invalid_argument("SlsConfig: weights must be >= 0");
    if (cfg.max_flips == 0) throw std::invalid_argument("SlsConfig: max_flips must be positive");
}

inline SlsOutcome run_sls(const CnfFormula& f, const SlsConfig& cfg, SlsAlgorithm alg) {
    validate(cfg);
    Rng rng(cfg.seed);
    SlsState st(f);
    Assignment x{0, f.n};
    for (int v = 0; v < f.n; ++v)
        if (rng.bernoulli(0.5)) x.set(v, true);
    st.reset(x);

    std::vector<int> breaks;
    std::vector<int> ties;
    for (std::uint64_t flips = 0;; ++flips) {
        if (st.unsat_clauses().empty())
            return SlsOutcome{SlsStatus::Solved, st.assignment(), flips};
        if (flips >= cfg.max_flips) return SlsOutcome{SlsStatus::GaveUp, std::nullopt, cfg.max_flips};

        const auto& unsat = st.unsat_clauses();
        const int ci = unsat[rng.below(unsat.size())];
        const auto& lits = f.clauses[ci].literals;
        const int width = static_cast<int>(lits.size());

        breaks.assign(width, 0);
        int freebie = -1;
        for (int p = 0; p < width; ++p) {
            breaks[p] = st.break_score(lits[p].variable);
            if (breaks[p] == 0) {
                freebie = p;
                break;
            }
        }
        if (freebie >= 0) {
            st.flip(lits[freebie].variable);
            continue;
        }

        int chosen;
        if (rng.uniform01() < cfg.noise) {
            chosen = static_cast<int>(rng.below(width));
        } else {
            int min_break = std::numeric_limits<int>::max();
            for (int p = 0; p < width; ++p) min_break = std::min(min_break, breaks[p]);
            ties.clear();
            for (int p = 0; p < width; ++p)
                if (breaks[p] == min_break) ties.push_back(p);
            if (ties.size() > 1 && alg != SlsAlgorithm::WalkSat) {
                double best = -1.0;
                std::size_t kept = 0;
                for (std::size_t t = 0; t < ties.size(); ++t) {
                    const int v = lits[ties[t]].variable;
                    const double score = (alg == SlsAlgorithm::WalkSatLm)
                                             ? st.lmake(v, cfg.w1, cfg.w2)
                                             : st.m2b2(v, cfg.w1, cfg.w2);
                    if (score > best) {
                        best = score;
                        kept = 0;
                        ties[kept++] = ties[t];
                    } else if (score == best) {
                        ties[kept++] = ties[t];
                    }
                }
                ties.resize(kept);
            }
            chosen = ties.size() == 1 ? ties[0] : ties[rng.below(ties.size())];
        }
        st.flip(lits[chosen].variable);
    }
}

inline SlsOutcome walksat(const CnfFormula& f, const SlsConfig& cfg) {
    return run_sls(f, cfg, SlsAlgorithm::WalkSat);
}
inline SlsOutcome walksatlm(const CnfFormula& f, const SlsConfig& cfg) {
    return run_sls(f, cfg, SlsAlgorithm::WalkSatLm);
}
inline SlsOutcome walksatm2b2(const CnfFormula& f, const SlsConfig& cfg) {
    return run_sls(f, cfg, SlsAlgorithm::WalkSatM2b2);
}

struct GridSearchOptions {
    std::uint64_t max_flips = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct GridSearchResult {
    SlsConfig config;
    double median_flips = 0.0;
};

namespace detail {
inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty input");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return (v.size() % 2 == 1) ? v[h] : 0.5 * (v[h - 1] + v[h]);
}
}  // namespace detail

// Noise grid {i/20} crossed with w1 grid {j/10}, w2 = 1 - w1 (weights only for
// the lm/m2b2 variants), ordered noise-major so the first minimum realizes the
// lower-noise-then-lower-w1 tie break.
inline std::vector<SlsConfig> grid_configs(SlsAlgorithm alg, std::uint64_t max_flips) {
    std::vector<SlsConfig> configs;
    for (int i = 0; i <= 20; ++i) {
        const double noise = i / 20.0;
        if (alg == SlsAlgorithm::WalkSat) {
            configs.push_back(SlsConfig{noise, max_flips, 0.0, 0.0, 0});
        } else {
            for (int j = 0; j <= 10; ++j)
                configs.push_back(SlsConfig{noise, max_flips, j / 10.0, 1.0 - j / 10.0, 0});
        }
    }
    return configs;
}

// All configs replay the same per-instance seeds (common random numbers).
inline GridSearchResult grid_search(const std::vector<CnfFormula>& trainset, SlsAlgorithm alg,
                                    const GridSearchOptions& opt = {}) {
    if (trainset.empty()) throw std::invalid_argument("grid_search: empty trainset");
    const std::vector<SlsConfig> configs = grid_configs(alg, opt.max_flips);
    const Rng root(opt.seed);
    std::vector<std::uint64_t> instance_seeds(trainset.size());
    for (std::size_t i = 0; i < trainset.size(); ++i) instance_seeds[i] = root.child(i).seed();

    const std::size_t runs = configs.size() * trainset.size();
    std::vector<double> flips(runs, 0.0);
    parallel_for(runs, opt.threads, [&](std::size_t job) {
        const std::size_t c = job / trainset.size();
        const std::size_t i = job % trainset.size();
        SlsConfig cfg = configs[c];
        cfg.seed = instance_seeds[i];
        flips[job] = static_cast<double>(run_sls(trainset[i], cfg, alg).flips_used);
    });

    GridSearchResult best;
    double best_median = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < configs.size(); ++c) {
        std::vector<double> per_instance(flips.begin() + c * trainset.size(),
                                         flips.begin() + (c + 1) * trainset.size());
        const double med = detail::median_of(std::move(per_instance));
        if (med < best_median) {
            best_median = med;
            best.config = configs[c];
        }
    }
    best.config.seed = opt.seed;
    best.median_flips = best_median;
    return best;
}

}  // namespace naesat
