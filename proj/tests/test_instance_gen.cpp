#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "naesat/dimacs.hpp"
#include "naesat/instance_gen.hpp"
#include "naesat/solver.hpp"

using namespace naesat;

TEST_CASE("nae_threshold evaluates its formula") {
    REQUIRE(nae_threshold(3) == Catch::Approx(2.1760151319598084).epsilon(1e-12));
    REQUIRE(nae_threshold(5) == Catch::Approx(10.49378).margin(1e-5));
    REQUIRE(nae_threshold(9) == Catch::Approx(176.84911).margin(1e-5));
    REQUIRE_THROWS_AS(nae_threshold(1), std::invalid_argument);
}

TEST_CASE("algorithmic_ratio evaluates its formula and sits below threshold") {
    REQUIRE(algorithmic_ratio(3) == Catch::Approx(1.4648164).margin(1e-6));
    REQUIRE(algorithmic_ratio(2) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    for (int k = 3; k <= 10; ++k) REQUIRE(algorithmic_ratio(k) < nae_threshold(k));
    REQUIRE_THROWS_AS(algorithmic_ratio(1), std::invalid_argument);
}

TEST_CASE("r=0 always yields the empty formula") {
    Rng rng(401);
    for (int i = 0; i < 20; ++i) REQUIRE(sample_instance(6, 3, 0.0, rng).m() == 0);
}

TEST_CASE("clause-count mean matches Poisson(rn)") {
    Rng rng(403);
    const int trials = 10000;
    double total = 0;
    for (int i = 0; i < trials; ++i) total += sample_instance(6, 3, 2.0, rng).m();
    REQUIRE(std::fabs(total / trials - 12.0) < 4.0 * std::sqrt(12.0 / trials));
}

TEST_CASE("clauses have distinct variables and fair negations") {
    Rng rng(405);
    std::uint64_t literals = 0, negated = 0, clauses = 0;
    while (clauses < 10000) {
        const CnfFormula f = sample_instance(6, 3, 2.0, rng);
        for (const Clause& c : f.clauses) {
            REQUIRE(c.size() == 3);
            std::set<int> vars;
            for (const Literal& l : c.literals) {
                REQUIRE(vars.insert(l.variable).second);
                ++literals;
                negated += l.negated ? 1 : 0;
            }
            ++clauses;
        }
    }
    const double fraction = static_cast<double>(negated) / static_cast<double>(literals);
    REQUIRE(fraction > 0.485);
    REQUIRE(fraction < 0.515);
}

TEST_CASE("variable coverage is uniform across positions") {
    Rng rng(407);
    std::vector<int> hits(6, 0);
    int total = 0;
    for (int i = 0; i < 3000; ++i) {
        const CnfFormula f = sample_instance(6, 3, 1.0, rng);
        for (const Clause& c : f.clauses)
            for (const Literal& l : c.literals) {
                ++hits[l.variable];
                ++total;
            }
    }
    for (int v = 0; v < 6; ++v) {
        const double share = static_cast<double>(hits[v]) / total;
        REQUIRE(std::fabs(share - 1.0 / 6.0) < 0.01);
    }
}

TEST_CASE("sample_instance validates arguments") {
    Rng rng(409);
    REQUIRE_THROWS_AS(sample_instance(2, 3, 1.0, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(sample_instance(4, 2, -1.0, rng), std::invalid_argument);
}

TEST_CASE("satisfiable ensembles are deterministic and verified") {
    EnsembleSpec spec{8, 3, nae_threshold(3), 10, 7, true};
    const auto a = generate_satisfiable_ensemble(spec);
    const auto b = generate_satisfiable_ensemble(spec);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(serialize_dimacs(a[i]) == serialize_dimacs(b[i]));
        REQUIRE(is_nae_satisfiable(a[i]));
        REQUIRE(brute_force_count(a[i]) > 0);
    }
    const auto c = generate_satisfiable_ensemble(spec, 4);
    for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(serialize_dimacs(a[i]) == serialize_dimacs(c[i]));
}

TEST_CASE("r=0 ensemble is vacuously satisfiable") {
    EnsembleSpec spec{5, 2, 0.0, 4, 1, true};
    const auto ens = generate_satisfiable_ensemble(spec);
    REQUIRE(ens.size() == 4);
    for (const auto& f : ens) REQUIRE(f.m() == 0);
}

TEST_CASE("density far above threshold exhausts the rejection budget") {
    EnsembleSpec spec{10, 3, 5.0, 1, 3, true};
    REQUIRE_THROWS_AS(generate_satisfiable_ensemble(spec, 1, 300), BudgetError);
}

TEST_CASE("ensemble spec validation") {
    REQUIRE_THROWS_AS(generate_satisfiable_ensemble(EnsembleSpec{2, 3, 1.0, 1, 0, true}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(generate_satisfiable_ensemble(EnsembleSpec{4, 2, 1.0, 0, 0, true}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(generate_satisfiable_ensemble(EnsembleSpec{4, 2, -0.5, 1, 0, true}),
                      std::invalid_argument);
}
