#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/instance_gen.hpp"
#include "naesat/pauli.hpp"
#include "naesat/rng.hpp"
#include "naesat/statevector.hpp"

using namespace naesat;

namespace {

CnfFormula single_clause(int n, std::vector<Literal> lits) {
    CnfFormula f;
    f.n = n;
    f.clauses = {Clause{std::move(lits)}};
    return f;
}

}  // namespace

TEST_CASE("width-2 clause expands to a single ZZ term") {
    const CnfFormula f = single_clause(2, {Literal{0, false}, Literal{1, false}});
    const auto terms = pauli_expansion(f);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].support == std::vector<int>{0, 1});
    REQUIRE(terms[0].coefficient == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(pauli_constant_offset(f) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("negations flip the term sign") {
    const CnfFormula f = single_clause(2, {Literal{0, true}, Literal{1, false}});
    const auto terms = pauli_expansion(f);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].coefficient == Catch::Approx(-0.5).margin(1e-15));
}

TEST_CASE("only even-size supports appear") {
    Rng rng(601);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + int(rng.below(5));
        const int k = 2 + int(rng.below(3));
        const CnfFormula f = sample_instance(n, k, 3.0, rng);
        for (const PauliZTerm& t : pauli_expansion(f)) {
            REQUIRE(t.support.size() % 2 == 0);
            REQUIRE(!t.support.empty());
            REQUIRE(std::is_sorted(t.support.begin(), t.support.end()));
        }
    }
}

TEST_CASE("diagonal values reconstruct the cost function") {
    Rng rng(602);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + int(rng.below(7));
        const int k = 2 + int(rng.below(std::min(n, 4) - 1));
        const CnfFormula f = sample_instance(n, k, 2.5, rng);
        const auto terms = pauli_expansion(f);
        const double offset = pauli_constant_offset(f);
        const CostTable table = precompute_costs(f);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const Assignment a = Assignment::from_index(x, n);
            REQUIRE(pauli_diagonal_value(terms, a) + offset ==
                    Catch::Approx(double(table.costs[x])).margin(1e-9));
        }
    }
}

TEST_CASE("opposing clauses cancel to a constant") {
    CnfFormula f;
    f.n = 2;
    f.clauses = {Clause{{Literal{0, false}, Literal{1, false}}},
                 Clause{{Literal{0, true}, Literal{1, false}}}};
    const auto terms = pauli_expansion(f);
    REQUIRE(terms.empty());
    // The cost really is constant: every assignment violates exactly one clause.
    for (std::uint64_t x = 0; x < 4; ++x)
        REQUIRE(cost(f, Assignment::from_index(x, 2)) == 1);
    REQUIRE(pauli_constant_offset(f) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("repeated clauses add coefficients") {
    CnfFormula f;
    f.n = 2;
    f.clauses = {Clause{{Literal{0, false}, Literal{1, false}}},
                 Clause{{Literal{0, false}, Literal{1, false}}}};
    const auto terms = pauli_expansion(f);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].coefficient == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("empty formula has no terms and zero offset") {
    CnfFormula f;
    f.n = 5;
    REQUIRE(pauli_expansion(f).empty());
    REQUIRE(pauli_constant_offset(f) == 0.0);
}

TEST_CASE("expansion rejects SAT mode and repeated variables") {
    CnfFormula sat = single_clause(2, {Literal{0, false}, Literal{1, false}});
    sat.mode = Mode::Sat;
    REQUIRE_THROWS_AS(pauli_expansion(sat), std::invalid_argument);

    const CnfFormula dup = single_clause(2, {Literal{0, false}, Literal{0, true}});
    REQUIRE_THROWS_AS(pauli_expansion(dup), std::invalid_argument);
}
