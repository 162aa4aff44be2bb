#include <catch2/catch_amalgamated.hpp>

#include "naesat/formula.hpp"
#include "naesat/instance_gen.hpp"
#include "naesat/rng.hpp"

using namespace naesat;

namespace {

Clause clause_x0_x1_notx2() {
    return Clause{{Literal{0, false}, Literal{1, false}, Literal{2, true}}};
}

CnfFormula e1() {
    CnfFormula f;
    f.n = 3;
    f.mode = Mode::Nae;
    f.clauses = {clause_x0_x1_notx2()};
    return f;
}

// Test-local evaluator, written against the satisfaction definitions rather
// than the library's helpers.
int oracle_cost(const CnfFormula& f, std::uint64_t x) {
    int bad = 0;
    for (const Clause& c : f.clauses) {
        int trues = 0;
        for (const Literal& l : c.literals) {
            const int bit = static_cast<int>((x >> l.variable) & 1);
            const int value = l.negated ? 1 - bit : bit;
            trues += value;
        }
        bool ok;
        if (f.mode == Mode::Sat)
            ok = trues > 0;
        else
            ok = trues > 0 && trues < static_cast<int>(c.literals.size());
        if (!ok) ++bad;
    }
    return bad;
}

}  // namespace

TEST_CASE("count_true_literals") {
    const Clause c = clause_x0_x1_notx2();
    REQUIRE(count_true_literals(c, Assignment::from_index(0b011, 3)) == 3);
    REQUIRE(count_true_literals(c, Assignment::from_index(0b100, 3)) == 0);
    REQUIRE(count_true_literals(c, Assignment::from_index(0b101, 3)) == 1);
}

TEST_CASE("clause_satisfied in both modes") {
    const Clause c = clause_x0_x1_notx2();
    REQUIRE_FALSE(clause_satisfied(c, Assignment::from_index(0b011, 3), Mode::Nae));
    REQUIRE(clause_satisfied(c, Assignment::from_index(0b001, 3), Mode::Nae));
    REQUIRE(clause_satisfied(c, Assignment::from_index(0b011, 3), Mode::Sat));
}

TEST_CASE("cost on E1 and the empty formula") {
    const CnfFormula f = e1();
    REQUIRE(cost(f, Assignment::from_index(0b100, 3)) == 1);
    REQUIRE(cost(f, Assignment::from_index(0b001, 3)) == 0);

    CnfFormula empty;
    empty.n = 4;
    REQUIRE(cost(empty, Assignment::from_index(0b1010, 4)) == 0);
}

TEST_CASE("cost rejects dimension mismatch") {
    REQUIRE_THROWS_AS(cost(e1(), Assignment::from_index(0, 2)), std::invalid_argument);
}

TEST_CASE("assignment bit operations") {
    Assignment a = Assignment::from_index(0b0101, 4);
    REQUIRE(a.get(0));
    REQUIRE_FALSE(a.get(1));
    a.flip(1);
    REQUIRE(a.get(1));
    a.set(0, false);
    REQUIRE(a.index() == 0b0110);
    REQUIRE(a.flipped_all().index() == 0b1001);
    REQUIRE_THROWS_AS(a.get(4), std::invalid_argument);
    REQUIRE_THROWS_AS(Assignment::from_index(16, 4), std::invalid_argument);
}

TEST_CASE("NAE satisfaction implies SAT satisfaction") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        const int k = 2 + static_cast<int>(rng.below(std::min(n, 4) - 1));
        CnfFormula f = sample_instance(n, k, 2.0, rng);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const Assignment a = Assignment::from_index(x, n);
            for (const Clause& c : f.clauses)
                if (clause_satisfied(c, a, Mode::Nae)) REQUIRE(clause_satisfied(c, a, Mode::Sat));
        }
    }
}

TEST_CASE("global flip symmetry of NAE cost") {
    Rng rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(8));
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        const CnfFormula f = sample_instance(n, k, 1.5, rng);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const Assignment a = Assignment::from_index(x, n);
            REQUIRE(cost(f, a) == cost(f, a.flipped_all()));
        }
    }
}

TEST_CASE("cost agrees with an independent per-clause oracle") {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9));  // up to 10
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        CnfFormula f = sample_instance(n, k, 2.0, rng);
        if (trial % 2 == 0) f.mode = Mode::Sat;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
            REQUIRE(cost(f, Assignment::from_index(x, n)) == oracle_cost(f, x));
    }
}
