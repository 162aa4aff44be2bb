#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "naesat/instance_gen.hpp"
#include "naesat/qaoa_train.hpp"
#include "naesat/rng.hpp"
#include "naesat/statevector.hpp"

using namespace naesat;

namespace {

std::vector<CostTable> make_trainset(int n, int count, std::uint64_t seed) {
    EnsembleSpec spec;
    spec.n = n;
    spec.k = 3;
    spec.r = nae_threshold(3);
    spec.count = count;
    spec.seed = seed;
    std::vector<CostTable> tables;
    for (const CnfFormula& f : generate_satisfiable_ensemble(spec))
        tables.push_back(precompute_costs(f));
    return tables;
}

QaoaParams random_params(int depth, Rng& rng) {
    QaoaParams p;
    for (int i = 0; i < depth; ++i) {
        p.beta.push_back(2.0 * rng.uniform01() - 1.0);
        p.gamma.push_back(2.0 * rng.uniform01() - 1.0);
    }
    return p;
}

// Central finite differences on the mean success probability.
Gradient fd_gradient(const std::vector<CostTable>& trainset, const QaoaParams& params, double h) {
    Gradient g;
    g.objective = mean_success_probability(trainset, params);
    for (std::size_t i = 0; i < params.beta.size(); ++i) {
        QaoaParams plus = params, minus = params;
        plus.beta[i] += h;
        minus.beta[i] -= h;
        g.dbeta.push_back((mean_success_probability(trainset, plus) -
                           mean_success_probability(trainset, minus)) /
                          (2 * h));
        plus = minus = params;
        plus.gamma[i] += h;
        minus.gamma[i] -= h;
        g.dgamma.push_back((mean_success_probability(trainset, plus) -
                            mean_success_probability(trainset, minus)) /
                           (2 * h));
    }
    return g;
}

void require_close(double adjoint, double fd) {
    const double tol = std::max(1e-5 * std::abs(adjoint), 1e-9);
    REQUIRE(std::abs(adjoint - fd) < tol);
}

}  // namespace

TEST_CASE("adjoint gradient agrees with finite differences") {
    Rng rng(501);
    const auto trainset = make_trainset(6, 5, 7001);
    for (int depth = 1; depth <= 3; ++depth) {
        for (int trial = 0; trial < 3; ++trial) {
            const QaoaParams params = random_params(depth, rng);
            const Gradient adj = mean_gradient(trainset, params);
            const Gradient fd = fd_gradient(trainset, params, 1e-5);
            REQUIRE(adj.objective == Catch::Approx(fd.objective).margin(1e-12));
            for (int i = 0; i < depth; ++i) {
                require_close(adj.dbeta[i], fd.dbeta[i]);
                require_close(adj.dgamma[i], fd.dgamma[i]);
            }
        }
    }
}

TEST_CASE("beta gradient vanishes when gamma is zero") {
    const auto trainset = make_trainset(6, 4, 7002);
    QaoaParams params;
    params.beta = {0.37, -0.52};
    params.gamma = {0.0, 0.0};
    const Gradient g = mean_gradient(trainset, params);
    for (double d : g.dbeta) REQUIRE(std::abs(d) < 1e-12);
}

TEST_CASE("empty formulas produce zero gradient and unit objective") {
    CnfFormula empty;
    empty.n = 4;
    const std::vector<CostTable> trainset = {precompute_costs(empty)};
    QaoaParams params;
    params.beta = {0.3};
    params.gamma = {0.7};
    const Gradient g = mean_gradient(trainset, params);
    REQUIRE(g.objective == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(g.dbeta[0]) < 1e-12);
    REQUIRE(std::abs(g.dgamma[0]) < 1e-12);
}

TEST_CASE("gradient objective equals the mean success probability") {
    Rng rng(502);
    const auto trainset = make_trainset(6, 4, 7003);
    const QaoaParams params = random_params(2, rng);
    const Gradient g = mean_gradient(trainset, params);
    REQUIRE(g.objective == Catch::Approx(mean_success_probability(trainset, params)).margin(1e-12));
}

TEST_CASE("trainset validation") {
    QaoaParams params;
    params.beta = {0.1};
    params.gamma = {0.1};
    REQUIRE_THROWS_AS(mean_gradient({}, params), std::invalid_argument);

    CnfFormula a, b;
    a.n = 3;
    b.n = 4;
    const std::vector<CostTable> mixed = {precompute_costs(a), precompute_costs(b)};
    REQUIRE_THROWS_AS(mean_gradient(mixed, params), std::invalid_argument);
}

TEST_CASE("threaded gradient reduction is bitwise deterministic") {
    Rng rng(503);
    const auto trainset = make_trainset(7, 6, 7004);
    const QaoaParams params = random_params(2, rng);
    const Gradient serial = mean_gradient(trainset, params, 1);
    const Gradient threaded = mean_gradient(trainset, params, 4);
    REQUIRE(serial.objective == threaded.objective);
    REQUIRE(serial.dbeta == threaded.dbeta);
    REQUIRE(serial.dgamma == threaded.dgamma);
}

TEST_CASE("training on empty formulas leaves the initialization in place") {
    CnfFormula empty;
    empty.n = 3;
    const std::vector<CostTable> trainset = {precompute_costs(empty)};
    TrainOptions opt;
    opt.depth = 2;
    opt.epochs = 5;
    const TrainResult result = train_params(trainset, opt);
    for (double b : result.params.beta) REQUIRE(b == Catch::Approx(0.01).margin(1e-15));
    for (double gm : result.params.gamma) REQUIRE(gm == Catch::Approx(-0.01).margin(1e-15));
    for (double v : result.trace) REQUIRE(v == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("training increases the objective") {
    const auto trainset = make_trainset(8, 10, 7005);
    TrainOptions opt;
    opt.depth = 2;
    opt.epochs = 60;
    const TrainResult result = train_params(trainset, opt);
    REQUIRE(result.trace.size() == 61);
    REQUIRE(result.trace.back() > result.trace.front() + 1e-3);
    REQUIRE(result.trace.back() ==
            Catch::Approx(mean_success_probability(trainset, result.params)).margin(1e-12));
}

TEST_CASE("trace has one entry per epoch plus the final objective") {
    const auto trainset = make_trainset(5, 3, 7006);
    TrainOptions opt;
    opt.depth = 1;
    opt.epochs = 7;
    REQUIRE(train_params(trainset, opt).trace.size() == 8);
    opt.epochs = 0;
    const TrainResult untouched = train_params(trainset, opt);
    REQUIRE(untouched.trace.size() == 1);
    REQUIRE(untouched.params.beta == std::vector<double>{0.01});
    REQUIRE(untouched.params.gamma == std::vector<double>{-0.01});
}

TEST_CASE("training is deterministic") {
    const auto trainset = make_trainset(6, 5, 7007);
    TrainOptions opt;
    opt.depth = 2;
    opt.epochs = 20;
    const TrainResult a = train_params(trainset, opt);
    const TrainResult b = train_params(trainset, opt);
    REQUIRE(a.params.beta == b.params.beta);
    REQUIRE(a.params.gamma == b.params.gamma);
    REQUIRE(a.trace == b.trace);
}

TEST_CASE("training option validation") {
    const auto trainset = make_trainset(5, 2, 7008);
    TrainOptions opt;
    opt.depth = 0;
    REQUIRE_THROWS_AS(train_params(trainset, opt), std::invalid_argument);
    opt.depth = 1;
    opt.epochs = -1;
    REQUIRE_THROWS_AS(train_params(trainset, opt), std::invalid_argument);
}
