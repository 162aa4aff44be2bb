#pragma once

// Exact gradient of mean success probability by reverse-mode adjoint
// propagation (two statevectors per instance), and full-batch ADAM ascent
// from the beta = 0.01, gamma = -0.01 initialization.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "naesat/parallel.hpp"
#include "naesat/statevector.hpp"

namespace naesat {

struct Gradient {
    std::vector<double> dbeta;
    std::vector<double> dgamma;
    double objective = 0.0;  // mean success probability at the queried params
};

namespace detail {

// Objective F = <psi|Proj_{cost=0}|psi>. Walking gates backward with
// ket_j (state after gate j) and lam_j = (later gates)^dagger Proj psi gives
// dF/dtheta_j = 2 Re <lam_j| i G_j |ket_j> for U = e^{+i theta G}.
inline void instance_gradient(const CostTable& table, const QaoaParams& params,
                              std::vector<double>& gbeta, std::vector<double>& ggamma,
                              double& objective) {
    const int depth = params.depth();
    StateVector ket = run_circuit(table, params);
    StateVector lam = ket;
    double p = 0;
    for (std::size_t x = 0; x < lam.amp.size(); ++x) {
        if (table.costs[x] == 0)
            p += std::norm(lam.amp[x]);
        else
            lam.amp[x] = 0;
    }
    objective = p;

    const std::size_t size = ket.amp.size();
    for (int i = depth - 1; i >= 0; --i) {
        // Mixer generator H_B = sum_j X_j: 2 Re <lam| i H_B |ket> = -2 Im z.
        std::complex<double> z = 0;
        for (int j = 0; j < table.n; ++j) {
            const std::size_t bit = std::size_t{1} << j;
            for (std::size_t x = 0; x < size; ++x)
                z += std::conj(lam.amp[x]) * ket.amp[x ^ bit];
        }
        gbeta[i] = -2.0 * z.imag();
        apply_mixer(ket, -params.beta[i]);
        apply_mixer(lam, -params.beta[i]);

        // Cost gate e^{-i gamma H_C}: 2 Re <lam| -i H_C |ket> = 2 Im z.
        std::complex<double> zc = 0;
        for (std::size_t x = 0; x < size; ++x)
            zc += static_cast<double>(table.costs[x]) * std::conj(lam.amp[x]) * ket.amp[x];
        ggamma[i] = 2.0 * zc.imag();
        apply_cost_unitary(ket, table, -params.gamma[i]);
        apply_cost_unitary(lam, table, -params.gamma[i]);
    }
}

inline void check_trainset(const std::vector<CostTable>& trainset) {
    if (trainset.empty()) throw std::invalid_argument("trainset must be non-empty");
    for (const CostTable& t : trainset)
        if (t.n != trainset.front().n)
            throw std::invalid_argument("trainset instances must share n");
}

}  // namespace detail

inline Gradient mean_gradient(const std::vector<CostTable>& trainset, const QaoaParams& params,
                              int threads = 1) {
    detail::check_trainset(trainset);
    params.validate();
    const int depth = params.depth();
    const std::size_t t = trainset.size();
    std::vector<std::vector<double>> gb(t), gg(t);
    std::vector<double> obj(t, 0.0);
    parallel_for(t, threads, [&](std::size_t i) {
        gb[i].assign(depth, 0.0);
        gg[i].assign(depth, 0.0);
        detail::instance_gradient(trainset[i], params, gb[i], gg[i], obj[i]);
    });
    Gradient g;
    g.dbeta.assign(depth, 0.0);
    g.dgamma.assign(depth, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
        for (int d = 0; d < depth; ++d) {
            g.dbeta[d] += gb[i][d];
            g.dgamma[d] += gg[i][d];
        }
        g.objective += obj[i];
    }
    const double inv = 1.0 / static_cast<double>(t);
    for (int d = 0; d < depth; ++d) {
        g.dbeta[d] *= inv;
        g.dgamma[d] *= inv;
    }
    g.objective *= inv;
    return g;
}

inline double mean_success_probability(const std::vector<CostTable>& trainset,
                                       const QaoaParams& params, int threads = 1) {
    detail::check_trainset(trainset);
    std::vector<double> p(trainset.size(), 0.0);
    parallel_for(trainset.size(), threads, [&](std::size_t i) {
        const StateVector state = run_circuit(trainset[i], params);
        p[i] = success_probability(state, trainset[i]);
    });
    double mean = 0;
    for (double v : p) mean += v;
    return mean / static_cast<double>(trainset.size());
}

struct TrainOptions {
    int depth = 1;
    int epochs = 100;
    double learning_rate = 0.01;
    double beta_init = 0.01;
    double gamma_init = -0.01;
    int threads = 1;
};

struct TrainResult {
    QaoaParams params;
    std::vector<double> trace;  // objective before training plus one entry per epoch
};

inline TrainResult train_params(const std::vector<CostTable>& trainset, const TrainOptions& opt) {
    detail::check_trainset(trainset);
    if (opt.depth < 1) throw std::invalid_argument("train_params: depth must be >= 1");
    if (opt.epochs < 0) throw std::invalid_argument("train_params: epochs must be >= 0");

    TrainResult result;
    result.params.beta.assign(opt.depth, opt.beta_init);
    result.params.gamma.assign(opt.depth, opt.gamma_init);

    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const int dim = 2 * opt.depth;
    std::vector<double> m(dim, 0.0), v(dim, 0.0);

    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        const Gradient g = mean_gradient(trainset, result.params, opt.threads);
        result.trace.push_back(g.objective);
        std::vector<double> grad(dim);
        for (int d = 0; d < opt.depth; ++d) {
            grad[d] = g.dbeta[d];
            grad[opt.depth + d] = g.dgamma[d];
        }
        const int step = epoch + 1;
        const double c1 = 1.0 - std::pow(b1, step);
        const double c2 = 1.0 - std::pow(b2, step);
        for (int d = 0; d < dim; ++d) {
            m[d] = b1 * m[d] + (1.0 - b1) * grad[d];
            v[d] = b2 * v[d] + (1.0 - b2) * grad[d] * grad[d];
            const double update = opt.learning_rate * (m[d] / c1) / (std::sqrt(v[d] / c2) + eps);
            if (d < opt.depth)
                result.params.beta[d] += update;
            else
                result.params.gamma[d - opt.depth] += update;
        }
    }
    result.trace.push_back(mean_success_probability(trainset, result.params, opt.threads));
    return result;
}

}  // namespace naesat
