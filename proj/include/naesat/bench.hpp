#pragma once

// Benchmark records and the fit/report assembly behind the CLI. Records are
// ordered JSON with the timestamp isolated in one top-level field; aggregates
// are always recomputable from the per-instance arrays they sit next to.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "naesat/ensemble_io.hpp"
#include "naesat/metrics.hpp"
#include "naesat/parallel.hpp"
#include "naesat/qaoa_train.hpp"
#include "naesat/sls.hpp"
#include "naesat/version.hpp"

namespace naesat {

inline std::string current_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct TrainedParams {
    int k = 0;
    int trainset_n = 0;
    int depth = 0;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::string trainset_hash;
    std::vector<double> trace;
    std::uint64_t seed = 0;
    double learning_rate = 0.0;
    int epochs = 0;

    QaoaParams params() const { return QaoaParams{beta, gamma}; }
};

inline nlohmann::ordered_json to_json(const TrainedParams& p) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "qaoa_params";
    j["code_version"] = kVersion;
    j["k"] = p.k;
    j["trainset_n"] = p.trainset_n;
    j["depth"] = p.depth;
    j["beta"] = p.beta;
    j["gamma"] = p.gamma;
    j["trainset_hash"] = p.trainset_hash;
    j["seed"] = p.seed;
    j["learning_rate"] = p.learning_rate;
    j["epochs"] = p.epochs;
    j["trace"] = p.trace;
    return j;
}

inline TrainedParams trained_params_from_json(const nlohmann::json& j) {
    TrainedParams p;
    p.k = j.at("k").get<int>();
    p.trainset_n = j.at("trainset_n").get<int>();
    p.depth = j.at("depth").get<int>();
    p.beta = j.at("beta").get<std::vector<double>>();
    p.gamma = j.at("gamma").get<std::vector<double>>();
    p.trainset_hash = j.at("trainset_hash").get<std::string>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.learning_rate = j.at("learning_rate").get<double>();
    p.epochs = j.at("epochs").get<int>();
    p.trace = j.at("trace").get<std::vector<double>>();
    if (p.beta.size() != p.gamma.size() || static_cast<int>(p.beta.size()) != p.depth)
        throw std::invalid_argument("params file: inconsistent depth");
    return p;
}

struct QaoaEvalRecord {
    int k = 0;
    int n = 0;
    double r = 0.0;
    int depth = 0;
    std::string ensemble_hash;
    std::uint64_t seed = 0;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> p_succ;
    std::vector<std::uint64_t> running_time;
    double mean_p_succ = 0.0;
    double median_rt = 0.0;
    std::string timestamp;
};

// Per-instance success probabilities and one geometric running-time draw each
// (child RNG stream per instance), with serial aggregation.
inline QaoaEvalRecord run_qaoa_eval(const StoredEnsemble& ensemble, const TrainedParams& params,
                                    std::uint64_t seed, int threads = 1) {
    if (ensemble.formulas.empty()) throw std::invalid_argument("run_qaoa_eval: empty ensemble");
    if (params.k != ensemble.spec.k)
        throw std::invalid_argument("run_qaoa_eval: params k does not match ensemble k");
    const QaoaParams qp = params.params();
    qp.validate();
    QaoaEvalRecord rec;
    rec.k = ensemble.spec.k;
    rec.n = ensemble.spec.n;
    rec.r = ensemble.spec.r;
    rec.depth = params.depth;
    rec.ensemble_hash = ensemble.manifest_hash;
    rec.seed = seed;
    rec.beta = params.beta;
    rec.gamma = params.gamma;
    const std::size_t count = ensemble.formulas.size();
    rec.p_succ.assign(count, 0.0);
    rec.running_time.assign(count, 0);
    const Rng root(seed);
    parallel_for(count, threads, [&](std::size_t i) {
        const CostTable table = precompute_costs(ensemble.formulas[i]);
        const StateVector state = run_circuit(table, qp);
        const double p = success_probability(state, table);
        rec.p_succ[i] = p;
        Rng rng = root.child(i);
        if (!(p > 0.0))
            throw std::invalid_argument("run_qaoa_eval: instance with zero success probability");
        rec.running_time[i] = geometric_sample(p, rng);
    });
    double sum = 0;
    std::vector<double> rts;
    rts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        sum += rec.p_succ[i];
        rts.push_back(static_cast<double>(rec.running_time[i]));
    }
    rec.mean_p_succ = sum / static_cast<double>(count);
    rec.median_rt = median(std::move(rts));
    return rec;
}

inline nlohmann::ordered_json to_json(const QaoaEvalRecord& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "qaoa_eval";
    j["code_version"] = kVersion;
    j["k"] = r.k;
    j["n"] = r.n;
    j["r"] = r.r;
    j["depth"] = r.depth;
    j["ensemble_hash"] = r.ensemble_hash;
    j["seed"] = r.seed;
    j["beta"] = r.beta;
    j["gamma"] = r.gamma;
    auto per = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.p_succ.size(); ++i) {
        nlohmann::ordered_json e;
        e["id"] = i;
        e["p_succ"] = r.p_succ[i];
        e["running_time"] = r.running_time[i];
        per.push_back(std::move(e));
    }
    j["per_instance"] = std::move(per);
    j["aggregates"] = {{"mean_p_succ", r.mean_p_succ}, {"median_running_time", r.median_rt}};
    j["timestamp"] = r.timestamp;
    return j;
}

inline QaoaEvalRecord qaoa_eval_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "qaoa_eval")
        throw std::invalid_argument("record is not a qaoa_eval record");
    QaoaEvalRecord r;
    r.k = j.at("k").get<int>();
    r.n = j.at("n").get<int>();
    r.r = j.at("r").get<double>();
    r.depth = j.at("depth").get<int>();
    r.ensemble_hash = j.at("ensemble_hash").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.beta = j.at("beta").get<std::vector<double>>();
    r.gamma = j.at("gamma").get<std::vector<double>>();
    for (const auto& e : j.at("per_instance")) {
        r.p_succ.push_back(e.at("p_succ").get<double>());
        r.running_time.push_back(e.at("running_time").get<std::uint64_t>());
    }
    r.mean_p_succ = j.at("aggregates").at("mean_p_succ").get<double>();
    r.median_rt = j.at("aggregates").at("median_running_time").get<double>();
    r.timestamp = j.value("timestamp", "");
    return r;
}

struct SlsBenchRecord {
    int k = 0;
    int n = 0;
    double r = 0.0;
    SlsAlgorithm algorithm = SlsAlgorithm::WalkSat;
    SlsConfig config;
    int restarts = 9;
    bool tuned = false;
    std::string ensemble_hash;
    std::uint64_t seed = 0;
    std::vector<double> median_flips_per_instance;
    std::vector<int> solved_per_instance;
    double median_flips = 0.0;
    double gaveup_fraction = 0.0;
    bool gaveup_flagged = false;
    std::string timestamp;
};

// R restarts per instance with independent child streams; per-instance median
// over restarts, then ensemble median. GaveUp counts as max_flips.
inline SlsBenchRecord run_sls_bench(const StoredEnsemble& ensemble, SlsAlgorithm alg,
                                    const SlsConfig& config, int restarts, std::uint64_t seed,
                                    int threads = 1, bool tuned = false,
                                    double gaveup_threshold = 0.1) {
    if (ensemble.formulas.empty()) throw std::invalid_argument("run_sls_bench: empty ensemble");
    if (restarts < 1) throw std::invalid_argument("run_sls_bench: restarts must be >= 1");
    validate(config);
    SlsBenchRecord rec;
    rec.k = ensemble.spec.k;
    rec.n = ensemble.spec.n;
    rec.r = ensemble.spec.r;
    rec.algorithm = alg;
    rec.config = config;
    rec.restarts = restarts;
    rec.tuned = tuned;
    rec.ensemble_hash = ensemble.manifest_hash;
    rec.seed = seed;
    const std::size_t count = ensemble.formulas.size();
    const std::size_t runs = count * static_cast<std::size_t>(restarts);
    std::vector<double> flips(runs, 0.0);
    std::vector<std::uint8_t> solved(runs, 0);
    const Rng root(seed);
    parallel_for(runs, threads, [&](std::size_t job) {
        const std::size_t i = job / restarts;
        SlsConfig cfg = config;
        cfg.seed = root.child(job).seed();
        const SlsOutcome out = run_sls(ensemble.formulas[i], cfg, alg);
        flips[job] = static_cast<double>(out.flips_used);
        solved[job] = out.status == SlsStatus::Solved ? 1 : 0;
    });
    std::size_t gaveup = 0;
    std::vector<double> per_instance;
    per_instance.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> mine(flips.begin() + i * restarts, flips.begin() + (i + 1) * restarts);
        int ok = 0;
        for (std::size_t rr = 0; rr < mine.size(); ++rr) ok += solved[i * restarts + rr];
        gaveup += restarts - ok;
        rec.solved_per_instance.push_back(ok);
        per_instance.push_back(median(std::move(mine)));
    }
    rec.median_flips_per_instance = per_instance;
    rec.median_flips = median(std::move(per_instance));
    rec.gaveup_fraction = static_cast<double>(gaveup) / static_cast<double>(runs);
    rec.gaveup_flagged = rec.gaveup_fraction > gaveup_threshold;
    return rec;
}

inline nlohmann::ordered_json to_json(const SlsBenchRecord& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "sls_bench";
    j["code_version"] = kVersion;
    j["k"] = r.k;
    j["n"] = r.n;
    j["r"] = r.r;
    j["algorithm"] = to_string(r.algorithm);
    j["config"] = {{"noise", r.config.noise},
                   {"w1", r.config.w1},
                   {"w2", r.config.w2},
                   {"max_flips", r.config.max_flips}};
    j["restarts"] = r.restarts;
    j["tuned"] = r.tuned;
    j["ensemble_hash"] = r.ensemble_hash;
    j["seed"] = r.seed;
    auto per = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.median_flips_per_instance.size(); ++i) {
        nlohmann::ordered_json e;
        e["id"] = i;
        e["median_flips"] = r.median_flips_per_instance[i];
        e["solved"] = r.solved_per_instance[i];
        per.push_back(std::move(e));
    }
    j["per_instance"] = std::move(per);
    j["aggregates"] = {{"median_flips", r.median_flips},
                       {"gaveup_fraction", r.gaveup_fraction},
                       {"gaveup_flagged", r.gaveup_flagged}};
    j["timestamp"] = r.timestamp;
    return j;
}

inline SlsBenchRecord sls_bench_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "sls_bench")
        throw std::invalid_argument("record is not an sls_bench record");
    SlsBenchRecord r;
    r.k = j.at("k").get<int>();
    r.n = j.at("n").get<int>();
    r.r = j.at("r").get<double>();
    const std::string alg = j.at("algorithm").get<std::string>();
    if (alg == "walksat")
        r.algorithm = SlsAlgorithm::WalkSat;
    else if (alg == "walksatlm")
        r.algorithm = SlsAlgorithm::WalkSatLm;
    else if (alg == "walksatm2b2")
        r.algorithm = SlsAlgorithm::WalkSatM2b2;
    else
        throw std::invalid_argument("unknown algorithm: " + alg);
    r.config.noise = j.at("config").at("noise").get<double>();
    r.config.w1 = j.at("config").at("w1").get<double>();
    r.config.w2 = j.at("config").at("w2").get<double>();
    r.config.max_flips = j.at("config").at("max_flips").get<std::uint64_t>();
    r.restarts = j.at("restarts").get<int>();
    r.tuned = j.at("tuned").get<bool>();
    r.ensemble_hash = j.at("ensemble_hash").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("per_instance")) {
        r.median_flips_per_instance.push_back(e.at("median_flips").get<double>());
        r.solved_per_instance.push_back(e.at("solved").get<int>());
    }
    r.median_flips = j.at("aggregates").at("median_flips").get<double>();
    r.gaveup_fraction = j.at("aggregates").at("gaveup_fraction").get<double>();
    r.gaveup_flagged = j.at("aggregates").at("gaveup_flagged").get<bool>();
    r.timestamp = j.value("timestamp", "");
    return r;
}

struct DepthFit {
    int depth = 0;
    double c_hat_bits = 0.0;
    double c_hat_nats = 0.0;
    double c_tilde_bits = 0.0;
    double c_tilde_nats = 0.0;
    double rel_err = 0.0;
    double residual_psucc = 0.0;
    double residual_mrt = 0.0;
};

struct FitReport {
    int k = 0;
    double r = 0.0;
    std::vector<int> ns;
    std::vector<DepthFit> per_depth;
    std::optional<PowerLawFit> power_law;  // C_hat (nats) vs depth
    double random_exponent_nats = 0.0;
    std::optional<int> crossover_vs_random;
    std::optional<double> sls_exponent_bits;  // fitted from SLS records across n
    std::optional<int> crossover_vs_sls;
};

// Groups QAOA eval records by depth and fits exponents across n. Slopes are
// fitted in bits; the comparison against 2^{1-k} r happens in natural units.
// All records must share k and descend from same-seed ensembles per n.
inline FitReport build_fit_report(const std::vector<QaoaEvalRecord>& records,
                                  const std::vector<SlsBenchRecord>& sls_records = {}) {
    if (records.empty()) throw std::invalid_argument("build_fit_report: no records");
    const int k = records.front().k;
    const double r = records.front().r;
    std::map<int, std::map<int, const QaoaEvalRecord*>> by_depth;  // depth -> n -> record
    for (const auto& rec : records) {
        if (rec.k != k) throw std::invalid_argument("build_fit_report: mixed k across records");
        auto& slot = by_depth[rec.depth][rec.n];
        if (slot) throw std::invalid_argument("build_fit_report: duplicate (depth, n) record");
        slot = &rec;
    }
    // Records for different depths at one n must come from the same ensemble.
    std::map<int, std::string> hash_by_n;
    for (const auto& [depth, by_n] : by_depth)
        for (const auto& [n, rec] : by_n) {
            auto it = hash_by_n.find(n);
            if (it == hash_by_n.end())
                hash_by_n.emplace(n, rec->ensemble_hash);
            else if (it->second != rec->ensemble_hash)
                throw std::invalid_argument("build_fit_report: mixed ensembles at n=" +
                                            std::to_string(n));
        }

    FitReport report;
    report.k = k;
    report.r = r;
    for (const auto& [n, hash] : hash_by_n) report.ns.push_back(n);
    report.random_exponent_nats = random_scaling_exponent(k, r);

    std::vector<std::pair<double, double>> power_points;
    std::vector<std::pair<int, double>> crossover_points_nats;
    for (const auto& [depth, by_n] : by_depth) {
        if (by_n.size() < 3)
            throw std::invalid_argument("build_fit_report: need >= 3 n points per depth, depth " +
                                        std::to_string(depth) + " has " +
                                        std::to_string(by_n.size()));
        std::vector<std::pair<double, double>> psucc_points, mrt_points;
        for (const auto& [n, rec] : by_n) {
            psucc_points.emplace_back(n, rec->mean_p_succ);
            mrt_points.emplace_back(n, rec->median_rt);
        }
        const ExponentFit pf = fit_exponential(psucc_points);
        const ExponentFit mf = fit_exponential(mrt_points);
        DepthFit df;
        df.depth = depth;
        df.c_hat_bits = -pf.c;
        df.c_hat_nats = -pf.c_nats();
        df.c_tilde_bits = mf.c;
        df.c_tilde_nats = mf.c_nats();
        df.rel_err = relative_error(df.c_hat_bits, df.c_tilde_bits);
        df.residual_psucc = pf.residual;
        df.residual_mrt = mf.residual;
        report.per_depth.push_back(df);
        if (df.c_hat_nats > 0) power_points.emplace_back(depth, df.c_hat_nats);
        crossover_points_nats.emplace_back(depth, df.c_tilde_nats);
    }
    if (power_points.size() >= 2) report.power_law = fit_power_law(power_points);
    report.crossover_vs_random =
        crossover_depth(crossover_points_nats, report.random_exponent_nats);

    if (!sls_records.empty()) {
        std::vector<std::pair<double, double>> sls_points;
        for (const auto& rec : sls_records) {
            if (rec.k != k) throw std::invalid_argument("build_fit_report: SLS record k mismatch");
            sls_points.emplace_back(rec.n, std::max(rec.median_flips, 1.0));
        }
        if (sls_points.size() < 3)
            throw std::invalid_argument("build_fit_report: need >= 3 SLS records across n");
        const ExponentFit sf = fit_exponential(sls_points);
        report.sls_exponent_bits = sf.c;
        std::vector<std::pair<int, double>> bits_points;
        for (const auto& df : report.per_depth) bits_points.emplace_back(df.depth, df.c_tilde_bits);
        report.crossover_vs_sls = crossover_depth(bits_points, sf.c);
    }
    return report;
}

inline nlohmann::ordered_json to_json(const FitReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "fit_report";
    j["code_version"] = kVersion;
    j["k"] = rep.k;
    j["r"] = rep.r;
    j["ns"] = rep.ns;
    auto per = nlohmann::ordered_json::array();
    for (const auto& df : rep.per_depth) {
        nlohmann::ordered_json e;
        e["depth"] = df.depth;
        e["C_hat_bits"] = df.c_hat_bits;
        e["C_hat_nats"] = df.c_hat_nats;
        e["C_tilde_bits"] = df.c_tilde_bits;
        e["C_tilde_nats"] = df.c_tilde_nats;
        e["rel_err"] = df.rel_err;
        e["residual_psucc"] = df.residual_psucc;
        e["residual_mrt"] = df.residual_mrt;
        per.push_back(std::move(e));
    }
    j["per_depth"] = std::move(per);
    if (rep.power_law)
        j["power_law"] = {{"a", rep.power_law->a},
                          {"b", rep.power_law->b},
                          {"residual", rep.power_law->residual}};
    else
        j["power_law"] = nullptr;
    j["random_exponent_nats"] = rep.random_exponent_nats;
    j["crossover_vs_random"] =
        rep.crossover_vs_random ? nlohmann::ordered_json(*rep.crossover_vs_random) : nullptr;
    j["sls_exponent_bits"] =
        rep.sls_exponent_bits ? nlohmann::ordered_json(*rep.sls_exponent_bits) : nullptr;
    j["crossover_vs_sls"] =
        rep.crossover_vs_sls ? nlohmann::ordered_json(*rep.crossover_vs_sls) : nullptr;
    return j;
}

// CSV rows (k, P, C_hat, C_tilde, rel_err, baseline); exponents and baseline
// in natural units.
inline std::string fit_csv(const FitReport& rep) {
    std::string out = "k,P,C_hat,C_tilde,rel_err,baseline\n";
    char buf[160];
    for (const auto& df : rep.per_depth) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.10g,%.10g,%.10g,%.10g\n", rep.k, df.depth,
                      df.c_hat_nats, df.c_tilde_nats, df.rel_err, rep.random_exponent_nats);
        out += buf;
    }
    return out;
}

}  // namespace naesat
