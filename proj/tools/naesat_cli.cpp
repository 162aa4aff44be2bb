// naesat: generate ensembles, verify instances, run SLS and QAOA benchmarks,
// fit scaling exponents, and export figure data.
//
// Exit codes: 0 success, 2 validation error, 3 budget exceeded;
// `verify` follows solver convention (10 satisfiable, 20 unsatisfiable).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "naesat/naesat.hpp"

namespace fs = std::filesystem;
using namespace naesat;

namespace {

constexpr std::uint64_t kEvalStream = 3;
constexpr std::uint64_t kSlsStream = 4;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out = ".";
};

CnfFormula load_formula(const std::string& path) {
    std::vector<std::string> warnings;
    const CnfFormula f = parse_dimacs(read_file(path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return f;
}

SlsAlgorithm parse_algorithm(const std::string& name) {
    if (name == "walksat") return SlsAlgorithm::WalkSat;
    if (name == "walksatlm") return SlsAlgorithm::WalkSatLm;
    if (name == "walksatm2b2") return SlsAlgorithm::WalkSatM2b2;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string witness_bits(const Assignment& a) {
    std::string s(a.n, '0');
    for (int v = 0; v < a.n; ++v)
        if (a.get(v)) s[v] = '1';
    return s;
}

std::vector<CostTable> cost_tables(const StoredEnsemble& ensemble, int threads) {
    std::vector<CostTable> tables(ensemble.formulas.size());
    parallel_for(tables.size(), threads, [&](std::size_t i) {
        tables[i] = precompute_costs(ensemble.formulas[i]);
    });
    return tables;
}

int cmd_gen(const GlobalOpts& g, int k, int n, const std::string& r_arg, int count,
            bool allow_unsat, std::uint64_t max_attempts) {
    EnsembleSpec spec;
    spec.k = k;
    spec.n = n;
    spec.count = count;
    spec.seed = g.seed;
    spec.require_satisfiable = !allow_unsat;
    spec.r = (r_arg == "auto") ? nae_threshold(k) : std::stod(r_arg);
    validate(spec);
    const auto formulas = generate_satisfiable_ensemble(spec, g.threads, max_attempts);
    const std::string hash = write_ensemble(g.out, spec, formulas);
    std::cout << "ensemble " << g.out << " count=" << count << " r=" << spec.r
              << " manifest_hash=" << hash << "\n";
    return 0;
}

int cmd_verify(const std::string& path) {
    const CnfFormula f = load_formula(path);
    SolveResult res;
    if (f.mode == Mode::Nae)
        res = dpll_solve(nae_to_sat(f));
    else
        res = dpll_solve(f);
    if (res.status == Status::Sat) {
        std::cout << "SAT\nv ";
        for (int v = 0; v < f.n; ++v)
            std::cout << (res.witness->get(v) ? v + 1 : -(v + 1)) << " ";
        std::cout << "0\n";
        return 10;
    }
    std::cout << "UNSAT\n";
    return 20;
}

int cmd_sls(const GlobalOpts& g, const std::string& path, const std::string& algorithm,
            double noise, double w1, std::uint64_t max_flips,
            const std::string& out_file) {
    const CnfFormula f = load_formula(path);
    SlsConfig cfg;
    cfg.noise = noise;
    cfg.w1 = w1;
    cfg.w2 = 1.0 - w1;
    cfg.max_flips = max_flips;
    cfg.seed = Rng(g.seed).child(kSlsStream).seed();
    const SlsOutcome out = run_sls(f, cfg, parse_algorithm(algorithm));
    nlohmann::ordered_json j;
    j["status"] = out.status == SlsStatus::Solved ? "Solved" : "GaveUp";
    j["flips"] = out.flips_used;
    j["witness"] = out.witness ? nlohmann::ordered_json(witness_bits(*out.witness))
                               : nlohmann::ordered_json(nullptr);
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_file.empty()) write_file(out_file, text);
    return 0;
}

int cmd_train(const GlobalOpts& g, const std::string& ensemble_dir, int depth, int epochs,
              double lr, const std::string& out_file) {
    if (depth < 1) throw std::invalid_argument("train: depth must be >= 1");
    if (epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
    const StoredEnsemble ensemble = load_ensemble(ensemble_dir);
    const auto tables = cost_tables(ensemble, g.threads);
    TrainOptions opts;
    opts.depth = depth;
    opts.epochs = epochs;
    opts.learning_rate = lr;
    opts.threads = g.threads;
    const TrainResult result = train_params(tables, opts);
    TrainedParams p;
    p.k = ensemble.spec.k;
    p.trainset_n = ensemble.spec.n;
    p.depth = depth;
    p.beta = result.params.beta;
    p.gamma = result.params.gamma;
    p.trainset_hash = ensemble.manifest_hash;
    p.trace = result.trace;
    p.seed = g.seed;
    p.learning_rate = lr;
    p.epochs = epochs;
    write_file(out_file, to_json(p).dump(2) + "\n");
    std::cout << "trained depth=" << depth << " objective " << result.trace.front() << " -> "
              << result.trace.back() << " params=" << out_file << "\n";
    return 0;
}

int cmd_eval(const GlobalOpts& g, const std::string& ensemble_dir, const std::string& params_file,
             const std::string& out_file) {
    const StoredEnsemble ensemble = load_ensemble(ensemble_dir);
    const TrainedParams params = trained_params_from_json(nlohmann::json::parse(read_file(params_file)));
    QaoaEvalRecord rec = run_qaoa_eval(ensemble, params, Rng(g.seed).child(kEvalStream).seed(),
                                       g.threads);
    rec.timestamp = current_timestamp();
    write_file(out_file, to_json(rec).dump(2) + "\n");
    std::cout << "eval n=" << rec.n << " depth=" << rec.depth
              << " mean_p_succ=" << rec.mean_p_succ << " median_rt=" << rec.median_rt
              << " record=" << out_file << "\n";
    return 0;
}

int cmd_bench_sls(const GlobalOpts& g, const std::string& ensemble_dir,
                  const std::string& algorithm, const std::string& tune_dir,
                  std::optional<double> noise, std::optional<double> w1,
                  std::uint64_t max_flips, int restarts, const std::string& out_file) {
    const StoredEnsemble ensemble = load_ensemble(ensemble_dir);
    const SlsAlgorithm alg = parse_algorithm(algorithm);
    const std::uint64_t sls_seed = Rng(g.seed).child(kSlsStream).seed();
    SlsConfig cfg;
    cfg.max_flips = max_flips;
    bool tuned = false;
    if (!tune_dir.empty()) {
        const StoredEnsemble trainset = load_ensemble(tune_dir);
        GridSearchOptions opts;
        opts.max_flips = max_flips;
        opts.seed = sls_seed;
        opts.threads = g.threads;
        const GridSearchResult best = grid_search(trainset.formulas, alg, opts);
        cfg = best.config;
        tuned = true;
        std::cout << "tuned noise=" << cfg.noise << " w1=" << cfg.w1
                  << " median_flips=" << best.median_flips << "\n";
    } else {
        if (!noise || (alg != SlsAlgorithm::WalkSat && !w1))
            throw std::invalid_argument("bench-sls: pass --tune or an explicit config");
        cfg.noise = *noise;
        cfg.w1 = w1.value_or(0.0);
        cfg.w2 = alg == SlsAlgorithm::WalkSat ? 0.0 : 1.0 - cfg.w1;
    }
    SlsBenchRecord rec =
        run_sls_bench(ensemble, alg, cfg, restarts, sls_seed, g.threads, tuned);
    rec.timestamp = current_timestamp();
    write_file(out_file, to_json(rec).dump(2) + "\n");
    std::cout << "bench " << algorithm << " n=" << rec.n << " median_flips=" << rec.median_flips
              << " gaveup_fraction=" << rec.gaveup_fraction << " record=" << out_file << "\n";
    if (rec.gaveup_flagged) std::cerr << "warning: gaveup fraction " << rec.gaveup_fraction << "\n";
    return 0;
}

int cmd_fit(const GlobalOpts& g, const std::vector<std::string>& record_files,
            const std::vector<std::string>& sls_record_files) {
    std::vector<QaoaEvalRecord> records;
    for (const auto& path : record_files)
        records.push_back(qaoa_eval_from_json(nlohmann::json::parse(read_file(path))));
    std::vector<SlsBenchRecord> sls_records;
    for (const auto& path : sls_record_files)
        sls_records.push_back(sls_bench_from_json(nlohmann::json::parse(read_file(path))));
    const FitReport report = build_fit_report(records, sls_records);
    fs::create_directories(g.out);
    write_file(fs::path(g.out) / "fit_report.json", to_json(report).dump(2) + "\n");
    write_file(fs::path(g.out) / "fit.csv", fit_csv(report));
    for (const auto& df : report.per_depth)
        std::cout << "P=" << df.depth << " C_hat=" << df.c_hat_nats
                  << " C_tilde=" << df.c_tilde_nats << " rel_err=" << df.rel_err << "\n";
    std::cout << "baseline(random)=" << report.random_exponent_nats << " crossover_vs_random="
              << (report.crossover_vs_random ? std::to_string(*report.crossover_vs_random)
                                             : std::string("none"))
              << "\n";
    return 0;
}

int cmd_report(const GlobalOpts& g, const std::vector<std::string>& record_files) {
    if (record_files.empty()) throw std::invalid_argument("report: no records given");
    std::vector<QaoaEvalRecord> evals;
    std::vector<SlsBenchRecord> sls;
    for (const auto& path : record_files) {
        const auto j = nlohmann::json::parse(read_file(path));
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "qaoa_eval")
            evals.push_back(qaoa_eval_from_json(j));
        else if (kind == "sls_bench")
            sls.push_back(sls_bench_from_json(j));
        else
            throw std::invalid_argument("report: unknown record kind: " + kind);
    }
    fs::create_directories(g.out);
    char buf[256];
    std::string summary = "series  n  value\n";
    if (!evals.empty()) {
        std::string psucc = "series,n,mean_p_succ\n";
        std::string mrt = "series,n,median_running_time\n";
        for (const auto& r : evals) {
            std::snprintf(buf, sizeof(buf), "P=%d,%d,%.12g\n", r.depth, r.n, r.mean_p_succ);
            psucc += buf;
            std::snprintf(buf, sizeof(buf), "P=%d,%d,%.12g\n", r.depth, r.n, r.median_rt);
            mrt += buf;
            std::snprintf(buf, sizeof(buf), "P=%d_recip,%d,%.12g\n", r.depth, r.n,
                          1.0 / r.mean_p_succ);
            mrt += buf;
            std::snprintf(buf, sizeof(buf), "P=%d  %d  p_succ=%.6g mrt=%.6g\n", r.depth, r.n,
                          r.mean_p_succ, r.median_rt);
            summary += buf;
        }
        write_file(fs::path(g.out) / "psucc.csv", psucc);
        write_file(fs::path(g.out) / "mrt.csv", mrt);
    }
    if (!sls.empty()) {
        std::string flips = "series,n,median_flips\n";
        for (const auto& r : sls) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%.12g\n", to_string(r.algorithm), r.n,
                          r.median_flips);
            flips += buf;
            std::snprintf(buf, sizeof(buf), "%s  %d  median_flips=%.6g\n", to_string(r.algorithm),
                          r.n, r.median_flips);
            summary += buf;
        }
        write_file(fs::path(g.out) / "sls.csv", flips);
    }
    write_file(fs::path(g.out) / "summary.txt", summary);
    std::cout << "report written to " << g.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-angle QAOA and WalkSAT-family benchmarks for random k-NAE-SAT"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config with [subcommand] sections");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "top-level RNG seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--out", g.out, "output directory or file")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a satisfiable ensemble");
    int gen_k = 3, gen_n = 8, gen_count = 100;
    std::string gen_r = "auto";
    bool gen_allow_unsat = false;
    std::uint64_t gen_max_attempts = 10000;
    gen->add_option("--k", gen_k, "clause width")->required();
    gen->add_option("--n", gen_n, "variable count")->required();
    gen->add_option("--r", gen_r, "clause density or 'auto' (threshold)")->capture_default_str();
    gen->add_option("--count", gen_count, "instances")->capture_default_str();
    gen->add_flag("--allow-unsat", gen_allow_unsat, "skip satisfiability filtering");
    gen->add_option("--max-attempts", gen_max_attempts, "rejection budget per instance")
        ->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "decide satisfiability of a DIMACS file");
    std::string verify_file;
    verify->add_option("file", verify_file, "DIMACS path")->required();

    // sls
    auto* sls = app.add_subcommand("sls", "run one SLS solve");
    std::string sls_file, sls_alg = "walksat", sls_out;
    double sls_noise = 0.5, sls_w1 = 0.2;
    std::uint64_t sls_max_flips = 100000;
    sls->add_option("file", sls_file, "DIMACS path")->required();
    sls->add_option("--algorithm", sls_alg, "walksat|walksatlm|walksatm2b2")
        ->capture_default_str();
    sls->add_option("--noise", sls_noise, "noise probability")->capture_default_str();
    sls->add_option("--w1", sls_w1, "tiebreak weight (w2 = 1 - w1)")->capture_default_str();
    sls->add_option("--max-flips", sls_max_flips, "flip budget")->capture_default_str();
    sls->add_option("--result", sls_out, "also write the JSON here");

    // train
    auto* train = app.add_subcommand("train", "train QAOA angles on an ensemble");
    std::string train_ensemble, train_out = "params.json";
    int train_depth = 1, train_epochs = 100;
    double train_lr = 0.01;
    train->add_option("--ensemble", train_ensemble, "ensemble directory")->required();
    train->add_option("--depth", train_depth, "circuit depth P")->required();
    train->add_option("--epochs", train_epochs, "ADAM epochs")->capture_default_str();
    train->add_option("--lr", train_lr, "learning rate")->capture_default_str();
    train->add_option("--params", train_out, "output params file")->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate trained params over an ensemble");
    std::string eval_ensemble, eval_params, eval_out = "eval.json";
    eval->add_option("--ensemble", eval_ensemble, "ensemble directory")->required();
    eval->add_option("--params", eval_params, "params file")->required();
    eval->add_option("--record", eval_out, "output record file")->capture_default_str();

    // bench-sls
    auto* bench = app.add_subcommand("bench-sls", "benchmark an SLS solver over an ensemble");
    std::string bench_ensemble, bench_alg = "walksat", bench_tune, bench_out = "sls_record.json";
    std::optional<double> bench_noise, bench_w1;
    std::uint64_t bench_max_flips = 100000;
    int bench_restarts = 9;
    bench->add_option("--ensemble", bench_ensemble, "ensemble directory")->required();
    bench->add_option("--algorithm", bench_alg, "walksat|walksatlm|walksatm2b2")
        ->capture_default_str();
    bench->add_option("--tune", bench_tune, "trainset directory for grid search");
    bench->add_option("--noise", bench_noise, "fixed noise (with --w1 instead of --tune)");
    bench->add_option("--w1", bench_w1, "fixed tiebreak weight");
    bench->add_option("--max-flips", bench_max_flips, "flip budget")->capture_default_str();
    bench->add_option("--restarts", bench_restarts, "independent restarts per instance")
        ->capture_default_str();
    bench->add_option("--record", bench_out, "output record file")->capture_default_str();

    // fit
    auto* fit = app.add_subcommand("fit", "fit scaling exponents from eval records");
    std::vector<std::string> fit_records, fit_sls_records;
    fit->add_option("--record", fit_records, "QAOA eval records (>= 3 n per depth)")
        ->required()
        ->expected(-1);
    fit->add_option("--sls-record", fit_sls_records, "SLS records across n for the baseline")
        ->expected(-1);

    // report
    auto* report = app.add_subcommand("report", "export figure CSVs from records");
    std::vector<std::string> report_records;
    report->add_option("--record", report_records, "record files")->required()->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_gen(g, gen_k, gen_n, gen_r, gen_count, gen_allow_unsat, gen_max_attempts);
        if (verify->parsed()) return cmd_verify(verify_file);
        if (sls->parsed())
            return cmd_sls(g, sls_file, sls_alg, sls_noise, sls_w1, sls_max_flips, sls_out);
        if (train->parsed())
            return cmd_train(g, train_ensemble, train_depth, train_epochs, train_lr, train_out);
        if (eval->parsed()) return cmd_eval(g, eval_ensemble, eval_params, eval_out);
        if (bench->parsed())
            return cmd_bench_sls(g, bench_ensemble, bench_alg, bench_tune, bench_noise, bench_w1,
                                 bench_max_flips, bench_restarts, bench_out);
        if (fit->parsed()) return cmd_fit(g, fit_records, fit_sls_records);
        if (report->parsed()) return cmd_report(g, report_records);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
