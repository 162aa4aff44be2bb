#pragma once

// Ensemble persistence: a directory of DIMACS files plus manifest.json.
// The manifest carries the generation spec and a per-instance verification
// flag; its exact bytes hash (FNV-1a 64) into every downstream record, and it
// deliberately contains no timestamp so regeneration is byte-identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "naesat/dimacs.hpp"
#include "naesat/hash.hpp"
#include "naesat/instance_gen.hpp"

namespace naesat {

inline std::string instance_filename(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "instance_%04d.cnf", i);
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct StoredEnsemble {
    EnsembleSpec spec;
    std::vector<CnfFormula> formulas;
    std::string manifest_hash;
    std::filesystem::path dir;
};

// Writes DIMACS files and manifest.json; returns the manifest hash.
inline std::string write_ensemble(const std::filesystem::path& dir, const EnsembleSpec& spec,
                                  const std::vector<CnfFormula>& formulas) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["kind"] = "ensemble";
    manifest["k"] = spec.k;
    manifest["n"] = spec.n;
    manifest["r"] = spec.r;
    manifest["count"] = spec.count;
    manifest["seed"] = spec.seed;
    manifest["require_satisfiable"] = spec.require_satisfiable;
    auto instances = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        const std::string name = instance_filename(static_cast<int>(i));
        write_file(dir / name, serialize_dimacs(formulas[i]));
        nlohmann::ordered_json entry;
        entry["file"] = name;
        entry["m"] = formulas[i].m();
        entry["satisfiable"] = is_nae_satisfiable(formulas[i]);
        instances.push_back(std::move(entry));
    }
    manifest["instances"] = std::move(instances);
    const std::string bytes = manifest.dump(2) + "\n";
    write_file(dir / "manifest.json", bytes);
    return fnv1a64_hex(bytes);
}

inline StoredEnsemble load_ensemble(const std::filesystem::path& dir) {
    const std::string bytes = read_file(dir / "manifest.json");
    const auto manifest = nlohmann::json::parse(bytes);
    StoredEnsemble out;
    out.dir = dir;
    out.manifest_hash = fnv1a64_hex(bytes);
    out.spec.k = manifest.at("k").get<int>();
    out.spec.n = manifest.at("n").get<int>();
    out.spec.r = manifest.at("r").get<double>();
    out.spec.count = manifest.at("count").get<int>();
    out.spec.seed = manifest.at("seed").get<std::uint64_t>();
    out.spec.require_satisfiable = manifest.at("require_satisfiable").get<bool>();
    for (const auto& entry : manifest.at("instances")) {
        CnfFormula f = parse_dimacs(read_file(dir / entry.at("file").get<std::string>()));
        if (f.n != out.spec.n)
            throw std::runtime_error("load_ensemble: instance n disagrees with manifest");
        out.formulas.push_back(std::move(f));
    }
    if (static_cast<int>(out.formulas.size()) != out.spec.count)
        throw std::runtime_error("load_ensemble: instance count disagrees with manifest");
    return out;
}

}  // namespace naesat
