#pragma once

// DIMACS-style I/O. Header `p cnf n m` (SAT) or `p naecnf n m` (NAE);
// clause lines are nonzero signed 1-based variable indices terminated by 0;
// comment lines start with `c`. Variables are 0-based internally.

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "naesat/formula.hpp"

namespace naesat {

// Duplicate variables within a clause are legal in hand-written files; they
// are reported through `warnings`, not rejected.
inline CnfFormula parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in{std::string(text)};
    std::string line;
    CnfFormula f;
    long declared_m = -1;
    bool header_seen = false;
    std::vector<int> pending;  // signed DIMACS literals of the open clause

    auto flush_clause = [&](long long lit_value) {
        if (lit_value != 0) {
            pending.push_back(static_cast<int>(lit_value));
            return;
        }
        Clause c;
        for (int sl : pending) {
            int var = (sl > 0 ? sl : -sl) - 1;
            if (var >= f.n)
                throw std::invalid_argument("parse_dimacs: variable index out of range: " +
                                            std::to_string(sl));
            c.literals.push_back(Literal{var, sl < 0});
        }
        if (warnings) {
            for (std::size_t i = 0; i < c.literals.size(); ++i)
                for (std::size_t j = i + 1; j < c.literals.size(); ++j)
                    if (c.literals[i].variable == c.literals[j].variable) {
                        warnings->push_back("clause " + std::to_string(f.m()) +
                                            " repeats variable " +
                                            std::to_string(c.literals[i].variable + 1));
                        i = c.literals.size();
                        break;
                    }
        }
        pending.clear();
        f.clauses.push_back(std::move(c));
    };

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls{line};
        std::string tok;
        ls >> tok;
        if (tok.empty() || tok == "c") continue;
        if (tok == "p") {
            if (header_seen) throw std::invalid_argument("parse_dimacs: duplicate header");
            std::string fmt;
            long n = -1, m = -1;
            if (!(ls >> fmt >> n >> m) || n < 0 || m < 0)
                throw std::invalid_argument("parse_dimacs: malformed header: " + line);
            if (fmt == "cnf")
                f.mode = Mode::Sat;
            else if (fmt == "naecnf")
                f.mode = Mode::Nae;
            else
                throw std::invalid_argument("parse_dimacs: unknown format: " + fmt);
            f.n = static_cast<int>(n);
            declared_m = m;
            header_seen = true;
            continue;
        }
        if (!header_seen) throw std::invalid_argument("parse_dimacs: clause before header");
        ls.clear();
        ls.str(line);
        long long v;
        while (ls >> v) flush_clause(v);
        if (!ls.eof()) throw std::invalid_argument("parse_dimacs: bad token in line: " + line);
    }
    if (!header_seen) throw std::invalid_argument("parse_dimacs: missing header");
    if (!pending.empty()) throw std::invalid_argument("parse_dimacs: unterminated clause");
    if (declared_m != f.m())
        throw std::invalid_argument("parse_dimacs: header declares " + std::to_string(declared_m) +
                                    " clauses, found " + std::to_string(f.m()));
    return f;
}

inline std::string serialize_dimacs(const CnfFormula& f) {
    std::string out = "p ";
    out += (f.mode == Mode::Sat) ? "cnf " : "naecnf ";
    out += std::to_string(f.n) + " " + std::to_string(f.m()) + "\n";
    for (const Clause& c : f.clauses) {
        for (const Literal& l : c.literals) {
            out += std::to_string(l.negated ? -(l.variable + 1) : (l.variable + 1));
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

}  // namespace naesat
