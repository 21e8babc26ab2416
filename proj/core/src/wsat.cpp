#include "abdkit/wsat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "abdkit/oracle.hpp"

namespace abdkit {

WsatInstance wsat_trivially_false() {
    WsatInstance w;
    w.clauses.push_back({});
    w.weight = 0;
    return w;
}

WsatInstance wsat_trivially_true() {
    WsatInstance w;
    w.weight = 0;
    return w;
}

bool wsat_is_trivially_false(const WsatInstance& w) {
    for (const Clause& c : w.clauses)
        if (c.empty()) return true;
    return false;
}

bool validate_wsat_metadata(const WsatInstance& w) {
    for (const Clause& c : w.clauses) {
        if (w.width && static_cast<int>(c.size()) > *w.width) return false;
        for (int lit : c) {
            int var = lit_var(lit);
            if (var < 0 || var >= static_cast<int>(w.variables.size())) return false;
            if (w.polarity == WsatInstance::Polarity::monotone && !lit_positive(lit)) return false;
            if (w.polarity == WsatInstance::Polarity::antimonotone && lit_positive(lit))
                return false;
        }
    }
    return true;
}

std::optional<Assignment> wsat_bruteforce(const WsatInstance& w) {
    const int n = static_cast<int>(w.variables.size());
    if (n > 30) throw std::invalid_argument("too many variables for weight enumeration");

    auto satisfied = [&](const std::vector<bool>& value) {
        for (const Clause& c : w.clauses) {
            bool ok = false;
            for (int lit : c)
                if (value[lit_var(lit)] == lit_positive(lit)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    };

    int lo = w.mode == WsatInstance::Mode::exact ? w.weight : 0;
    int hi = w.weight;
    if (lo > n) return std::nullopt;
    hi = std::min(hi, n);

    std::optional<Assignment> found;
    for_each_subset_by_size(n, lo, hi, [&](const std::vector<int>& combo) {
        std::vector<bool> value(n, false);
        for (int i : combo) value[i] = true;
        if (!satisfied(value)) return false;
        Assignment a;
        for (int i = 0; i < n; ++i) a[w.variables[i]] = value[i];
        found = std::move(a);
        return true;
    });
    return found;
}

std::string write_wsat(const WsatInstance& w) {
    std::ostringstream out;
    out << "p wsat " << w.variables.size() << ' ' << w.clauses.size() << ' ' << w.weight << ' '
        << (w.mode == WsatInstance::Mode::exact ? "eq" : "le") << '\n';
    for (std::size_t i = 0; i < w.variables.size(); ++i)
        out << "c var " << (i + 1) << ' ' << w.variables[i] << '\n';
    for (const Clause& c : w.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

WsatInstance parse_wsat(const std::string& text) {
    WsatInstance w;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t nvars = 0, nclauses = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "c") {
            std::string kind;
            if (ls >> kind && kind == "var") {
                std::size_t idx;
                std::string name;
                if (ls >> idx >> name) {
                    if (w.variables.size() < idx) w.variables.resize(idx);
                    w.variables[idx - 1] = name;
                }
            }
            continue;
        }
        if (head == "p") {
            std::string fmt, mode;
            if (!(ls >> fmt >> nvars >> nclauses >> w.weight >> mode) || fmt != "wsat")
                throw std::runtime_error("bad wsat header");
            w.mode = mode == "eq" ? WsatInstance::Mode::exact : WsatInstance::Mode::at_most;
            have_header = true;
            continue;
        }
        Clause c;
        int lit = std::stoi(head);
        while (lit != 0) {
            c.push_back(lit);
            if (!(ls >> lit)) throw std::runtime_error("clause not 0-terminated");
        }
        w.clauses.push_back(std::move(c));
    }
    if (!have_header) throw std::runtime_error("missing wsat header");
    if (w.variables.size() < nvars) {
        std::size_t old = w.variables.size();
        w.variables.resize(nvars);
        for (std::size_t i = old; i < nvars; ++i)
            if (w.variables[i].empty()) w.variables[i] = "v" + std::to_string(i + 1);
    }
    for (std::size_t i = 0; i < w.variables.size(); ++i)
        if (w.variables[i].empty()) w.variables[i] = "v" + std::to_string(i + 1);
    if (w.clauses.size() != nclauses) throw std::runtime_error("clause count mismatch");
    return w;
}

}  // namespace abdkit
