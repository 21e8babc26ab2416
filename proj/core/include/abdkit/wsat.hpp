#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abdkit/clause.hpp"
#include "abdkit/instance.hpp"

namespace abdkit {

/// Weighted CNF satisfiability instance: is there a satisfying assignment of
/// weight exactly (or at most) k?
struct WsatInstance {
    enum class Mode { exact, at_most };
    enum class Polarity { any, monotone, antimonotone };

    std::vector<std::string> variables;   // literal i+1 <-> variables[i]
    std::vector<Clause> clauses;
    int weight = 0;
    Mode mode = Mode::exact;
    std::optional<int> width;             // declared clause-width bound
    Polarity polarity = Polarity::any;
};

/// Canonical degenerate images: one empty clause, respectively no clauses.
WsatInstance wsat_trivially_false();
WsatInstance wsat_trivially_true();

bool wsat_is_trivially_false(const WsatInstance& w);

/// Width and polarity metadata versus actual clause content.
bool validate_wsat_metadata(const WsatInstance& w);

/// Enumerates assignments of the required weight in (size, lex) order and
/// returns the first satisfying one.
std::optional<Assignment> wsat_bruteforce(const WsatInstance& w);

/// Header `p wsat <nvars> <nclauses> <k> <eq|le>`, one 0-terminated clause of
/// signed integers per line, `c var <index> <name>` comments for the mapping.
std::string write_wsat(const WsatInstance& w);
WsatInstance parse_wsat(const std::string& text);

}  // namespace abdkit
