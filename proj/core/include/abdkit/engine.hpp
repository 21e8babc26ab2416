#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abdkit/classify.hpp"
#include "abdkit/instance.hpp"

namespace abdkit {

struct SolveResult {
    bool yes = false;
    std::optional<Explanation> witness;
    std::string engine;
    Verdict verdict;
};

/// Engine names accepted by solve(): "auto", "oracle", "solve_2affine",
/// "solve_ess_positive", "solve_ess_negative_le", "solve_definite_horn_plain",
/// "solve_by_H_enumeration", "solve_by_size_enumeration", "solve_M_setcover",
/// "reduce_wsat".
std::vector<std::string> known_engines();

/// Engines whose preconditions hold for this instance and variant.
std::vector<std::string> applicable_engines(const AbductionInstance& inst, Variant variant);

/// Dispatch: specialized polynomial solver for the region, then
/// parameter-aware enumeration, then reduction plus weighted-SAT search, then
/// the exhaustive oracle. A named engine is run after checking its
/// precondition. The verdict reported is for the given parameterisation.
SolveResult solve(const AbductionInstance& inst, Variant variant,
                  const std::string& engine = "auto", Param param = Param::H);

struct VerifyEntry {
    std::string engine;
    bool yes = false;
    bool witness_valid = true;  // witness re-checked against the oracle
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;

    void add(VerifyEntry e) { entries.push_back(std::move(e)); }
    bool agree() const;
    std::string summary() const;
};

/// Runs every applicable engine plus the oracle and reports the agreement
/// matrix.
VerifyReport verify(const AbductionInstance& inst, Variant variant);

}  // namespace abdkit
