#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abdkit/relation.hpp"

namespace abdkit {

enum class Variant { plain, at_most, exact };
enum class Param { H, M, V, E };

std::string to_string(Variant v);
std::string to_string(Param p);
std::optional<Variant> variant_from_string(const std::string& s);
std::optional<Param> param_from_string(const std::string& s);

/// A relation applied to variables. Repeated arguments are allowed.
struct Constraint {
    std::string relation;
    std::vector<std::string> args;
};

struct KnowledgeBase {
    std::vector<Constraint> constraints;

    bool empty() const { return constraints.empty(); }
    std::size_t size() const { return constraints.size(); }
};

/// Total assignment over a declared variable set.
using Assignment = std::map<std::string, bool>;

int weight(const Assignment& a);

/// An explanation candidate: a sorted subset of the hypotheses.
using Explanation = std::vector<std::string>;

/// <V, H, M, KB, s?>. The variable set V is always the union of the KB's
/// variables with H and M; call finalize() after mutating to restore it.
/// H and M may overlap.
struct AbductionInstance {
    ConstraintLanguage language;
    KnowledgeBase kb;
    std::vector<std::string> hypotheses;      // sorted, unique
    std::vector<std::string> manifestations;  // sorted, unique
    std::optional<int> size;
    std::vector<std::string> variables;       // sorted, unique; derived

    /// Recomputes V and checks arity/relation references. Throws on
    /// violations (unknown relation, argument count mismatch).
    void finalize();

    int var_index(const std::string& v) const;  // -1 if absent
    bool is_hypothesis(const std::string& v) const;
    bool is_manifestation(const std::string& v) const;

    /// Required size for the sized variants; throws if missing.
    int required_size(Variant variant) const;
};

bool eval_constraint(const Constraint& c, const ConstraintLanguage& lang, const Assignment& a);

// Sorted-vector set helpers used across the library.
bool sorted_contains(const std::vector<std::string>& xs, const std::string& x);
std::vector<std::string> sorted_unique(std::vector<std::string> xs);
std::vector<std::string> set_minus(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b);
std::vector<std::string> set_union(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b);

}  // namespace abdkit
