#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abdkit/clause.hpp"
#include "abdkit/instance.hpp"

namespace abdkit {

enum class FormKind { horn, dual_horn, krom, affine };

std::string to_string(FormKind k);

/// A knowledge base flattened to clauses (or GF(2) equations) of one of the
/// four tractable kinds, over an indexed variable list.
struct ClauseForm {
    FormKind kind = FormKind::horn;
    std::vector<std::string> vars;          // sorted; literal i+1 <-> vars[i]
    std::vector<Clause> clauses;            // horn / dual_horn / krom
    std::vector<AffineEq> equations;        // affine

    int var_index(const std::string& v) const;
    bool kind_ok() const;  // every clause fits the declared kind
};

/// Caches per-relation prime implicates and affine systems for a language,
/// so converting knowledge bases is linear after the first use.
class ClauseExpander {
  public:
    explicit ClauseExpander(const ConstraintLanguage& lang) : lang_(&lang) {}

    const std::vector<Clause>& implicates(const std::string& relation);
    const std::vector<AffineEq>& affine(const std::string& relation);

    /// Instantiates the cached implicates of every constraint over the given
    /// variable list. Tautologies drop; duplicate literals merge.
    std::vector<Clause> expand_clauses(const KnowledgeBase& kb,
                                       const std::vector<std::string>& vars);
    std::vector<AffineEq> expand_affine(const KnowledgeBase& kb,
                                        const std::vector<std::string>& vars);

  private:
    const ConstraintLanguage* lang_;
    std::map<std::string, std::vector<Clause>> pi_cache_;
    std::map<std::string, std::vector<AffineEq>> affine_cache_;
};

/// Expands the KB into clause (or equation) form of the requested kind.
/// Throws std::logic_error if some expanded clause does not fit the kind;
/// that indicates the language was misclassified.
ClauseForm to_clause_form(const ConstraintLanguage& lang, const KnowledgeBase& kb, FormKind kind,
                          const std::vector<std::string>& vars);

/// Polynomial satisfiability with canonical witnesses: horn propagates to the
/// minimal model (defaults 0), dual_horn dually (defaults 1), krom assigns by
/// the implication graph's component order, affine sets free variables to 0.
std::optional<Assignment> sat_poly(const ClauseForm& cf);

/// cf + units preserving the kind. Values: positive units for vars_true,
/// negative units for vars_false.
ClauseForm with_units(ClauseForm cf, const std::vector<std::string>& vars_true,
                      const std::vector<std::string>& vars_false);

/// True iff cf AND E entails every variable of M, decided by one
/// unsatisfiability check per manifestation. Vacuously true when cf AND E is
/// unsatisfiable.
bool implies_poly(const ClauseForm& cf, const std::vector<std::string>& assume_true,
                  const std::vector<std::string>& manifestations);

/// First kind (in the order horn, dual_horn, krom, affine) whose polymorphism
/// test accepts the language, if any.
std::optional<FormKind> pick_form_kind(const ConstraintLanguage& lang);

}  // namespace abdkit
