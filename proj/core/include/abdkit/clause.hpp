#pragma once

#include <optional>
#include <vector>

#include "abdkit/relation.hpp"

namespace abdkit {

/// A clause over relation argument positions or variable indices.
/// Literal encoding: +(i+1) for position/variable i, -(i+1) for its negation.
using Clause = std::vector<int>;

inline int lit_var(int lit) { return (lit > 0 ? lit : -lit) - 1; }
inline bool lit_positive(int lit) { return lit > 0; }
inline int make_lit(int var, bool positive) { return positive ? var + 1 : -(var + 1); }

/// Sorts by variable, removes duplicate literals; returns nullopt for
/// tautologies (x and ~x together).
std::optional<Clause> normalize_clause(Clause c);

enum class ClauseShape {
    pos_unit,       // (x)
    neg_unit,       // (~x)
    implication,    // (~x v y)
    positive,       // width >= 2, all positive
    negative,       // width >= 2, all negative
    definite,       // one positive, >= 2 negative
    dual_definite,  // one negative, >= 2 positive
    general,        // >= 2 positive and >= 2 negative
    falsum,         // empty clause
};

ClauseShape clause_shape(const Clause& c);

/// All prime implicates of a relation, as clauses over argument positions.
/// A full relation has none; the empty relation yields the empty clause.
std::vector<Clause> prime_implicates(const Relation& r);

/// One GF(2) equation: xor of listed positions equals rhs.
struct AffineEq {
    std::vector<int> vars;  // sorted position/variable indices
    bool rhs = false;
};

/// Basis of linear equations satisfied by every tuple. The relation equals
/// the solution set of the system iff the relation is affine; nullopt if not.
std::optional<std::vector<AffineEq>> relation_affine_system(const Relation& r);

/// Clause-level summary of a relation against the clause families that
/// classify the bounded co-clones. Equality content (pairs of converse
/// implications among the prime implicates) is tracked separately because
/// every co-clone contains the equality relation.
struct RelationShape {
    bool trivial = false;           // no implicates beyond equalities
    bool unsatisfiable = false;     // empty relation
    bool only_neg_and_eq = false;   // negative clauses (+ equalities)
    bool essneg_shape = false;      // negative clauses + positive units (+ eq)
    bool esspos_shape = false;      // positive clauses + negative units (+ eq)
    bool only_pos_and_eq = false;
    bool is10_shape = false;        // negative clauses + implications + positive units
    bool is00_shape = false;        // positive clauses + implications + negative units
    bool implications_only = false; // implications (+ equalities)
    int max_neg_width = 0;          // widest all-negative implicate (0 if none)
    int max_pos_width = 0;
};

RelationShape relation_shape(const Relation& r);

}  // namespace abdkit
