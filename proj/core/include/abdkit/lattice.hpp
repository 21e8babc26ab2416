#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abdkit/clause.hpp"
#include "abdkit/instance.hpp"

namespace abdkit {

/// A Boolean function given by its truth table. Input tuples index the table
/// bits: argument i contributes bit i of the index.
struct BoolFunction {
    std::string name;
    int arity = 0;
    std::uint32_t table = 0;

    bool eval(Tuple args) const { return (table >> args) & 1u; }
};

// The generator functions behind every closure test.
BoolFunction fn_const0();
BoolFunction fn_const1();
BoolFunction fn_not();
BoolFunction fn_and();
BoolFunction fn_or();
BoolFunction fn_maj();
BoolFunction fn_xor3();
BoolFunction fn_essneg();  // m1 & (m2 v ~m3)
BoolFunction fn_esspos();  // m1 v (m2 & ~m3)

/// True iff applying f coordinate-wise to any rows of R lands in R.
bool preserves(const BoolFunction& f, const Relation& r);

struct ClosureFlags {
    bool zero_valid = false;
    bool one_valid = false;
    bool complementive = false;
    bool horn = false;
    bool dual_horn = false;
    bool bijunctive = false;
    bool affine = false;
    bool ess_negative = false;
    bool ess_positive = false;
    std::optional<int> neg_width;  // widest all-negative prime implicate
    std::optional<int> pos_width;
};

/// Conjunction of the preservation tests over all relations, plus clause
/// widths read off the prime implicates.
ClosureFlags closure_flags(const ConstraintLanguage& lang);

enum class CoCloneName {
    BR, II0, II1, IN2, IN, IE2, IE1, IE, IV2, ID2, ID1, IL2, IM,
    IS10, IS12, IS02, IS1, IBF, other,
};

struct CoCloneLabel {
    CoCloneName name = CoCloneName::other;
    std::optional<int> width;  // for the IS families
    ClosureFlags flags;

    std::string to_string() const;
};

/// Everything the classifier and the solver dispatch need to know about a
/// language's position in the co-clone lattice, computed once.
struct LatticeProfile {
    ClosureFlags flags;
    CoCloneLabel label;
    // aggregate clause shapes over the whole language
    bool all_trivial = false;
    bool shapes_is1 = false;    // negative clauses (+ equality) only
    bool shapes_is12 = false;   // + positive units
    bool shapes_is02 = false;
    bool shapes_is0 = false;
    bool shapes_is10 = false;   // negative clauses + implications + positive units
    bool shapes_is00 = false;
    bool shapes_im = false;     // implications (+ equality) only

    // upper tests: is <S> inside the named co-clone
    bool in_ie2() const { return flags.horn; }
    bool in_iv2() const { return flags.dual_horn; }
    bool in_id2() const { return flags.bijunctive; }
    bool in_il2() const { return flags.affine; }
    bool in_id1() const { return flags.bijunctive && flags.affine; }
    bool in_ie1() const { return flags.horn && flags.one_valid; }
    bool in_is12() const { return flags.ess_negative; }
    bool in_is02() const { return flags.ess_positive; }
    bool in_is10() const { return shapes_is10; }
    bool schaefer() const {
        return flags.horn || flags.dual_horn || flags.bijunctive || flags.affine;
    }

    // lower tests: does <S> contain the named co-clone (derived from the
    // maximal co-clones that avoid its base relation)
    bool covers_in() const { return !schaefer(); }
    bool covers_in2() const { return !schaefer() && !flags.zero_valid && !flags.one_valid; }
    bool covers_ii0() const { return !schaefer() && !flags.one_valid && !flags.complementive; }
    bool covers_im() const {
        return !flags.affine && !flags.complementive && !flags.ess_negative &&
               !flags.ess_positive;
    }
    bool covers_ie() const {
        return !flags.dual_horn && !flags.bijunctive && !flags.affine && !flags.complementive &&
               !shapes_is10;
    }
    bool covers_nand2() const {
        return !flags.one_valid && !flags.dual_horn && !flags.affine && !flags.complementive &&
               !flags.ess_positive;
    }
    bool covers_nand3() const { return covers_nand2() && !flags.bijunctive; }
    bool covers_is2_11() const { return covers_nand2() && covers_im(); }
    bool covers_is3_11() const { return covers_nand3() && covers_im(); }
};

LatticeProfile lattice_profile(const ConstraintLanguage& lang);

CoCloneLabel identify_coclone(const ConstraintLanguage& lang);

/// An existentially quantified conjunctive definition: target(free_vars) is
/// the projection of body's models onto free_vars.
struct PPDefinition {
    Relation target;
    std::vector<std::string> free_vars;
    std::vector<std::string> aux_vars;
    KnowledgeBase body;
};

/// Enumerates the models of the body and projects; true iff the projection
/// equals the target's tuple set.
bool verify_pp_definition(const PPDefinition& def, const ConstraintLanguage& lang);

/// Bounded exhaustive search for a primitive positive definition of target
/// over lang. Bodies are subsets of instantiated atoms, tried with fewer aux
/// variables first, then fewer atoms, in a fixed order. Absence only means
/// "not found within the bounds".
std::optional<PPDefinition> pp_member(const Relation& target, const ConstraintLanguage& lang,
                                      bool allow_eq, int max_aux, int max_atoms = 4);

/// Equality-free definition of EQ over lang, by case analysis on the closure
/// flags, with bounded search filling in the imported sub-gadgets. Requires
/// lang neither essentially positive nor essentially negative.
PPDefinition construct_equality(const ConstraintLanguage& lang);

/// Replaces every constraint by its definition from the lookup table, with
/// aux variables fresh per constraint occurrence. H, M and the size bound
/// are unchanged.
AbductionInstance rewrite_language(const AbductionInstance& inst,
                                   const std::map<std::string, PPDefinition>& lookup,
                                   const ConstraintLanguage& target_language);

/// Removes binary-equality constraints from an essentially positive instance,
/// preserving answers for every variant: substitution when at most one side
/// is a hypothesis, negative-unit propagation or plain dropping when both are.
AbductionInstance eliminate_equality_ess_positive(const AbductionInstance& inst, Variant variant);

/// Merges equality classes of an essentially negative instance (valid for the
/// at-most variant: equalities never force both sides into an explanation).
AbductionInstance eliminate_equality_ess_negative(const AbductionInstance& inst);

/// Lookup-table cache format: the target as a `rel` line, body constraints as
/// `con` lines, free variables on a `free` line and aux on an `exists` line.
std::string serialize_definition(const PPDefinition& def);
PPDefinition parse_definition(const std::string& text, const ConstraintLanguage& lang);

}  // namespace abdkit
