#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abdkit/instance.hpp"
#include "abdkit/schaefer.hpp"

namespace abdkit {

/// Plain instances reduce to the at-most variant with the bound |H|: an
/// explanation exists iff one of size at most |H| does.
AbductionInstance abd_to_le(const AbductionInstance& inst);

/// Grows a valid explanation to exactly `target` elements by adding
/// hypotheses h (smallest first) whose negation does not appear in the KB as
/// a forced unit. Sound on one-valid dualHorn languages; returns nullopt when
/// fewer than `target` hypotheses pass the check.
std::optional<Explanation> extend_solution_monotone(const AbductionInstance& inst,
                                                    const Explanation& base, int target);

/// Essentially positive languages, sized variants. Equality clauses are
/// eliminated first, then unit propagation restricted to literals outside
/// H+ and M- decides the instance.
std::optional<Explanation> solve_ess_positive(const AbductionInstance& inst, Variant variant);

/// The forced core of an essentially negative instance: E_MP = M minus the
/// positive units (closed under equality merging).
struct EssNegativeCore {
    bool kb_satisfiable = false;
    bool consistent_with_m = false;
    bool core_in_hypotheses = false;
    std::vector<std::string> e_mp;
    std::vector<std::string> positive_units;
};

EssNegativeCore ess_negative_core(const AbductionInstance& inst);

/// Essentially negative languages, at-most variant: E_MP is the unique
/// minimal explanation candidate.
std::optional<Explanation> solve_ess_negative_le(const AbductionInstance& inst);

/// Definite Horn, plain variant: forward chaining from all of H, witness
/// minimised greedily.
std::optional<Explanation> solve_definite_horn_plain(const AbductionInstance& inst);

/// Brute force over subsets of H with polynomial satisfiability and
/// entailment checks. Applicable whenever the language fits one of the four
/// tractable clause kinds.
std::optional<Explanation> solve_by_H_enumeration(const AbductionInstance& inst, Variant variant);

/// Same verification loop, but only subsets up to (or exactly of) the size
/// bound are generated. Sized variants only.
std::optional<Explanation> solve_by_size_enumeration(const AbductionInstance& inst,
                                                     Variant variant);

struct ImplicationGraph {
    std::vector<std::string> vars;               // sorted
    std::vector<std::pair<int, int>> edges;      // indices into vars: a -> b

    int var_index(const std::string& v) const;
};

/// Per manifestation, the hypotheses whose selection alone forces it: the
/// hypotheses that reach m in the implication digraph.
struct ExplainerSets {
    std::map<std::string, std::vector<std::string>> per_manifestation;
};

ExplainerSets explainer_sets(const ImplicationGraph& graph, const std::vector<std::string>& hyps,
                             const std::vector<std::string>& manifestations);

/// Unit propagation followed by resolution-elimination of the variables
/// outside H and M; positive clauses and wide one-negative clauses are then
/// dropped, leaving an implication digraph.
struct DualHornPreprocess {
    bool unsat = false;
    std::map<std::string, bool> forced;
    ImplicationGraph graph;
};

DualHornPreprocess preprocess_dualhorn(const ClauseForm& cf, const std::vector<std::string>& hyps,
                                       const std::vector<std::string>& manifestations);

/// Minimum-cover analysis for dualHorn languages parameterised by |M|.
/// Explainer sets are computed semantically (h explains m iff KB & h |= m),
/// which agrees with graph reachability on pure implication KBs.
struct SetCoverAnalysis {
    bool feasible = false;              // KB satisfiable, M jointly consistent
    std::vector<std::string> discharged;  // manifestations entailed by KB alone
    std::vector<std::string> usable_hypotheses;
    std::map<std::string, std::vector<std::string>> explainers;  // per open manifestation
    int min_cover = 0;
    std::optional<Explanation> min_witness;  // nullopt when some m has no explainer
};

SetCoverAnalysis analyze_m_setcover(const AbductionInstance& inst);

/// DualHorn (in particular pure implication) languages, at-most variant:
/// exact subset-DP cover of the open manifestations.
std::optional<Explanation> solve_M_setcover(const AbductionInstance& inst, Variant variant);

/// 2-affine structure: variable classes joined by equalities, clusters of
/// classes forced to opposite values by disequalities.
struct ClusterDecomposition {
    std::vector<std::vector<std::string>> classes;
    std::vector<std::pair<int, int>> clusters;   // (side0, side1), side1 may be -1
    std::vector<int> manifest_classes;           // class ids meeting open manifestations
    std::map<std::string, bool> forced;
};

struct TwoAffineAnalysis {
    bool kb_satisfiable = false;
    bool manifestations_consistent = false;
    bool manifest_classes_covered = false;  // every manifest class meets H
    int e_min = 0;
    int e_max = 0;
    ClusterDecomposition decomposition;
    Explanation base;                    // one representative per manifest class
    std::vector<std::string> growth;     // canonical padding order up to e_max

    bool feasible() const {
        return kb_satisfiable && manifestations_consistent && manifest_classes_covered;
    }
};

TwoAffineAnalysis analyze_2affine(const AbductionInstance& inst);

/// 2-affine languages, all variants. Exact answers form the integer interval
/// [e_min, e_max] of achievable explanation sizes.
std::optional<Explanation> solve_2affine(const AbductionInstance& inst, Variant variant);

}  // namespace abdkit
