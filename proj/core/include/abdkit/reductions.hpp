#pragma once

#include <string>
#include <vector>

#include "abdkit/instance.hpp"
#include "abdkit/wsat.hpp"

namespace abdkit {

struct Graph {
    std::vector<std::string> vertices;             // sorted
    std::vector<std::pair<int, int>> edges;        // index pairs, first < second

    bool has_edge(int a, int b) const;
};

/// Edge-list syntax: comma or whitespace separated tokens, `a-b` for an edge,
/// a bare identifier for an isolated vertex. Self-loops are rejected.
Graph parse_graph(const std::string& text);

/// Exact-variant abduction -> weighted SAT over pure implication knowledge
/// bases: one clause per manifestation listing its explaining hypotheses,
/// target weight s.
WsatInstance reduce_im_eq_to_wsat(const AbductionInstance& inst);

/// Extension handling negative clauses of bounded width: every variable of a
/// negative clause is expanded over the hypotheses that can force it, one
/// clause copy per combination. Clauses with an unforceable variable drop.
WsatInstance reduce_is10_eq_to_wsat(const AbductionInstance& inst);

/// DualHorn route: discharge manifestations entailed by the KB alone, then
/// cover the remaining ones by semantically computed explainer sets.
WsatInstance reduce_iv2_eq_to_wsat(const AbductionInstance& inst);

/// Essentially negative route: target weight s - |E_MP| over the hypotheses
/// outside the forced core, consistency encoded by expanded negative clauses.
WsatInstance reduce_essneg_eq_to_wsat(const AbductionInstance& inst);

/// E_MP of the essentially negative reduction (manifestations not forced by
/// positive units, equality classes closed), exposed for weight accounting.
std::vector<std::string> essneg_forced_core(const AbductionInstance& inst);

/// G has an independent set of size k iff the image has an exact explanation
/// of size k+1: NAND constraints per edge, a fresh goal manifestation.
AbductionInstance gen_indset_eq(const Graph& g, int k);

/// G has a vertex cover of size <= k iff the image has an at-most
/// explanation of size <= k: edge implications chained into one goal
/// manifestation over a definite Horn knowledge base.
AbductionInstance gen_vertexcover_le(const Graph& g, int k);

}  // namespace abdkit
