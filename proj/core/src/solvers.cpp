#include "abdkit/solvers.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <set>
#include <stdexcept>

#include "abdkit/lattice.hpp"
#include "abdkit/oracle.hpp"

namespace abdkit {

namespace {

// Does some constraint alone force this variable to 0 (the relational
// reading of "~h appears in KB")?
bool kb_unit_forces_false(const AbductionInstance& inst, const std::string& var) {
    for (const Constraint& c : inst.kb.constraints) {
        const Relation& r = inst.language.at(c.relation);
        bool involves = false;
        bool always_false = true;
        for (Tuple t : r.tuples) {
            for (int i = 0; i < r.arity; ++i) {
                if (c.args[i] != var) continue;
                involves = true;
                if (tuple_bit(t, i)) always_false = false;
            }
        }
        if (involves && always_false && !r.tuples.empty()) return true;
    }
    return false;
}

struct ClauseSet {
    std::vector<std::string> vars;  // sorted
    std::set<Clause> clauses;
    std::map<int, bool> forced;
    bool unsat = false;

    int index(const std::string& v) const {
        auto it = std::lower_bound(vars.begin(), vars.end(), v);
        return (it != vars.end() && *it == v) ? static_cast<int>(it - vars.begin()) : -1;
    }
    const std::string& name(int idx) const { return vars[idx]; }

    void assign(int var, bool value);
    void substitute(int from, int to);
};

ClauseSet make_clause_set(const AbductionInstance& inst) {
    ClauseSet cs;
    cs.vars = inst.variables;
    ClauseExpander expander(inst.language);
    for (Clause& c : expander.expand_clauses(inst.kb, cs.vars)) cs.clauses.insert(std::move(c));
    return cs;
}

void ClauseSet::assign(int var, bool value) {
    auto it = forced.find(var);
    if (it != forced.end()) {
        if (it->second != value) unsat = true;
        return;
    }
    forced[var] = value;
    std::set<Clause> next;
    const int sat_lit = make_lit(var, value);
    const int false_lit = make_lit(var, !value);
    for (Clause c : clauses) {
        if (std::find(c.begin(), c.end(), sat_lit) != c.end()) continue;
        c.erase(std::remove(c.begin(), c.end(), false_lit), c.end());
        if (c.empty()) {
            unsat = true;
            return;
        }
        next.insert(std::move(c));
    }
    clauses = std::move(next);
}

void ClauseSet::substitute(int from, int to) {
    std::set<Clause> next;
    for (Clause c : clauses) {
        for (int& lit : c)
            if (lit_var(lit) == from) lit = make_lit(to, lit_positive(lit));
        if (auto norm = normalize_clause(std::move(c))) next.insert(std::move(*norm));
    }
    clauses = std::move(next);
}

std::vector<int> sorted_unique_ints(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// First equality pair among the clauses: converse implications on (a, b).
std::optional<std::pair<int, int>> find_equality_pair(const ClauseSet& cs) {
    for (const Clause& c : cs.clauses) {
        if (c.size() != 2 || clause_shape(c) != ClauseShape::implication) continue;
        Clause rev{-c[0], -c[1]};
        auto norm = normalize_clause(std::move(rev));
        if (norm && cs.clauses.count(*norm)) {
            int a = lit_var(c[0]), b = lit_var(c[1]);
            return std::make_pair(std::min(a, b), std::max(a, b));
        }
    }
    return std::nullopt;
}

void erase_pair_clauses(ClauseSet& cs, int a, int b) {
    for (auto it = cs.clauses.begin(); it != cs.clauses.end();) {
        const Clause& c = *it;
        bool on_pair = c.size() == 2 && ((lit_var(c[0]) == a && lit_var(c[1]) == b) ||
                                         (lit_var(c[0]) == b && lit_var(c[1]) == a));
        bool is_imp = on_pair && clause_shape(c) == ClauseShape::implication;
        it = is_imp ? cs.clauses.erase(it) : std::next(it);
    }
}

}  // namespace

AbductionInstance abd_to_le(const AbductionInstance& inst) {
    AbductionInstance out = inst;
    out.size = static_cast<int>(out.hypotheses.size());
    return out;
}

std::optional<Explanation> extend_solution_monotone(const AbductionInstance& inst,
                                                    const Explanation& base, int target) {
    if (target < static_cast<int>(base.size()) ||
        target > static_cast<int>(inst.hypotheses.size()))
        throw std::invalid_argument("extension target out of range");
    Explanation e = base;
    std::sort(e.begin(), e.end());
    for (const std::string& h : inst.hypotheses) {
        if (static_cast<int>(e.size()) == target) break;
        if (sorted_contains(e, h)) continue;
        if (kb_unit_forces_false(inst, h)) continue;
        e.insert(std::lower_bound(e.begin(), e.end(), h), h);
    }
    if (static_cast<int>(e.size()) != target) return std::nullopt;
    return e;
}

std::optional<Explanation> solve_ess_positive(const AbductionInstance& inst, Variant variant) {
    if (variant == Variant::plain)
        throw std::invalid_argument("solve_ess_positive handles the sized variants only");
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_is02())
        throw std::invalid_argument("solve_ess_positive requires an essentially positive language");
    const int s = inst.required_size(variant);

    // The clause view is positive clauses, units and equality pairs. Work
    // over equality classes: a class is true once any member is, so unit
    // propagation and manifestation coverage act on classes. This realises
    // the restricted unit propagation with the hypothesis and manifestation
    // bookkeeping kept explicit.
    ClauseSet cs = make_clause_set(inst);
    const int n = static_cast<int>(cs.vars.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<Clause> positives;  // width >= 1, all positive
    std::vector<int> negative_units;
    for (const Clause& c : cs.clauses) {
        switch (clause_shape(c)) {
            case ClauseShape::implication: {
                Clause rev{-c[0], -c[1]};
                auto norm = normalize_clause(std::move(rev));
                if (!norm || !cs.clauses.count(*norm))
                    throw std::invalid_argument("lone implication in an essentially positive KB");
                int a = find(lit_var(c[0])), b = find(lit_var(c[1]));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
                break;
            }
            case ClauseShape::pos_unit:
            case ClauseShape::positive:
                positives.push_back(c);
                break;
            case ClauseShape::neg_unit:
                negative_units.push_back(lit_var(c[0]));
                break;
            default:
                throw std::invalid_argument("clause outside the essentially positive region");
        }
    }

    enum { free_cls = 0, true_cls = 1, false_cls = 2 };
    std::map<int, int> value;  // class root -> state
    for (int var : negative_units) {
        int cls = find(var);
        if (value.count(cls) && value[cls] == true_cls) return std::nullopt;
        value[cls] = false_cls;
    }

    // propagate positive clauses over classes to a fixpoint
    std::vector<std::vector<int>> work;
    for (const Clause& c : positives) {
        std::vector<int> classes;
        for (int lit : c) classes.push_back(find(lit_var(lit)));
        work.push_back(sorted_unique_ints(classes));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = work.begin(); it != work.end();) {
            std::vector<int>& classes = *it;
            bool satisfied = false;
            classes.erase(std::remove_if(classes.begin(), classes.end(),
                                         [&](int cls) {
                                             auto v = value.find(cls);
                                             if (v == value.end()) return false;
                                             if (v->second == true_cls) satisfied = true;
                                             return v->second == false_cls;
                                         }),
                          classes.end());
            if (satisfied) {
                it = work.erase(it);
                continue;
            }
            if (classes.empty()) return std::nullopt;  // positive clause falsified
            if (classes.size() == 1) {
                value[classes.front()] = true_cls;
                it = work.erase(it);
                changed = true;
                continue;
            }
            ++it;
        }
    }

    auto class_state = [&](int var) {
        auto it = value.find(find(var));
        return it == value.end() ? int{free_cls} : it->second;
    };

    std::vector<std::string> usable;
    for (const std::string& h : inst.hypotheses)
        if (class_state(cs.index(h)) != false_cls) usable.push_back(h);

    std::set<int> needed;
    for (const std::string& m : inst.manifestations) {
        int state = class_state(cs.index(m));
        if (state == false_cls) return std::nullopt;
        if (state == free_cls) needed.insert(find(cs.index(m)));
    }

    Explanation reps;
    for (int cls : needed) {
        std::string rep;
        for (const std::string& h : usable)
            if (find(cs.index(h)) == cls) {
                rep = h;
                break;
            }
        if (rep.empty()) return std::nullopt;  // manifestation class misses H
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end());

    if (static_cast<int>(reps.size()) > s) return std::nullopt;
    if (variant == Variant::at_most) return reps;
    if (s > static_cast<int>(usable.size())) return std::nullopt;
    Explanation e = reps;
    for (const std::string& h : usable) {
        if (static_cast<int>(e.size()) == s) break;
        if (!sorted_contains(e, h)) e.insert(std::lower_bound(e.begin(), e.end(), h), h);
    }
    return e;
}

EssNegativeCore ess_negative_core(const AbductionInstance& inst) {
    EssNegativeCore core;
    ClauseSet cs = make_clause_set(inst);
    std::vector<std::string> hyp = inst.hypotheses;
    std::vector<std::string> man = inst.manifestations;

    // Equality classes merge; hypothesis members survive preferentially so
    // the forced core stays inside H whenever it can.
    while (auto pair = find_equality_pair(cs)) {
        auto [ia, ib] = *pair;
        erase_pair_clauses(cs, ia, ib);
        int keep = ia, drop = ib;
        if (!sorted_contains(hyp, cs.name(ia)) && sorted_contains(hyp, cs.name(ib)))
            std::swap(keep, drop);
        cs.substitute(drop, keep);
        const std::string kept = cs.name(keep), gone = cs.name(drop);
        if (sorted_contains(hyp, gone)) hyp = sorted_unique(set_union(set_minus(hyp, {gone}), {kept}));
        if (sorted_contains(man, gone)) man = sorted_unique(set_union(set_minus(man, {gone}), {kept}));
    }

    for (const Clause& c : cs.clauses)
        if (c.size() == 1 && lit_positive(c[0])) core.positive_units.push_back(cs.name(lit_var(c[0])));
    core.positive_units = sorted_unique(std::move(core.positive_units));

    ClauseForm cf;
    cf.kind = FormKind::horn;
    cf.vars = cs.vars;
    cf.clauses.assign(cs.clauses.begin(), cs.clauses.end());
    core.kb_satisfiable = !cs.unsat && sat_poly(cf).has_value();
    core.consistent_with_m = !cs.unsat && sat_poly(with_units(cf, man, {})).has_value();
    core.e_mp = set_minus(man, core.positive_units);
    core.core_in_hypotheses = true;
    for (const std::string& m : core.e_mp)
        if (!sorted_contains(hyp, m)) core.core_in_hypotheses = false;
    return core;
}

std::optional<Explanation> solve_ess_negative_le(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_is12())
        throw std::invalid_argument(
            "solve_ess_negative_le requires an essentially negative language");
    const int s = inst.required_size(Variant::at_most);
    EssNegativeCore core = ess_negative_core(inst);
    if (!core.consistent_with_m || !core.core_in_hypotheses) return std::nullopt;
    if (static_cast<int>(core.e_mp.size()) > s) return std::nullopt;
    return core.e_mp;
}

std::optional<Explanation> solve_definite_horn_plain(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_ie1())
        throw std::invalid_argument("solve_definite_horn_plain requires definite Horn");
    ClauseForm cf = to_clause_form(inst.language, inst.kb, FormKind::horn, inst.variables);

    auto derives_all = [&](const Explanation& e) {
        auto model = sat_poly(with_units(cf, e, {}));
        if (!model) return false;  // cannot happen for definite Horn
        for (const std::string& m : inst.manifestations)
            if (!model->at(m)) return false;
        return true;
    };

    Explanation e = inst.hypotheses;
    if (!derives_all(e)) return std::nullopt;
    for (const std::string& h : inst.hypotheses) {
        Explanation without = set_minus(e, {h});
        if (derives_all(without)) e = std::move(without);
    }
    return e;
}

namespace {

std::optional<Explanation> enumerate_with_poly(const AbductionInstance& inst, Variant variant,
                                               bool sized_only) {
    auto kind = pick_form_kind(inst.language);
    if (!kind)
        throw std::invalid_argument("language lies outside the tractable clause kinds");
    if (sized_only && variant == Variant::plain)
        throw std::invalid_argument("size enumeration needs a sized variant");
    ClauseForm cf = to_clause_form(inst.language, inst.kb, *kind, inst.variables);

    const int h = static_cast<int>(inst.hypotheses.size());
    int lo = 0, hi = h;
    if (variant != Variant::plain) {
        int s = inst.required_size(variant);
        if (variant == Variant::exact) {
            if (s > h) return std::nullopt;
            lo = hi = s;
        } else {
            hi = std::min(s, h);
        }
    }

    std::optional<Explanation> found;
    for_each_subset_by_size(h, lo, hi, [&](const std::vector<int>& combo) {
        Explanation e;
        for (int i : combo) e.push_back(inst.hypotheses[i]);
        if (!sat_poly(with_units(cf, e, {}))) return false;
        if (!implies_poly(cf, e, inst.manifestations)) return false;
        found = std::move(e);
        return true;
    });
    return found;
}

}  // namespace

std::optional<Explanation> solve_by_H_enumeration(const AbductionInstance& inst, Variant variant) {
    return enumerate_with_poly(inst, variant, false);
}

std::optional<Explanation> solve_by_size_enumeration(const AbductionInstance& inst,
                                                     Variant variant) {
    return enumerate_with_poly(inst, variant, true);
}

int ImplicationGraph::var_index(const std::string& v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    return (it != vars.end() && *it == v) ? static_cast<int>(it - vars.begin()) : -1;
}

ExplainerSets explainer_sets(const ImplicationGraph& graph, const std::vector<std::string>& hyps,
                             const std::vector<std::string>& manifestations) {
    std::vector<std::vector<int>> adj(graph.vars.size());
    for (auto [a, b] : graph.edges) adj[a].push_back(b);

    ExplainerSets out;
    for (const std::string& m : manifestations) out.per_manifestation[m];
    for (const std::string& h : hyps) {
        std::vector<std::string> reached{h};
        int start = graph.var_index(h);
        if (start >= 0) {
            std::vector<bool> seen(graph.vars.size(), false);
            std::vector<int> queue{start};
            seen[start] = true;
            while (!queue.empty()) {
                int u = queue.back();
                queue.pop_back();
                reached.push_back(graph.vars[u]);
                for (int v : adj[u])
                    if (!seen[v]) {
                        seen[v] = true;
                        queue.push_back(v);
                    }
            }
        }
        std::vector<std::string> reach_sorted = sorted_unique(std::move(reached));
        for (const std::string& m : manifestations)
            if (sorted_contains(reach_sorted, m)) out.per_manifestation[m].push_back(h);
    }
    for (auto& [m, hs] : out.per_manifestation) hs = sorted_unique(std::move(hs));
    return out;
}

DualHornPreprocess preprocess_dualhorn(const ClauseForm& cf, const std::vector<std::string>& hyps,
                                       const std::vector<std::string>& manifestations) {
    DualHornPreprocess out;
    std::set<Clause> clauses(cf.clauses.begin(), cf.clauses.end());
    std::map<int, bool> forced;

    auto propagate = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& c : clauses) {
                if (c.size() != 1) continue;
                int var = lit_var(c[0]);
                bool value = lit_positive(c[0]);
                auto it = forced.find(var);
                if (it != forced.end() && it->second != value) return false;
                forced[var] = value;
                std::set<Clause> next;
                for (Clause cl : clauses) {
                    if (std::find(cl.begin(), cl.end(), make_lit(var, value)) != cl.end()) continue;
                    cl.erase(std::remove(cl.begin(), cl.end(), make_lit(var, !value)), cl.end());
                    if (cl.empty()) return false;
                    next.insert(std::move(cl));
                }
                clauses = std::move(next);
                changed = true;
                break;
            }
        }
        return true;
    };

    if (!propagate()) {
        out.unsat = true;
        return out;
    }

    std::vector<std::string> keep = sorted_unique(set_union(
        sorted_unique(std::vector<std::string>(hyps)), sorted_unique(manifestations)));
    for (std::size_t idx = 0; idx < cf.vars.size(); ++idx) {
        if (sorted_contains(keep, cf.vars[idx])) continue;
        std::vector<Clause> with_pos, with_neg, untouched;
        for (const Clause& c : clauses) {
            bool pos = std::find(c.begin(), c.end(), make_lit(idx, true)) != c.end();
            bool neg = std::find(c.begin(), c.end(), make_lit(idx, false)) != c.end();
            if (pos) with_pos.push_back(c);
            else if (neg) with_neg.push_back(c);
            else untouched.push_back(c);
        }
        if (with_pos.empty() && with_neg.empty()) continue;
        std::set<Clause> next(untouched.begin(), untouched.end());
        for (const Clause& cp : with_pos)
            for (const Clause& cn : with_neg) {
                Clause resolvent;
                for (int lit : cp)
                    if (lit != make_lit(idx, true)) resolvent.push_back(lit);
                for (int lit : cn)
                    if (lit != make_lit(idx, false)) resolvent.push_back(lit);
                if (auto norm = normalize_clause(std::move(resolvent))) {
                    if (norm->empty()) {
                        out.unsat = true;
                        return out;
                    }
                    next.insert(std::move(*norm));
                }
            }
        clauses = std::move(next);
        if (!propagate()) {
            out.unsat = true;
            return out;
        }
    }

    for (auto [var, value] : forced) out.forced[cf.vars[var]] = value;
    out.graph.vars = cf.vars;
    for (const Clause& c : clauses) {
        if (clause_shape(c) != ClauseShape::implication) continue;  // type-2/3 dropped
        int from = -1, to = -1;
        for (int lit : c) (lit_positive(lit) ? to : from) = lit_var(lit);
        out.graph.edges.emplace_back(from, to);
    }
    std::sort(out.graph.edges.begin(), out.graph.edges.end());
    return out;
}

SetCoverAnalysis analyze_m_setcover(const AbductionInstance& inst) {
    SetCoverAnalysis out;
    ClauseForm cf = to_clause_form(inst.language, inst.kb, FormKind::dual_horn, inst.variables);
    if (!sat_poly(cf)) return out;
    // dualHorn models are closed under join, so joint consistency with M is
    // exactly per-manifestation consistency, and any set of individually
    // usable hypotheses is usable together.
    for (const std::string& m : inst.manifestations)
        if (!sat_poly(with_units(cf, {m}, {}))) return out;
    out.feasible = true;

    std::vector<std::string> open;
    for (const std::string& m : inst.manifestations) {
        if (implies_poly(cf, {}, {m})) out.discharged.push_back(m);
        else open.push_back(m);
    }
    for (const std::string& h : inst.hypotheses)
        if (sat_poly(with_units(cf, {h}, {}))) out.usable_hypotheses.push_back(h);

    if (open.size() > 20)
        throw std::invalid_argument("manifestation set too large for subset DP");

    std::vector<std::uint32_t> cover(out.usable_hypotheses.size(), 0);
    std::vector<std::vector<int>> candidates(open.size());
    for (const std::string& m : open) out.explainers[m];
    for (std::size_t hi = 0; hi < out.usable_hypotheses.size(); ++hi)
        for (std::size_t mi = 0; mi < open.size(); ++mi)
            if (implies_poly(cf, {out.usable_hypotheses[hi]}, {open[mi]})) {
                cover[hi] |= std::uint32_t{1} << mi;
                candidates[mi].push_back(static_cast<int>(hi));
                out.explainers[open[mi]].push_back(out.usable_hypotheses[hi]);
            }
    for (std::size_t mi = 0; mi < open.size(); ++mi)
        if (candidates[mi].empty()) {
            out.min_cover = -1;
            return out;  // some manifestation has no explainer
        }

    const std::uint32_t full = open.empty() ? 0 : (std::uint32_t{1} << open.size()) - 1;
    std::vector<int> dp(full + 1, INT_MAX);
    std::vector<int> choice(full + 1, -1), from(full + 1, 0);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (dp[mask] == INT_MAX || mask == full) continue;
        int m0 = std::countr_zero(~mask & full);
        for (int hi : candidates[m0]) {
            std::uint32_t next = mask | cover[hi];
            if (dp[mask] + 1 < dp[next]) {
                dp[next] = dp[mask] + 1;
                choice[next] = hi;
                from[next] = mask;
            }
        }
    }
    if (dp[full] == INT_MAX) {
        out.min_cover = -1;
        return out;
    }
    out.min_cover = dp[full];
    Explanation witness;
    for (std::uint32_t mask = full; mask != 0 && choice[mask] >= 0; mask = from[mask])
        witness.push_back(out.usable_hypotheses[choice[mask]]);
    out.min_witness = sorted_unique(std::move(witness));
    return out;
}

std::optional<Explanation> solve_M_setcover(const AbductionInstance& inst, Variant variant) {
    if (variant != Variant::at_most)
        throw std::invalid_argument("solve_M_setcover handles the at-most variant");
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_iv2())
        throw std::invalid_argument("solve_M_setcover requires a dualHorn language");
    const int s = inst.required_size(variant);
    SetCoverAnalysis a = analyze_m_setcover(inst);
    if (!a.feasible || !a.min_witness) return std::nullopt;
    if (a.min_cover > s) return std::nullopt;
    return a.min_witness;
}

namespace {

struct PairFlags {
    bool imp_ab = false;  // ~a v b
    bool imp_ba = false;  // a v ~b
    bool both_pos = false;
    bool both_neg = false;
};

}  // namespace

TwoAffineAnalysis analyze_2affine(const AbductionInstance& inst) {
    TwoAffineAnalysis out;
    ClauseSet cs = make_clause_set(inst);
    const int n = static_cast<int>(cs.vars.size());

    // unit propagation
    bool changed = true;
    while (changed && !cs.unsat) {
        changed = false;
        for (const Clause& c : cs.clauses)
            if (c.size() == 1) {
                cs.assign(lit_var(c[0]), lit_positive(c[0]));
                changed = true;
                break;
            }
    }
    for (auto [var, value] : cs.forced) out.decomposition.forced[cs.name(var)] = value;
    if (cs.unsat) return out;

    std::map<std::pair<int, int>, PairFlags> pairs;
    for (const Clause& c : cs.clauses) {
        if (c.size() != 2)
            throw std::logic_error("2-affine clause form contains a clause of width != 2");
        int a = lit_var(c[0]), b = lit_var(c[1]);
        PairFlags& f = pairs[{a, b}];  // normalized clauses sort literals by variable
        bool pa = lit_positive(c[0]);
        bool pb = lit_positive(c[1]);
        if (pa && pb) f.both_pos = true;
        else if (!pa && !pb) f.both_neg = true;
        else if (!pa && pb) f.imp_ab = true;
        else f.imp_ba = true;
    }

    // union-find over equalities
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    std::vector<std::pair<int, int>> neq_edges;
    for (const auto& [key, f] : pairs) {
        bool eq = f.imp_ab && f.imp_ba;
        bool neq = f.both_pos && f.both_neg;
        if ((f.imp_ab || f.imp_ba) && !eq)
            throw std::logic_error("lone implication in a 2-affine clause form");
        if ((f.both_pos || f.both_neg) && !neq)
            throw std::logic_error("lone 2-clause in a 2-affine clause form");
        if (eq && neq) return out;  // x = y and x != y: unsatisfiable
        if (eq) unite(key.first, key.second);
        if (neq) neq_edges.push_back(key);
    }

    // disequality graph over classes; two-colour each component, merging
    // same-colour classes (a != b != c forces a = c)
    std::map<int, std::vector<int>> class_adj;
    for (auto [a, b] : neq_edges) {
        int ca = find(a), cb = find(b);
        if (ca == cb) return out;  // x != x
        class_adj[ca].push_back(cb);
        class_adj[cb].push_back(ca);
    }
    std::map<int, int> color;
    std::vector<std::pair<int, int>> cluster_sides;
    for (const auto& [start, _] : class_adj) {
        if (color.count(find(start))) continue;
        std::vector<int> comp0{find(start)}, comp1;
        color[find(start)] = 0;
        std::vector<int> queue{find(start)};
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            auto adj_it = class_adj.find(u);
            if (adj_it == class_adj.end()) continue;
            for (int v0 : adj_it->second) {
                int v = find(v0);
                auto it = color.find(v);
                int want = 1 - color[u];
                if (it == color.end()) {
                    color[v] = want;
                    (want == 0 ? comp0 : comp1).push_back(v);
                    queue.push_back(v);
                } else if (it->second != want) {
                    out.kb_satisfiable = false;
                    return out;  // odd cycle
                }
            }
        }
        for (std::size_t i = 1; i < comp0.size(); ++i) unite(comp0[0], comp0[i]);
        for (std::size_t i = 1; i < comp1.size(); ++i) unite(comp1[0], comp1[i]);
        cluster_sides.emplace_back(comp0[0], comp1.empty() ? -1 : comp1[0]);
    }
    out.kb_satisfiable = true;

    // final classes over the unforced variables
    std::map<int, int> class_id;
    auto& classes = out.decomposition.classes;
    for (int i = 0; i < n; ++i) {
        if (cs.forced.count(i)) continue;
        int root = find(i);
        auto it = class_id.find(root);
        if (it == class_id.end()) {
            it = class_id.emplace(root, static_cast<int>(classes.size())).first;
            classes.emplace_back();
        }
        classes[it->second].push_back(cs.name(i));
    }
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());

    std::map<int, int> partner;  // class id -> partner class id (or -1)
    for (auto [s0, s1] : cluster_sides) {
        int c0 = class_id.at(find(s0));
        int c1 = s1 < 0 ? -1 : class_id.at(find(s1));
        out.decomposition.clusters.emplace_back(c0, c1);
        partner[c0] = c1;
        if (c1 >= 0) partner[c1] = c0;
    }
    for (const auto& [root, id] : class_id)
        if (!partner.count(id)) {
            out.decomposition.clusters.emplace_back(id, -1);
            partner[id] = -1;
        }

    // manifest classes
    out.manifestations_consistent = true;
    std::set<int> manifest;
    for (const std::string& m : inst.manifestations) {
        auto forced_it = out.decomposition.forced.find(m);
        if (forced_it != out.decomposition.forced.end()) {
            if (!forced_it->second) out.manifestations_consistent = false;
            continue;
        }
        manifest.insert(class_id.at(find(cs.index(m))));
    }
    for (int x : manifest) {
        int y = partner.at(x);
        if (y >= 0 && manifest.count(y)) out.manifestations_consistent = false;
    }
    out.decomposition.manifest_classes.assign(manifest.begin(), manifest.end());

    auto class_hyps = [&](int id) {
        std::vector<std::string> hs;
        for (const std::string& v : classes[id])
            if (inst.is_hypothesis(v)) hs.push_back(v);
        return hs;
    };

    out.manifest_classes_covered = true;
    for (int x : manifest) {
        std::vector<std::string> hs = class_hyps(x);
        if (hs.empty()) {
            out.manifest_classes_covered = false;
            continue;
        }
        out.base.push_back(hs.front());
    }
    std::sort(out.base.begin(), out.base.end());
    out.e_min = static_cast<int>(manifest.size());

    if (!out.feasible()) return out;

    // growth pool: the rest of each manifest class, then the better side of
    // every free cluster, then hypotheses pinned true by units
    std::vector<std::string> growth;
    for (int x : manifest) {
        std::vector<std::string> hs = class_hyps(x);
        for (std::size_t i = 0; i < hs.size(); ++i)
            if (!sorted_contains(out.base, hs[i])) growth.push_back(hs[i]);
    }
    for (auto [c0, c1] : out.decomposition.clusters) {
        if (manifest.count(c0) || (c1 >= 0 && manifest.count(c1))) continue;
        std::vector<std::string> h0 = class_hyps(c0);
        std::vector<std::string> h1 = c1 >= 0 ? class_hyps(c1) : std::vector<std::string>{};
        const std::vector<std::string>& side = h0.size() >= h1.size() ? h0 : h1;
        growth.insert(growth.end(), side.begin(), side.end());
    }
    for (const auto& [v, value] : out.decomposition.forced)
        if (value && inst.is_hypothesis(v)) growth.push_back(v);
    out.growth = growth;
    out.e_max = out.e_min + static_cast<int>(growth.size());
    return out;
}

std::optional<Explanation> solve_2affine(const AbductionInstance& inst, Variant variant) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_id1())
        throw std::invalid_argument("solve_2affine requires a 2-affine language");
    TwoAffineAnalysis a = analyze_2affine(inst);
    if (!a.feasible()) return std::nullopt;
    if (variant == Variant::plain) return a.base;
    const int s = inst.required_size(variant);
    if (variant == Variant::at_most)
        return a.e_min <= s ? std::optional<Explanation>(a.base) : std::nullopt;
    if (s < a.e_min || s > a.e_max) return std::nullopt;
    Explanation e = a.base;
    for (int i = 0; i < s - a.e_min; ++i) e.push_back(a.growth[i]);
    return sorted_unique(std::move(e));
}

}  // namespace abdkit
