#include "abdkit/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abdkit/lattice.hpp"
#include "abdkit/schaefer.hpp"
#include "abdkit/solvers.hpp"

namespace abdkit {

bool Graph::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

Graph parse_graph(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));

    std::vector<std::string> vertex_names;
    std::vector<std::pair<std::string, std::string>> edge_names;
    for (const std::string& tok : tokens) {
        std::size_t dash = tok.find('-');
        if (dash == std::string::npos) {
            vertex_names.push_back(tok);
            continue;
        }
        std::string a = tok.substr(0, dash), b = tok.substr(dash + 1);
        if (a.empty() || b.empty()) throw std::invalid_argument("bad edge token '" + tok + "'");
        if (a == b) throw std::invalid_argument("self-loop '" + tok + "'");
        vertex_names.push_back(a);
        vertex_names.push_back(b);
        edge_names.emplace_back(std::move(a), std::move(b));
    }

    Graph g;
    g.vertices = sorted_unique(std::move(vertex_names));
    std::set<std::pair<int, int>> edges;
    auto index = [&](const std::string& v) {
        return static_cast<int>(std::lower_bound(g.vertices.begin(), g.vertices.end(), v) -
                                g.vertices.begin());
    };
    for (const auto& [a, b] : edge_names) {
        int ia = index(a), ib = index(b);
        edges.emplace(std::min(ia, ib), std::max(ia, ib));
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

namespace {

WsatInstance finalize_metadata(WsatInstance w) {
    bool any_pos = false, any_neg = false;
    int width = 0;
    for (const Clause& c : w.clauses) {
        width = std::max(width, static_cast<int>(c.size()));
        for (int lit : c) (lit_positive(lit) ? any_pos : any_neg) = true;
    }
    if (!w.clauses.empty()) w.width = width;
    w.polarity = any_neg ? (any_pos ? WsatInstance::Polarity::any
                                    : WsatInstance::Polarity::antimonotone)
                         : WsatInstance::Polarity::monotone;
    return w;
}

// Shared machinery for the implication-plus-negative-clauses routes: unit
// propagation, reachability explainer sets, cover clauses, and negative
// clause expansion over explainer sets.
WsatInstance reduce_is10_core(const AbductionInstance& inst, bool allow_negative) {
    const int s = inst.required_size(Variant::exact);

    ClauseExpander expander(inst.language);
    std::set<Clause> clauses;
    for (Clause& c : expander.expand_clauses(inst.kb, inst.variables))
        clauses.insert(std::move(c));

    // unit propagation over the facts
    std::map<int, bool> forced;
    while (true) {
        auto unit = std::find_if(clauses.begin(), clauses.end(),
                                 [](const Clause& c) { return c.size() == 1; });
        if (unit == clauses.end()) break;
        int var = lit_var((*unit)[0]);
        bool value = lit_positive((*unit)[0]);
        forced[var] = value;
        std::set<Clause> next;
        for (Clause c : clauses) {
            if (std::find(c.begin(), c.end(), make_lit(var, value)) != c.end()) continue;
            c.erase(std::remove(c.begin(), c.end(), make_lit(var, !value)), c.end());
            if (c.empty()) return finalize_metadata(wsat_trivially_false());
            next.insert(std::move(c));
        }
        clauses = std::move(next);
    }

    auto forced_value = [&](const std::string& name) -> std::optional<bool> {
        int idx = static_cast<int>(std::lower_bound(inst.variables.begin(), inst.variables.end(),
                                                    name) -
                                   inst.variables.begin());
        auto it = forced.find(idx);
        if (it == forced.end()) return std::nullopt;
        return it->second;
    };

    // split the remainder
    ImplicationGraph graph;
    graph.vars = inst.variables;
    std::vector<Clause> negatives;
    for (const Clause& c : clauses) {
        switch (clause_shape(c)) {
            case ClauseShape::implication: {
                int from = -1, to = -1;
                for (int lit : c) (lit_positive(lit) ? to : from) = lit_var(lit);
                graph.edges.emplace_back(from, to);
                break;
            }
            case ClauseShape::negative:
            case ClauseShape::neg_unit:
                negatives.push_back(c);
                break;
            default:
                throw std::invalid_argument("knowledge base outside the implication region");
        }
    }
    if (!allow_negative && !negatives.empty())
        throw std::invalid_argument("negative clauses present; use the wider reduction");
    std::sort(graph.edges.begin(), graph.edges.end());

    // usable hypotheses: selecting a false-forced hypothesis can never work
    std::vector<std::string> usable;
    for (const std::string& h : inst.hypotheses) {
        auto v = forced_value(h);
        if (!v || *v) usable.push_back(h);
    }

    // open manifestations
    std::vector<std::string> open;
    for (const std::string& m : inst.manifestations) {
        auto v = forced_value(m);
        if (v && *v) continue;
        if (v && !*v) return finalize_metadata(wsat_trivially_false());
        open.push_back(m);
    }

    ExplainerSets sets = explainer_sets(graph, usable, inst.variables);

    WsatInstance w;
    w.variables = usable;
    w.weight = s;
    w.mode = WsatInstance::Mode::exact;

    auto var_lit = [&](const std::string& name, bool positive) {
        int idx = static_cast<int>(std::lower_bound(usable.begin(), usable.end(), name) -
                                   usable.begin());
        return make_lit(idx, positive);
    };

    for (const std::string& m : open) {
        const std::vector<std::string>& hm = sets.per_manifestation.at(m);
        if (hm.empty()) return finalize_metadata(wsat_trivially_false());
        Clause cover;
        for (const std::string& h : hm) cover.push_back(var_lit(h, true));
        w.clauses.push_back(*normalize_clause(std::move(cover)));
    }

    for (const Clause& neg : negatives) {
        std::vector<const std::vector<std::string>*> per_var;
        bool droppable = false;
        for (int lit : neg) {
            const std::string& name = inst.variables[lit_var(lit)];
            const std::vector<std::string>& hu = sets.per_manifestation.at(name);
            if (hu.empty()) {
                droppable = true;  // nothing can force this variable true
                break;
            }
            per_var.push_back(&hu);
        }
        if (droppable) continue;
        std::size_t combos = 1;
        for (const auto* hu : per_var) {
            combos *= hu->size();
            if (combos > 200000) throw std::invalid_argument("negative clause expansion too large");
        }
        std::vector<std::size_t> pick(per_var.size(), 0);
        while (true) {
            Clause copy;
            for (std::size_t j = 0; j < per_var.size(); ++j)
                copy.push_back(var_lit((*per_var[j])[pick[j]], false));
            if (auto norm = normalize_clause(std::move(copy))) w.clauses.push_back(*norm);
            int j = static_cast<int>(per_var.size()) - 1;
            while (j >= 0 && pick[j] + 1 == per_var[j]->size()) pick[j--] = 0;
            if (j < 0) break;
            ++pick[j];
        }
    }

    std::sort(w.clauses.begin(), w.clauses.end());
    w.clauses.erase(std::unique(w.clauses.begin(), w.clauses.end()), w.clauses.end());
    return finalize_metadata(std::move(w));
}

}  // namespace

WsatInstance reduce_im_eq_to_wsat(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.shapes_im)
        throw std::invalid_argument("reduce_im_eq_to_wsat requires a pure implication language");
    return reduce_is10_core(inst, false);
}

WsatInstance reduce_is10_eq_to_wsat(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_is10())
        throw std::invalid_argument(
            "reduce_is10_eq_to_wsat requires implications, units and negative clauses only");
    return reduce_is10_core(inst, true);
}

WsatInstance reduce_iv2_eq_to_wsat(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_iv2()) throw std::invalid_argument("reduce_iv2_eq_to_wsat requires dualHorn");
    const int s = inst.required_size(Variant::exact);

    SetCoverAnalysis a = analyze_m_setcover(inst);
    if (!a.feasible) return finalize_metadata(wsat_trivially_false());
    if (a.min_cover < 0) return finalize_metadata(wsat_trivially_false());

    WsatInstance w;
    w.variables = a.usable_hypotheses;
    w.weight = s;
    w.mode = WsatInstance::Mode::exact;
    std::vector<std::string> open = set_minus(inst.manifestations, a.discharged);
    for (const std::string& m : open) {
        Clause cover;
        for (const std::string& h : a.explainers.at(m)) {
            int idx = static_cast<int>(std::lower_bound(w.variables.begin(), w.variables.end(),
                                                        h) -
                                       w.variables.begin());
            cover.push_back(make_lit(idx, true));
        }
        w.clauses.push_back(*normalize_clause(std::move(cover)));
    }
    std::sort(w.clauses.begin(), w.clauses.end());
    w.clauses.erase(std::unique(w.clauses.begin(), w.clauses.end()), w.clauses.end());
    return finalize_metadata(std::move(w));
}

namespace {

struct EssNegStructure {
    bool contradiction = false;
    std::vector<std::string> vars;                       // instance variables
    std::vector<int> class_of;                           // union-find result per var
    std::vector<std::vector<int>> class_members;
    std::vector<bool> class_true;                        // forced by positive units / E_MP
    std::vector<bool> class_false;                       // forced by negative units
    std::vector<Clause> negatives;                       // non-unit negative clauses
    std::vector<std::string> e_mp;
};

// Clause-level structure of an essentially negative KB: equality classes from
// converse implication pairs, unit polarity per class, negative clauses.
EssNegStructure essneg_structure(const AbductionInstance& inst) {
    EssNegStructure st;
    st.vars = inst.variables;
    const int n = static_cast<int>(st.vars.size());

    ClauseExpander expander(inst.language);
    std::vector<Clause> all = expander.expand_clauses(inst.kb, st.vars);
    std::set<Clause> clause_set(all.begin(), all.end());

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<Clause> units, negatives;
    for (const Clause& c : clause_set) {
        if (clause_shape(c) == ClauseShape::implication) {
            Clause rev{-c[0], -c[1]};
            auto norm = normalize_clause(std::move(rev));
            if (!norm || !clause_set.count(*norm))
                throw std::invalid_argument("lone implication in an essentially negative KB");
            int a = find(lit_var(c[0])), b = find(lit_var(c[1]));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        } else if (c.size() == 1) {
            units.push_back(c);
        } else if (clause_shape(c) == ClauseShape::negative) {
            negatives.push_back(c);
        } else {
            throw std::invalid_argument("clause outside the essentially negative region");
        }
    }

    st.class_of.resize(n);
    std::map<int, int> ids;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        auto it = ids.find(root);
        if (it == ids.end()) {
            it = ids.emplace(root, static_cast<int>(st.class_members.size())).first;
            st.class_members.emplace_back();
        }
        st.class_of[i] = it->second;
        st.class_members[it->second].push_back(i);
    }
    st.class_true.assign(st.class_members.size(), false);
    st.class_false.assign(st.class_members.size(), false);
    for (const Clause& u : units) {
        int cls = st.class_of[lit_var(u[0])];
        (lit_positive(u[0]) ? st.class_true : st.class_false)[cls] = true;
    }
    for (std::size_t c = 0; c < st.class_members.size(); ++c)
        if (st.class_true[c] && st.class_false[c]) st.contradiction = true;
    st.negatives = std::move(negatives);
    return st;
}

}  // namespace

std::vector<std::string> essneg_forced_core(const AbductionInstance& inst) {
    EssNegStructure st = essneg_structure(inst);
    const auto index_of = [&](const std::string& v) {
        return static_cast<int>(std::lower_bound(st.vars.begin(), st.vars.end(), v) -
                                st.vars.begin());
    };
    // E_MP: manifestations whose class is not forced true and contains no
    // other hypothesis that could stand in (the singleton-class case forces
    // membership in every explanation).
    std::vector<std::string> core;
    for (const std::string& m : inst.manifestations) {
        int cls = st.class_of[index_of(m)];
        if (st.class_true[cls]) continue;
        bool multi_h = false;
        for (int member : st.class_members[cls])
            if (st.vars[member] != m && inst.is_hypothesis(st.vars[member])) multi_h = true;
        if (!multi_h) core.push_back(m);
    }
    return sorted_unique(std::move(core));
}

WsatInstance reduce_essneg_eq_to_wsat(const AbductionInstance& inst) {
    LatticeProfile prof = lattice_profile(inst.language);
    if (!prof.in_is12())
        throw std::invalid_argument("reduce_essneg_eq_to_wsat requires essentially negative");
    const int s = inst.required_size(Variant::exact);

    // A solution of size <= s must exist; otherwise the canonical negative
    // dummy is emitted. The at-most question is decided on the merged
    // instance.
    {
        AbductionInstance merged = eliminate_equality_ess_negative(inst);
        merged.size = s;
        if (!solve_ess_negative_le(merged)) return finalize_metadata(wsat_trivially_false());
    }

    EssNegStructure st = essneg_structure(inst);
    if (st.contradiction) return finalize_metadata(wsat_trivially_false());
    const auto index_of = [&](const std::string& v) {
        return static_cast<int>(std::lower_bound(st.vars.begin(), st.vars.end(), v) -
                                st.vars.begin());
    };

    std::vector<std::string> e_mp = essneg_forced_core(inst);
    if (static_cast<int>(e_mp.size()) > s) return finalize_metadata(wsat_trivially_false());
    std::vector<bool> class_selected = st.class_true;  // true under every solution
    for (const std::string& m : e_mp) {
        int cls = st.class_of[index_of(m)];
        if (st.class_false[cls]) return finalize_metadata(wsat_trivially_false());
        class_selected[cls] = true;
    }

    WsatInstance w;
    w.variables = set_minus(inst.hypotheses, e_mp);
    w.weight = s - static_cast<int>(e_mp.size());
    w.mode = WsatInstance::Mode::exact;
    auto theta_lit = [&](const std::string& name, bool positive) {
        int idx = static_cast<int>(std::lower_bound(w.variables.begin(), w.variables.end(),
                                                    name) -
                                   w.variables.begin());
        return make_lit(idx, positive);
    };

    // Open manifestations in a multi-hypothesis class: any class member may
    // stand in for m.
    for (const std::string& m : inst.manifestations) {
        int cls = st.class_of[index_of(m)];
        if (class_selected[cls]) continue;
        Clause cover;
        for (int member : st.class_members[cls])
            if (inst.is_hypothesis(st.vars[member])) cover.push_back(theta_lit(st.vars[member], true));
        if (cover.empty()) return finalize_metadata(wsat_trivially_false());
        w.clauses.push_back(*normalize_clause(std::move(cover)));
    }

    // Hypotheses in a false-forced class can never be selected.
    for (const std::string& h : w.variables) {
        int cls = st.class_of[index_of(h)];
        if (st.class_false[cls]) w.clauses.push_back({theta_lit(h, false)});
    }

    // Negative clauses: a clause is violated exactly when every remaining
    // class is selected, so expand one literal per class over the class's
    // selectable hypotheses.
    for (const Clause& neg : st.negatives) {
        std::set<int> neg_classes;
        bool satisfied = false;
        for (int lit : neg) {
            int cls = st.class_of[lit_var(lit)];
            if (st.class_false[cls]) {
                satisfied = true;  // some variable is pinned 0
                break;
            }
            if (!class_selected[cls]) neg_classes.insert(cls);
        }
        if (satisfied) continue;
        if (neg_classes.empty()) return finalize_metadata(wsat_trivially_false());

        std::vector<std::vector<std::string>> per_class;
        bool droppable = false;
        for (int cls : neg_classes) {
            std::vector<std::string> members;
            for (int member : st.class_members[cls])
                if (inst.is_hypothesis(st.vars[member]) && !sorted_contains(e_mp, st.vars[member]))
                    members.push_back(st.vars[member]);
            if (members.empty()) {
                droppable = true;  // this class can never be made true
                break;
            }
            per_class.push_back(std::move(members));
        }
        if (droppable) continue;
        std::size_t combos = 1;
        for (const auto& members : per_class) {
            combos *= members.size();
            if (combos > 200000) throw std::invalid_argument("negative clause expansion too large");
        }
        std::vector<std::size_t> pick(per_class.size(), 0);
        while (true) {
            Clause copy;
            for (std::size_t j = 0; j < per_class.size(); ++j)
                copy.push_back(theta_lit(per_class[j][pick[j]], false));
            if (auto norm = normalize_clause(std::move(copy))) w.clauses.push_back(*norm);
            int j = static_cast<int>(per_class.size()) - 1;
            while (j >= 0 && pick[j] + 1 == per_class[j].size()) pick[j--] = 0;
            if (j < 0) break;
            ++pick[j];
        }
    }

    std::sort(w.clauses.begin(), w.clauses.end());
    w.clauses.erase(std::unique(w.clauses.begin(), w.clauses.end()), w.clauses.end());
    return finalize_metadata(std::move(w));
}

AbductionInstance gen_indset_eq(const Graph& g, int k) {
    AbductionInstance inst;
    inst.language.add(rel_nand(2, "NAND2"));
    std::string goal = "z";
    while (sorted_contains(g.vertices, goal)) goal += "_";
    for (auto [a, b] : g.edges)
        inst.kb.constraints.push_back(Constraint{"NAND2", {g.vertices[a], g.vertices[b]}});
    inst.hypotheses = g.vertices;
    inst.hypotheses.push_back(goal);
    inst.manifestations = {goal};
    inst.size = k + 1;
    inst.finalize();
    return inst;
}

AbductionInstance gen_vertexcover_le(const Graph& g, int k) {
    AbductionInstance inst;
    inst.language.add(rel_imp("IMP"));
    inst.language.add(rel_and_imp("ANDIMP"));
    inst.hypotheses = g.vertices;
    inst.size = k;
    if (g.edges.empty()) {
        inst.finalize();
        return inst;
    }
    std::string prefix = "_";
    for (bool clash = true; clash;) {
        clash = false;
        for (const std::string& v : g.vertices)
            if (v.rfind(prefix, 0) == 0) {
                prefix += "_";
                clash = true;
                break;
            }
    }
    auto edge_var = [&](std::size_t i) { return prefix + "e" + std::to_string(i + 1); };
    auto chain_var = [&](std::size_t i) { return prefix + "c" + std::to_string(i + 1); };
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        inst.kb.constraints.push_back(Constraint{"IMP", {g.vertices[a], edge_var(i)}});
        inst.kb.constraints.push_back(Constraint{"IMP", {g.vertices[b], edge_var(i)}});
        if (i == 0)
            inst.kb.constraints.push_back(Constraint{"IMP", {edge_var(i), chain_var(i)}});
        else
            inst.kb.constraints.push_back(
                Constraint{"ANDIMP", {edge_var(i), chain_var(i - 1), chain_var(i)}});
    }
    inst.manifestations = {chain_var(g.edges.size() - 1)};
    inst.finalize();
    return inst;
}

}  // namespace abdkit
