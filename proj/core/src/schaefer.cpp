#include "abdkit/schaefer.hpp"

#include <algorithm>
#include <stdexcept>

#include "abdkit/lattice.hpp"

namespace abdkit {

std::string to_string(FormKind k) {
    switch (k) {
        case FormKind::horn: return "horn";
        case FormKind::dual_horn: return "dual_horn";
        case FormKind::krom: return "krom";
        case FormKind::affine: return "affine";
    }
    return "?";
}

int ClauseForm::var_index(const std::string& v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v) return -1;
    return static_cast<int>(it - vars.begin());
}

namespace {

bool clause_fits(const Clause& c, FormKind kind) {
    int pos = 0, neg = 0;
    for (int lit : c) (lit_positive(lit) ? pos : neg)++;
    switch (kind) {
        case FormKind::horn: return pos <= 1;
        case FormKind::dual_horn: return neg <= 1;
        case FormKind::krom: return c.size() <= 2;
        case FormKind::affine: return false;
    }
    return false;
}

}  // namespace

bool ClauseForm::kind_ok() const {
    if (kind == FormKind::affine) return clauses.empty();
    for (const Clause& c : clauses)
        if (!clause_fits(c, kind)) return false;
    return true;
}

const std::vector<Clause>& ClauseExpander::implicates(const std::string& relation) {
    auto it = pi_cache_.find(relation);
    if (it == pi_cache_.end())
        it = pi_cache_.emplace(relation, prime_implicates(lang_->at(relation))).first;
    return it->second;
}

const std::vector<AffineEq>& ClauseExpander::affine(const std::string& relation) {
    auto it = affine_cache_.find(relation);
    if (it == affine_cache_.end()) {
        auto system = relation_affine_system(lang_->at(relation));
        if (!system)
            throw std::logic_error("relation " + relation + " is not affine");
        it = affine_cache_.emplace(relation, std::move(*system)).first;
    }
    return it->second;
}

std::vector<Clause> ClauseExpander::expand_clauses(const KnowledgeBase& kb,
                                                   const std::vector<std::string>& vars) {
    std::vector<Clause> out;
    for (const Constraint& c : kb.constraints) {
        std::vector<int> arg_idx;
        for (const std::string& a : c.args) {
            auto it = std::lower_bound(vars.begin(), vars.end(), a);
            if (it == vars.end() || *it != a)
                throw std::invalid_argument("variable " + a + " missing from clause form");
            arg_idx.push_back(static_cast<int>(it - vars.begin()));
        }
        for (const Clause& pi : implicates(c.relation)) {
            Clause instantiated;
            for (int lit : pi)
                instantiated.push_back(make_lit(arg_idx[lit_var(lit)], lit_positive(lit)));
            if (auto norm = normalize_clause(std::move(instantiated))) out.push_back(*norm);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<AffineEq> ClauseExpander::expand_affine(const KnowledgeBase& kb,
                                                    const std::vector<std::string>& vars) {
    std::vector<AffineEq> out;
    for (const Constraint& c : kb.constraints) {
        std::vector<int> arg_idx;
        for (const std::string& a : c.args) {
            auto it = std::lower_bound(vars.begin(), vars.end(), a);
            if (it == vars.end() || *it != a)
                throw std::invalid_argument("variable " + a + " missing from clause form");
            arg_idx.push_back(static_cast<int>(it - vars.begin()));
        }
        for (const AffineEq& eq : affine(c.relation)) {
            AffineEq inst;
            inst.rhs = eq.rhs;
            std::vector<int> mapped;
            for (int p : eq.vars) mapped.push_back(arg_idx[p]);
            std::sort(mapped.begin(), mapped.end());
            // repeated variables cancel over GF(2)
            for (std::size_t i = 0; i < mapped.size();) {
                std::size_t j = i;
                while (j < mapped.size() && mapped[j] == mapped[i]) ++j;
                if ((j - i) % 2) inst.vars.push_back(mapped[i]);
                i = j;
            }
            out.push_back(std::move(inst));
        }
    }
    return out;
}

ClauseForm to_clause_form(const ConstraintLanguage& lang, const KnowledgeBase& kb, FormKind kind,
                          const std::vector<std::string>& vars) {
    ClauseForm cf;
    cf.kind = kind;
    cf.vars = sorted_unique(vars);
    ClauseExpander expander(lang);
    if (kind == FormKind::affine) {
        cf.equations = expander.expand_affine(kb, cf.vars);
        return cf;
    }
    cf.clauses = expander.expand_clauses(kb, cf.vars);
    for (const Clause& c : cf.clauses)
        if (!clause_fits(c, kind))
            throw std::logic_error("clause does not fit kind " + to_string(kind) +
                                   "; language misclassified");
    return cf;
}

namespace {

// Horn satisfiability by forward chaining over the minimal model.
std::optional<std::vector<bool>> sat_horn(const ClauseForm& cf) {
    const int n = static_cast<int>(cf.vars.size());
    std::vector<bool> value(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Clause& c : cf.clauses) {
            int head = 0;
            bool satisfied = false, all_body_true = true;
            for (int lit : c) {
                if (lit_positive(lit)) {
                    if (value[lit_var(lit)]) satisfied = true;
                    head = lit;
                } else if (!value[lit_var(lit)]) {
                    all_body_true = false;
                }
            }
            if (satisfied || !all_body_true) continue;
            if (head == 0) return std::nullopt;  // all-negative clause violated
            value[lit_var(head)] = true;
            changed = true;
        }
    }
    return value;
}

std::optional<std::vector<bool>> sat_krom(const ClauseForm& cf) {
    const int n = static_cast<int>(cf.vars.size());
    // implication graph nodes: 2*i = var i false, 2*i+1 = var i true
    auto node = [](int lit) { return 2 * lit_var(lit) + (lit_positive(lit) ? 1 : 0); };
    auto negate_node = [](int u) { return u ^ 1; };
    std::vector<std::vector<int>> adj(2 * n);
    for (const Clause& c : cf.clauses) {
        if (c.empty()) return std::nullopt;
        int a = c[0], b = c.size() == 2 ? c[1] : c[0];
        adj[negate_node(node(a))].push_back(node(b));
        adj[negate_node(node(b))].push_back(node(a));
    }

    // Tarjan SCC, iterative.
    std::vector<int> comp(2 * n, -1), low(2 * n), num(2 * n, -1), stk;
    int counter = 0, comp_count = 0;
    std::vector<bool> on_stack(2 * n, false);
    for (int start = 0; start < 2 * n; ++start) {
        if (num[start] != -1) continue;
        std::vector<std::pair<int, std::size_t>> call;
        call.emplace_back(start, 0);
        num[start] = low[start] = counter++;
        stk.push_back(start);
        on_stack[start] = true;
        while (!call.empty()) {
            auto& [u, edge] = call.back();
            if (edge < adj[u].size()) {
                int v = adj[u][edge++];
                if (num[v] == -1) {
                    num[v] = low[v] = counter++;
                    stk.push_back(v);
                    on_stack[v] = true;
                    call.emplace_back(v, 0);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], num[v]);
                }
            } else {
                if (low[u] == num[u]) {
                    while (true) {
                        int v = stk.back();
                        stk.pop_back();
                        on_stack[v] = false;
                        comp[v] = comp_count;
                        if (v == u) break;
                    }
                    ++comp_count;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[u]);
            }
        }
    }

    std::vector<bool> value(n);
    for (int i = 0; i < n; ++i) {
        if (comp[2 * i] == comp[2 * i + 1]) return std::nullopt;
        // Tarjan numbers components in reverse topological order.
        value[i] = comp[2 * i + 1] < comp[2 * i];
    }
    return value;
}

std::optional<std::vector<bool>> sat_affine(const ClauseForm& cf) {
    const int n = static_cast<int>(cf.vars.size());
    // Gaussian elimination; rows as bitsets with the rhs in bit n.
    const int words = (n + 1 + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<int> pivot;
    auto get = [&](const std::vector<std::uint64_t>& row, int bit) {
        return (row[bit >> 6] >> (bit & 63)) & 1;
    };
    for (const AffineEq& eq : cf.equations) {
        std::vector<std::uint64_t> row(words, 0);
        for (int v : eq.vars) row[v >> 6] ^= std::uint64_t{1} << (v & 63);
        if (eq.rhs) row[n >> 6] ^= std::uint64_t{1} << (n & 63);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (get(row, pivot[i]))
                for (int w = 0; w < words; ++w) row[w] ^= basis[i][w];
        int pc = -1;
        for (int v = 0; v < n; ++v)
            if (get(row, v)) {
                pc = v;
                break;
            }
        if (pc == -1) {
            if (get(row, n)) return std::nullopt;  // 0 = 1
            continue;
        }
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (get(basis[i], pc))
                for (int w = 0; w < words; ++w) basis[i][w] ^= row[w];
        basis.push_back(std::move(row));
        pivot.push_back(pc);
    }
    std::vector<bool> value(n, false);  // free variables default to 0
    for (std::size_t i = 0; i < basis.size(); ++i) value[pivot[i]] = get(basis[i], n);
    return value;
}

std::optional<std::vector<bool>> sat_indices(const ClauseForm& cf) {
    switch (cf.kind) {
        case FormKind::horn: return sat_horn(cf);
        case FormKind::krom: return sat_krom(cf);
        case FormKind::affine: return sat_affine(cf);
        case FormKind::dual_horn: {
            // Flip every literal, solve as horn, flip the model back.
            ClauseForm flipped = cf;
            flipped.kind = FormKind::horn;
            for (Clause& c : flipped.clauses)
                for (int& lit : c) lit = -lit;
            auto model = sat_horn(flipped);
            if (!model) return std::nullopt;
            for (std::size_t i = 0; i < model->size(); ++i) (*model)[i] = !(*model)[i];
            return model;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Assignment> sat_poly(const ClauseForm& cf) {
    auto model = sat_indices(cf);
    if (!model) return std::nullopt;
    Assignment a;
    for (std::size_t i = 0; i < cf.vars.size(); ++i) a[cf.vars[i]] = (*model)[i];
    return a;
}

ClauseForm with_units(ClauseForm cf, const std::vector<std::string>& vars_true,
                      const std::vector<std::string>& vars_false) {
    auto add_unit = [&](const std::string& v, bool positive) {
        int idx = cf.var_index(v);
        if (idx < 0) {
            auto it = std::lower_bound(cf.vars.begin(), cf.vars.end(), v);
            idx = static_cast<int>(it - cf.vars.begin());
            cf.vars.insert(it, v);
            for (Clause& c : cf.clauses)
                for (int& lit : c)
                    if (lit_var(lit) >= idx) lit = make_lit(lit_var(lit) + 1, lit_positive(lit));
            for (AffineEq& eq : cf.equations)
                for (int& var : eq.vars)
                    if (var >= idx) ++var;
        }
        if (cf.kind == FormKind::affine)
            cf.equations.push_back(AffineEq{{idx}, positive});
        else
            cf.clauses.push_back({make_lit(idx, positive)});
    };
    for (const std::string& v : vars_true) add_unit(v, true);
    for (const std::string& v : vars_false) add_unit(v, false);
    return cf;
}

bool implies_poly(const ClauseForm& cf, const std::vector<std::string>& assume_true,
                  const std::vector<std::string>& manifestations) {
    for (const std::string& m : manifestations) {
        ClauseForm query = with_units(cf, assume_true, {m});
        if (sat_poly(query)) return false;
    }
    return true;
}

std::optional<FormKind> pick_form_kind(const ConstraintLanguage& lang) {
    ClosureFlags flags = closure_flags(lang);
    if (flags.horn) return FormKind::horn;
    if (flags.dual_horn) return FormKind::dual_horn;
    if (flags.bijunctive) return FormKind::krom;
    if (flags.affine) return FormKind::affine;
    return std::nullopt;
}

}  // namespace abdkit
