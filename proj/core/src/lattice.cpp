#include "abdkit/lattice.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abdkit/parser.hpp"

namespace abdkit {

namespace {

BoolFunction make_fn(std::string name, int arity, bool (*f)(Tuple)) {
    BoolFunction fn{std::move(name), arity, 0};
    for (Tuple t = 0; t < (Tuple{1} << arity); ++t)
        if (f(t)) fn.table |= std::uint32_t{1} << t;
    return fn;
}

}  // namespace

BoolFunction fn_const0() { return make_fn("const0", 1, [](Tuple) { return false; }); }
BoolFunction fn_const1() { return make_fn("const1", 1, [](Tuple) { return true; }); }
BoolFunction fn_not() { return make_fn("not", 1, [](Tuple t) { return !tuple_bit(t, 0); }); }
BoolFunction fn_and() {
    return make_fn("and", 2, [](Tuple t) { return tuple_bit(t, 0) && tuple_bit(t, 1); });
}
BoolFunction fn_or() {
    return make_fn("or", 2, [](Tuple t) { return tuple_bit(t, 0) || tuple_bit(t, 1); });
}
BoolFunction fn_maj() {
    return make_fn("maj", 3, [](Tuple t) {
        return tuple_bit(t, 0) + tuple_bit(t, 1) + tuple_bit(t, 2) >= 2;
    });
}
BoolFunction fn_xor3() {
    return make_fn("xor3", 3, [](Tuple t) {
        return (tuple_bit(t, 0) ^ tuple_bit(t, 1) ^ tuple_bit(t, 2)) != 0;
    });
}
BoolFunction fn_essneg() {
    return make_fn("essneg", 3, [](Tuple t) {
        return tuple_bit(t, 0) && (tuple_bit(t, 1) || !tuple_bit(t, 2));
    });
}
BoolFunction fn_esspos() {
    return make_fn("esspos", 3, [](Tuple t) {
        return tuple_bit(t, 0) || (tuple_bit(t, 1) && !tuple_bit(t, 2));
    });
}

bool preserves(const BoolFunction& f, const Relation& r) {
    const std::size_t rows = r.tuples.size();
    if (rows == 0) return true;
    std::vector<std::size_t> pick(f.arity, 0);
    while (true) {
        Tuple result = 0;
        for (int col = 0; col < r.arity; ++col) {
            Tuple args = 0;
            for (int j = 0; j < f.arity; ++j)
                if (tuple_bit(r.tuples[pick[j]], col)) args |= Tuple{1} << j;
            if (f.eval(args)) result |= Tuple{1} << col;
        }
        if (!r.contains(result)) return false;
        int j = f.arity - 1;
        while (j >= 0 && pick[j] + 1 == rows) pick[j--] = 0;
        if (j < 0) return true;
        ++pick[j];
    }
}

ClosureFlags closure_flags(const ConstraintLanguage& lang) {
    ClosureFlags flags;
    auto all = [&](const BoolFunction& f) {
        for (const Relation& r : lang.relations)
            if (!preserves(f, r)) return false;
        return true;
    };
    flags.zero_valid = all(fn_const0());
    flags.one_valid = all(fn_const1());
    flags.complementive = all(fn_not());
    flags.horn = all(fn_and());
    flags.dual_horn = all(fn_or());
    flags.bijunctive = all(fn_maj());
    flags.affine = all(fn_xor3());
    flags.ess_negative = all(fn_essneg());
    flags.ess_positive = all(fn_esspos());
    if (flags.ess_negative && !flags.horn)
        throw std::logic_error("essentially negative language failed the Horn test");
    if (flags.ess_positive && !flags.dual_horn)
        throw std::logic_error("essentially positive language failed the dualHorn test");

    int neg = 0, pos = 0;
    for (const Relation& r : lang.relations) {
        RelationShape s = relation_shape(r);
        neg = std::max(neg, s.max_neg_width);
        pos = std::max(pos, s.max_pos_width);
    }
    if (neg) flags.neg_width = neg;
    if (pos) flags.pos_width = pos;
    return flags;
}

std::string CoCloneLabel::to_string() const {
    std::string base;
    switch (name) {
        case CoCloneName::BR: base = "BR"; break;
        case CoCloneName::II0: base = "II0"; break;
        case CoCloneName::II1: base = "II1"; break;
        case CoCloneName::IN2: base = "IN2"; break;
        case CoCloneName::IN: base = "IN"; break;
        case CoCloneName::IE2: base = "IE2"; break;
        case CoCloneName::IE1: base = "IE1"; break;
        case CoCloneName::IE: base = "IE"; break;
        case CoCloneName::IV2: base = "IV2"; break;
        case CoCloneName::ID2: base = "ID2"; break;
        case CoCloneName::ID1: base = "ID1"; break;
        case CoCloneName::IL2: base = "IL2"; break;
        case CoCloneName::IM: base = "IM"; break;
        case CoCloneName::IS10: base = "IS10"; break;
        case CoCloneName::IS12: base = "IS12"; break;
        case CoCloneName::IS02: base = "IS02"; break;
        case CoCloneName::IS1: base = "IS1"; break;
        case CoCloneName::IBF: base = "IBF"; break;
        case CoCloneName::other: base = "other"; break;
    }
    if (width) base += "(" + std::to_string(*width) + ")";
    return base;
}

LatticeProfile lattice_profile(const ConstraintLanguage& lang) {
    LatticeProfile p;
    p.flags = closure_flags(lang);

    p.all_trivial = true;
    p.shapes_is1 = p.shapes_is12 = p.shapes_is02 = p.shapes_is0 = true;
    p.shapes_is10 = p.shapes_is00 = p.shapes_im = true;
    for (const Relation& r : lang.relations) {
        RelationShape s = relation_shape(r);
        p.all_trivial &= s.trivial;
        p.shapes_is1 &= s.only_neg_and_eq;
        p.shapes_is12 &= s.essneg_shape;
        p.shapes_is02 &= s.esspos_shape;
        p.shapes_is0 &= s.only_pos_and_eq;
        p.shapes_is10 &= s.is10_shape;
        p.shapes_is00 &= s.is00_shape;
        p.shapes_im &= s.implications_only;
    }

    // Minimal matching label, fixed order.
    CoCloneLabel label;
    label.flags = p.flags;
    const int neg_w = p.flags.neg_width.value_or(0);
    const int pos_w = p.flags.pos_width.value_or(0);
    if (p.all_trivial) {
        label.name = CoCloneName::IBF;
    } else if (p.flags.bijunctive && p.flags.affine) {
        label.name = CoCloneName::ID1;
    } else if (p.shapes_is1 && neg_w >= 2) {
        label.name = CoCloneName::IS1;
        label.width = neg_w;
    } else if (p.flags.ess_negative && neg_w >= 2) {
        label.name = CoCloneName::IS12;
        label.width = neg_w;
    } else if (p.flags.ess_positive && pos_w >= 2) {
        label.name = CoCloneName::IS02;
        label.width = pos_w;
    } else if (p.shapes_im) {
        label.name = CoCloneName::IM;
    } else if (p.shapes_is10 && neg_w >= 2) {
        label.name = CoCloneName::IS10;
        label.width = neg_w;
    } else if (p.flags.horn && p.flags.zero_valid && p.flags.one_valid) {
        label.name = CoCloneName::IE;
    } else if (p.flags.horn && p.flags.one_valid) {
        label.name = CoCloneName::IE1;
    } else if (p.flags.horn) {
        label.name = CoCloneName::IE2;
    } else if (p.flags.dual_horn) {
        label.name = CoCloneName::IV2;
    } else if (p.flags.bijunctive) {
        label.name = CoCloneName::ID2;
    } else if (p.flags.affine) {
        label.name = CoCloneName::IL2;
    } else if (p.flags.complementive && p.flags.zero_valid) {
        label.name = CoCloneName::IN;
    } else if (p.flags.complementive) {
        label.name = CoCloneName::IN2;
    } else if (p.flags.zero_valid) {
        label.name = CoCloneName::II0;
    } else if (p.flags.one_valid) {
        label.name = CoCloneName::II1;
    } else {
        label.name = CoCloneName::BR;
    }
    p.label = label;
    return p;
}

CoCloneLabel identify_coclone(const ConstraintLanguage& lang) {
    return lattice_profile(lang).label;
}

bool verify_pp_definition(const PPDefinition& def, const ConstraintLanguage& lang) {
    std::vector<std::string> all_vars = def.free_vars;
    all_vars.insert(all_vars.end(), def.aux_vars.begin(), def.aux_vars.end());
    const int n = static_cast<int>(def.free_vars.size());
    const int total = static_cast<int>(all_vars.size());
    if (total > 20) throw std::invalid_argument("definition too large to verify");
    if (n != def.target.arity) return false;

    std::map<std::string, int> index;
    for (int i = 0; i < total; ++i) index[all_vars[i]] = i;

    std::vector<std::pair<const Relation*, std::vector<int>>> atoms;
    for (const Constraint& c : def.body.constraints) {
        const Relation& r = lang.at(c.relation);
        std::vector<int> arg_idx;
        for (const std::string& a : c.args) arg_idx.push_back(index.at(a));
        atoms.emplace_back(&r, std::move(arg_idx));
    }

    std::set<Tuple> projection;
    for (Tuple a = 0; a < (Tuple{1} << total); ++a) {
        bool ok = true;
        for (const auto& [rel, args] : atoms) {
            Tuple t = 0;
            for (std::size_t j = 0; j < args.size(); ++j)
                if (tuple_bit(a, args[j])) t |= Tuple{1} << j;
            if (!rel->contains(t)) {
                ok = false;
                break;
            }
        }
        if (ok) projection.insert(a & ((Tuple{1} << n) - 1));
    }
    return std::vector<Tuple>(projection.begin(), projection.end()) == def.target.tuples;
}

namespace {

constexpr std::uint64_t kBodyBudget = 4'000'000;

struct Atom {
    int rel = 0;               // index into the (possibly extended) relation list
    std::vector<int> args;
    std::uint64_t mask = 0;    // satisfying assignments over all search vars
};

std::vector<std::string> numbered_vars(const char* stem, int count, int from = 1) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(stem + std::to_string(from + i));
    return out;
}

}  // namespace

std::optional<PPDefinition> pp_member(const Relation& target, const ConstraintLanguage& lang,
                                      bool allow_eq, int max_aux, int max_atoms) {
    const int n = target.arity;
    std::vector<const Relation*> rels;
    for (const Relation& r : lang.relations) rels.push_back(&r);
    Relation eq = rel_eq("EQ");
    if (allow_eq) rels.push_back(&eq);

    std::uint64_t target_mask = 0;
    for (Tuple t : target.tuples) target_mask |= std::uint64_t{1} << t;

    for (int aux = 0; aux <= max_aux; ++aux) {
        const int nv = n + aux;
        if (nv > 6) break;  // masks are single 64-bit words
        const std::uint64_t full = (nv == 6) ? ~std::uint64_t{0}
                                             : ((std::uint64_t{1} << (1 << nv)) - 1);

        std::vector<Atom> atoms;
        std::set<std::uint64_t> seen;
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            const Relation& r = *rels[ri];
            std::vector<int> args(r.arity, 0);
            while (true) {
                std::uint64_t mask = 0;
                for (std::uint64_t a = 0; a < (std::uint64_t{1} << nv); ++a) {
                    Tuple t = 0;
                    for (int j = 0; j < r.arity; ++j)
                        if ((a >> args[j]) & 1) t |= Tuple{1} << j;
                    if (r.contains(t)) mask |= std::uint64_t{1} << a;
                }
                if (mask != full && seen.insert(mask).second)
                    atoms.push_back(Atom{static_cast<int>(ri), args, mask});
                int j = r.arity - 1;
                while (j >= 0 && args[j] + 1 == nv) args[j--] = 0;
                if (j < 0) break;
                ++args[j];
            }
        }

        auto project = [&](std::uint64_t body_mask) {
            std::uint64_t proj = 0;
            const std::uint64_t lower = (std::uint64_t{1} << n) - 1;
            while (body_mask) {
                int a = std::countr_zero(body_mask);
                body_mask &= body_mask - 1;
                proj |= std::uint64_t{1} << (a & lower);
            }
            return proj;
        };

        std::uint64_t visited = 0;
        const int natoms = static_cast<int>(atoms.size());
        for (int k = 1; k <= max_atoms && k <= natoms; ++k) {
            std::vector<int> combo(k);
            for (int i = 0; i < k; ++i) combo[i] = i;
            bool done = false;
            while (!done) {
                if (++visited > kBodyBudget) break;
                std::uint64_t body = full;
                for (int i : combo) body &= atoms[i].mask;
                if (project(body) == target_mask) {
                    PPDefinition def;
                    def.target = target;
                    def.free_vars = numbered_vars("x", n);
                    def.aux_vars = numbered_vars("y", aux);
                    std::vector<std::string> names = def.free_vars;
                    names.insert(names.end(), def.aux_vars.begin(), def.aux_vars.end());
                    for (int i : combo) {
                        Constraint c;
                        c.relation = rels[atoms[i].rel]->name;
                        for (int arg : atoms[i].args) c.args.push_back(names[arg]);
                        def.body.constraints.push_back(std::move(c));
                    }
                    return def;
                }
                int i = k - 1;
                while (i >= 0 && combo[i] == natoms - k + i) --i;
                if (i < 0) {
                    done = true;
                } else {
                    ++combo[i];
                    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
                }
            }
            if (visited > kBodyBudget) break;
        }
    }
    return std::nullopt;
}

namespace {

// Substitutes a definition's free variables by actual arguments and renames
// its aux variables through fresh_aux.
std::vector<Constraint> instantiate_definition(
    const PPDefinition& def, const std::vector<std::string>& actual,
    const std::function<std::string(const std::string&)>& fresh_aux) {
    std::map<std::string, std::string> sub;
    for (std::size_t i = 0; i < def.free_vars.size(); ++i) sub[def.free_vars[i]] = actual[i];
    for (const std::string& a : def.aux_vars) sub[a] = fresh_aux(a);
    std::vector<Constraint> out;
    for (const Constraint& c : def.body.constraints) {
        Constraint copy;
        copy.relation = c.relation;
        for (const std::string& a : c.args) copy.args.push_back(sub.at(a));
        out.push_back(std::move(copy));
    }
    return out;
}

// Finds a relation and witness rows violating closure under f; returns the
// rows picked coordinate-wise (first found in fixed order).
struct ClosureViolation {
    const Relation* rel = nullptr;
    std::vector<Tuple> rows;
};

std::optional<ClosureViolation> find_violation(const ConstraintLanguage& lang,
                                               const BoolFunction& f) {
    for (const Relation& r : lang.relations) {
        const std::size_t rows = r.tuples.size();
        if (rows == 0) continue;
        std::vector<std::size_t> pick(f.arity, 0);
        while (true) {
            Tuple result = 0;
            for (int col = 0; col < r.arity; ++col) {
                Tuple args = 0;
                for (int j = 0; j < f.arity; ++j)
                    if (tuple_bit(r.tuples[pick[j]], col)) args |= Tuple{1} << j;
                if (f.eval(args)) result |= Tuple{1} << col;
            }
            if (!r.contains(result)) {
                ClosureViolation v;
                v.rel = &r;
                for (int j = 0; j < f.arity; ++j) v.rows.push_back(r.tuples[pick[j]]);
                return v;
            }
            int j = f.arity - 1;
            while (j >= 0 && pick[j] + 1 == rows) pick[j--] = 0;
            if (j < 0) break;
            ++pick[j];
        }
    }
    return std::nullopt;
}

// t & ~f as a relation over (t, f): the single tuple t=1, f=0.
Relation target_t_and_not_f() { return Relation("TNF", 2, {0b01}); }

}  // namespace

PPDefinition construct_equality(const ConstraintLanguage& lang) {
    ClosureFlags flags = closure_flags(lang);
    if (flags.ess_negative || flags.ess_positive)
        throw std::invalid_argument(
            "construct_equality requires a language that is neither essentially positive nor "
            "essentially negative");

    const Relation eq_target = rel_eq("EQ");
    auto searched = [&](int max_aux) { return pp_member(eq_target, lang, false, max_aux); };

    // Valid languages: the imported constructions are not reproduced, so the
    // bounded search stands in for them.
    if (flags.zero_valid || flags.one_valid) {
        if (auto def = searched(3)) return *def;
        throw std::runtime_error("equality definition not found within search bounds");
    }

    int fresh_counter = 0;
    auto fresh = [&](const std::string& stem) {
        return "q" + std::to_string(fresh_counter++) + "_" + stem;
    };

    auto tnf_def = [&]() -> PPDefinition {
        auto def = pp_member(target_t_and_not_f(), lang, false, 3);
        if (!def) throw std::runtime_error("t & ~f gadget not found within search bounds");
        return *def;
    };

    auto finish = [&](PPDefinition def) -> PPDefinition {
        if (verify_pp_definition(def, lang)) return def;
        if (auto fallback = searched(4)) return *fallback;
        throw std::runtime_error("equality construction failed verification");
    };

    if (!flags.horn && !flags.dual_horn) {
        // Inequality first, then x=y as a chain of two inequalities.
        PPDefinition neq;
        neq.target = rel_neq("NEQ");
        neq.free_vars = {"x1", "x2"};
        bool have_neq = false;
        if (flags.complementive) {
            if (auto d = pp_member(neq.target, lang, false, 3)) {
                neq = *d;
                have_neq = true;
            }
        } else {
            auto and_violation = find_violation(lang, fn_and());
            auto or_violation = find_violation(lang, fn_or());
            if (and_violation && or_violation) {
                neq.aux_vars = {"f", "t"};
                auto class_atom = [&](const ClosureViolation& v, const std::string& x,
                                      const std::string& y) {
                    Constraint c;
                    c.relation = v.rel->name;
                    for (int i = 0; i < v.rel->arity; ++i) {
                        bool b1 = tuple_bit(v.rows[0], i), b2 = tuple_bit(v.rows[1], i);
                        c.args.push_back(!b1 && !b2 ? "f" : (!b1 && b2 ? x : (b1 && !b2 ? y : "t")));
                    }
                    return c;
                };
                neq.body.constraints.push_back(class_atom(*and_violation, "x1", "x2"));
                neq.body.constraints.push_back(class_atom(*or_violation, "x1", "x2"));
                PPDefinition tnf = tnf_def();
                for (Constraint& c : instantiate_definition(
                         tnf, {"t", "f"}, [&](const std::string& a) { return fresh(a); }))
                    neq.body.constraints.push_back(std::move(c));
                for (const Constraint& c : neq.body.constraints)
                    for (const std::string& a : c.args)
                        if (a != "x1" && a != "x2" && !sorted_contains(sorted_unique(neq.aux_vars), a))
                            neq.aux_vars.push_back(a);
                neq.aux_vars = sorted_unique(neq.aux_vars);
                have_neq = verify_pp_definition(neq, lang);
            }
            if (!have_neq) {
                if (auto d = pp_member(neq.target, lang, false, 3)) {
                    neq = *d;
                    have_neq = true;
                }
            }
        }
        if (have_neq) {
            PPDefinition def;
            def.target = eq_target;
            def.free_vars = {"x1", "x2"};
            def.aux_vars = {"z"};
            auto renamer = [&](const std::string& a) { return fresh(a); };
            for (Constraint& c : instantiate_definition(neq, {"x1", "z"}, renamer))
                def.body.constraints.push_back(std::move(c));
            for (Constraint& c : instantiate_definition(neq, {"z", "x2"}, renamer))
                def.body.constraints.push_back(std::move(c));
            for (const Constraint& c : def.body.constraints)
                for (const std::string& a : c.args)
                    if (a != "x1" && a != "x2") def.aux_vars.push_back(a);
            def.aux_vars = sorted_unique(def.aux_vars);
            return finish(std::move(def));
        }
        if (auto def = searched(4)) return *def;
        throw std::runtime_error("equality definition not found within search bounds");
    }

    // Horn case (not essentially negative) and its dual.
    const bool horn_case = flags.horn;
    auto violation = find_violation(lang, horn_case ? fn_essneg() : fn_esspos());
    if (!violation) throw std::logic_error("closure flags inconsistent with violation search");
    const Relation& r = *violation->rel;
    Tuple m1 = violation->rows[0], m2 = violation->rows[1], m3 = violation->rows[2];

    auto class_var = [&](int i, const std::string& x, const std::string& y) -> std::string {
        bool b1 = tuple_bit(m1, i), b2 = tuple_bit(m2, i), b3 = tuple_bit(m3, i);
        if (horn_case) {
            if (!b1) return "f";
            if (!b2) return b3 ? y : x;
            return "t";
        }
        if (b1) return "t";
        if (b2) return b3 ? y : x;
        return "f";
    };

    PPDefinition def;
    def.target = eq_target;
    def.free_vars = {"x1", "x2"};
    def.aux_vars = {"f", "t"};
    auto m_atom = [&](const std::string& x, const std::string& y) {
        Constraint c;
        c.relation = r.name;
        for (int i = 0; i < r.arity; ++i) c.args.push_back(class_var(i, x, y));
        return c;
    };
    def.body.constraints.push_back(m_atom("x1", "x2"));
    def.body.constraints.push_back(m_atom("x2", "x1"));
    PPDefinition tnf = tnf_def();
    for (Constraint& c :
         instantiate_definition(tnf, {"t", "f"}, [&](const std::string& a) { return fresh(a); }))
        def.body.constraints.push_back(std::move(c));
    for (const Constraint& c : def.body.constraints)
        for (const std::string& a : c.args)
            if (a != "x1" && a != "x2") def.aux_vars.push_back(a);
    def.aux_vars = sorted_unique(def.aux_vars);
    return finish(std::move(def));
}

AbductionInstance rewrite_language(const AbductionInstance& inst,
                                   const std::map<std::string, PPDefinition>& lookup,
                                   const ConstraintLanguage& target_language) {
    AbductionInstance out;
    out.language = target_language;
    out.hypotheses = inst.hypotheses;
    out.manifestations = inst.manifestations;
    out.size = inst.size;

    int occurrence = 0;
    for (const Constraint& c : inst.kb.constraints) {
        auto it = lookup.find(c.relation);
        if (it == lookup.end())
            throw std::invalid_argument("no definition for relation " + c.relation);
        const PPDefinition& def = it->second;
        if (def.free_vars.size() != c.args.size())
            throw std::invalid_argument("definition arity mismatch for " + c.relation);
        std::string prefix = "q" + std::to_string(occurrence++) + "_";
        for (Constraint& body_c : instantiate_definition(
                 def, c.args, [&](const std::string& a) { return prefix + a; }))
            out.kb.constraints.push_back(std::move(body_c));
    }
    out.finalize();
    return out;
}

namespace {

// Projection of a constraint onto its distinct variables; used to recognise
// equality constraints at the instance level.
struct ConstraintView {
    std::vector<std::string> distinct;  // in first-occurrence order
    std::vector<Tuple> satisfying;      // over the distinct variables
};

ConstraintView view_constraint(const Constraint& c, const ConstraintLanguage& lang) {
    const Relation& r = lang.at(c.relation);
    ConstraintView view;
    std::vector<int> arg_slot;
    for (const std::string& a : c.args) {
        auto it = std::find(view.distinct.begin(), view.distinct.end(), a);
        if (it == view.distinct.end()) {
            view.distinct.push_back(a);
            arg_slot.push_back(static_cast<int>(view.distinct.size()) - 1);
        } else {
            arg_slot.push_back(static_cast<int>(it - view.distinct.begin()));
        }
    }
    const int d = static_cast<int>(view.distinct.size());
    for (Tuple a = 0; a < (Tuple{1} << d); ++a) {
        Tuple t = 0;
        for (int j = 0; j < r.arity; ++j)
            if (tuple_bit(a, arg_slot[j])) t |= Tuple{1} << j;
        if (r.contains(t)) view.satisfying.push_back(a);
    }
    return view;
}

bool is_equality_view(const ConstraintView& v) {
    return v.distinct.size() == 2 && v.satisfying == std::vector<Tuple>{0b00, 0b11};
}

bool is_tautology_view(const ConstraintView& v) {
    return v.satisfying.size() == (std::size_t{1} << v.distinct.size());
}

// Does some constraint alone semantically pin this variable to the value?
bool kb_forces_value(const AbductionInstance& inst, const std::string& var, bool value) {
    for (const Constraint& c : inst.kb.constraints) {
        auto it = std::find(c.args.begin(), c.args.end(), var);
        if (it == c.args.end()) continue;
        ConstraintView v = view_constraint(c, inst.language);
        int slot = static_cast<int>(
            std::find(v.distinct.begin(), v.distinct.end(), var) - v.distinct.begin());
        bool always = true;
        for (Tuple t : v.satisfying)
            if (tuple_bit(t, slot) != value) {
                always = false;
                break;
            }
        if (always && !v.satisfying.empty()) return true;
    }
    return false;
}

void substitute_var(AbductionInstance& inst, const std::string& from, const std::string& to) {
    for (Constraint& c : inst.kb.constraints)
        for (std::string& a : c.args)
            if (a == from) a = to;
    for (auto* set : {&inst.hypotheses, &inst.manifestations}) {
        bool had = false;
        set->erase(std::remove_if(set->begin(), set->end(),
                                  [&](const std::string& v) {
                                      if (v == from) {
                                          had = true;
                                          return true;
                                      }
                                      return false;
                                  }),
                   set->end());
        if (had) *set = sorted_unique(set_union(*set, {to}));
    }
}

// A unit relation reusable for propagated units; appended to the language if
// nothing equivalent exists.
std::string ensure_unit(AbductionInstance& inst, bool value) {
    const Tuple t = value ? 1 : 0;
    for (const Relation& r : inst.language.relations)
        if (r.arity == 1 && r.tuples == std::vector<Tuple>{t}) return r.name;
    std::string name = value ? "T" : "F";
    while (inst.language.find(name)) name += "_";
    inst.language.add(value ? rel_unit_true(name) : rel_unit_false(name));
    return name;
}

}  // namespace

AbductionInstance eliminate_equality_ess_positive(const AbductionInstance& inst, Variant variant) {
    (void)variant;  // the class analysis below preserves answers for every variant
    AbductionInstance out = inst;

    // Gather the equality classes up front; the soundness of each move
    // depends on the whole class, not on one clause at a time.
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        std::string root = find(it->second);
        parent[v] = root;
        return root;
    };
    std::vector<Constraint> kept;
    for (const Constraint& c : out.kb.constraints) {
        ConstraintView v = view_constraint(c, out.language);
        if (is_tautology_view(v)) continue;
        if (is_equality_view(v)) {
            std::string ra = find(v.distinct[0]), rb = find(v.distinct[1]);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            continue;
        }
        kept.push_back(c);
    }
    out.kb.constraints = std::move(kept);

    std::map<std::string, std::vector<std::string>> classes;
    for (const std::string& v : inst.variables) classes[find(v)].push_back(v);

    for (auto& [root, members] : classes) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());

        bool pinned_false = false, pinned_true = false;
        for (const std::string& v : members) {
            pinned_false |= kb_forces_value(out, v, false);
            pinned_true |= kb_forces_value(out, v, true);
        }
        if (pinned_false || pinned_true) {
            // the whole class carries the unit; each member keeps its own
            // selection identity (a doubly pinned class stays contradictory
            // through the original unit constraints)
            std::string unit = ensure_unit(out, !pinned_false);
            for (const std::string& v : members)
                out.kb.constraints.push_back(Constraint{unit, {v}});
            continue;
        }

        std::vector<std::string> hyp_members;
        for (const std::string& v : members)
            if (out.is_hypothesis(v)) hyp_members.push_back(v);

        if (hyp_members.size() <= 1) {
            // substitution case: the class collapses onto its hypothesis
            // member (or the smallest name)
            std::string keep = hyp_members.empty() ? members.front() : hyp_members.front();
            for (const std::string& v : members)
                if (v != keep) substitute_var(out, v, keep);
            continue;
        }

        bool touches_m = false;
        for (const std::string& v : members)
            if (out.is_manifestation(v)) touches_m = true;
        if (touches_m)
            throw std::invalid_argument(
                "equality class with several hypotheses and a manifestation: coverage of such a "
                "class is not expressible without equality in the essentially positive fragment");
        // several hypotheses, no manifestations, no units: the equalities can
        // only make more variables true, which never hurts an essentially
        // positive knowledge base, so they are dropped
    }
    out.finalize();
    return out;
}

AbductionInstance eliminate_equality_ess_negative(const AbductionInstance& inst) {
    AbductionInstance out = inst;
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        std::string root = find(it->second);
        parent[v] = root;
        return root;
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    };

    std::vector<Constraint> kept;
    for (const Constraint& c : out.kb.constraints) {
        ConstraintView v = view_constraint(c, out.language);
        if (is_tautology_view(v)) continue;
        if (is_equality_view(v)) {
            unite(v.distinct[0], v.distinct[1]);
            continue;
        }
        kept.push_back(c);
    }

    // Representative per class: the smallest hypothesis member when there is
    // one, so witnesses on the merged instance are hypotheses of the original.
    std::map<std::string, std::string> rep;
    for (const std::string& v : inst.variables) {
        std::string root = find(v);
        auto it = rep.find(root);
        bool v_hyp = inst.is_hypothesis(v);
        if (it == rep.end()) {
            rep[root] = v;
        } else {
            bool cur_hyp = inst.is_hypothesis(it->second);
            if ((v_hyp && !cur_hyp) || (v_hyp == cur_hyp && v < it->second)) it->second = v;
        }
    }
    auto resolve = [&](const std::string& v) { return rep.at(find(v)); };

    for (Constraint& c : kept)
        for (std::string& a : c.args) a = resolve(a);
    out.kb.constraints = std::move(kept);

    std::vector<std::string> hyp, man;
    for (const std::string& h : out.hypotheses) hyp.push_back(resolve(h));
    for (const std::string& m : out.manifestations) man.push_back(resolve(m));
    out.hypotheses = sorted_unique(std::move(hyp));
    out.manifestations = sorted_unique(std::move(man));
    out.finalize();
    return out;
}

std::string serialize_definition(const PPDefinition& def) {
    std::ostringstream out;
    out << "rel " << def.target.name << ' ' << def.target.arity;
    for (Tuple t : def.target.tuples) out << ' ' << def.target.tuple_string(t);
    out << '\n';
    out << "free";
    for (const std::string& v : def.free_vars) out << ' ' << v;
    out << '\n';
    if (!def.aux_vars.empty()) {
        out << "exists";
        for (const std::string& v : def.aux_vars) out << ' ' << v;
        out << '\n';
    }
    for (const Constraint& c : def.body.constraints) {
        out << "con " << c.relation;
        for (const std::string& a : c.args) out << ' ' << a;
        out << '\n';
    }
    return out.str();
}

PPDefinition parse_definition(const std::string& text, const ConstraintLanguage& lang) {
    PPDefinition def;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "rel") {
            std::string name;
            int arity;
            if (!(ls >> name >> arity)) throw parse_error(lineno, "bad rel line");
            std::vector<std::string> rows;
            std::string row;
            while (ls >> row) rows.push_back(row);
            def.target = Relation::from_strings(name, rows);
            if (def.target.arity != arity) throw parse_error(lineno, "arity mismatch");
        } else if (head == "free" || head == "exists") {
            std::string v;
            auto& target = (head == "free") ? def.free_vars : def.aux_vars;
            while (ls >> v) target.push_back(v);
        } else if (head == "con") {
            Constraint c;
            if (!(ls >> c.relation)) throw parse_error(lineno, "bad con line");
            const Relation* r = lang.find(c.relation);
            if (!r) throw parse_error(lineno, "unknown relation " + c.relation);
            std::string v;
            while (ls >> v) c.args.push_back(v);
            if (static_cast<int>(c.args.size()) != r->arity)
                throw parse_error(lineno, "arity mismatch in con line");
            def.body.constraints.push_back(std::move(c));
        } else {
            throw parse_error(lineno, "unknown directive " + head);
        }
    }
    return def;
}

}  // namespace abdkit
