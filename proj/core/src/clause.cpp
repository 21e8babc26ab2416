#include "abdkit/clause.hpp"

#include <algorithm>
#include <stdexcept>

namespace abdkit {

std::optional<Clause> normalize_clause(Clause c) {
    std::sort(c.begin(), c.end(), [](int a, int b) {
        return lit_var(a) != lit_var(b) ? lit_var(a) < lit_var(b) : a < b;
    });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i)
        if (lit_var(c[i]) == lit_var(c[i - 1])) return std::nullopt;
    return c;
}

ClauseShape clause_shape(const Clause& c) {
    if (c.empty()) return ClauseShape::falsum;
    int pos = 0, neg = 0;
    for (int lit : c) (lit_positive(lit) ? pos : neg)++;
    if (c.size() == 1) return pos ? ClauseShape::pos_unit : ClauseShape::neg_unit;
    if (pos == 1 && neg == 1) return ClauseShape::implication;
    if (neg == 0) return ClauseShape::positive;
    if (pos == 0) return ClauseShape::negative;
    if (pos == 1) return ClauseShape::definite;
    if (neg == 1) return ClauseShape::dual_definite;
    return ClauseShape::general;
}

namespace {

// A candidate clause as sign masks over positions.
struct MaskClause {
    Tuple pos = 0;
    Tuple neg = 0;
};

bool tuple_satisfies(Tuple t, const MaskClause& c) {
    return (t & c.pos) != 0 || (~t & c.neg) != 0;
}

bool subclause(const MaskClause& a, const MaskClause& b) {
    return (a.pos & ~b.pos) == 0 && (a.neg & ~b.neg) == 0;
}

}  // namespace

std::vector<Clause> prime_implicates(const Relation& r) {
    if (r.is_empty()) return {Clause{}};

    std::vector<MaskClause> implicates;
    const Tuple all = (Tuple{1} << r.arity) - 1;
    // Enumerate sign patterns; for each support set, each position is
    // positive, negative, or absent.
    std::vector<Tuple> supports;
    for (Tuple s = 1; s <= all; ++s) supports.push_back(s);
    std::sort(supports.begin(), supports.end(), [](Tuple a, Tuple b) {
        int wa = 0, wb = 0;
        for (Tuple m = a; m; m &= m - 1) ++wa;
        for (Tuple m = b; m; m &= m - 1) ++wb;
        return wa != wb ? wa < wb : a < b;
    });

    for (Tuple support : supports) {
        // iterate over subsets of support as the positive part
        Tuple sub = support;
        while (true) {
            MaskClause c{sub, support & ~sub};
            bool implicate = true;
            for (Tuple t : r.tuples)
                if (!tuple_satisfies(t, c)) {
                    implicate = false;
                    break;
                }
            if (implicate) {
                bool minimal = true;
                for (const MaskClause& kept : implicates)
                    if (subclause(kept, c)) {
                        minimal = false;
                        break;
                    }
                if (minimal) implicates.push_back(c);
            }
            if (sub == 0) break;
            sub = (sub - 1) & support;
        }
    }

    std::vector<Clause> out;
    out.reserve(implicates.size());
    for (const MaskClause& c : implicates) {
        Clause cl;
        for (int i = 0; i < r.arity; ++i) {
            if (tuple_bit(c.pos, i)) cl.push_back(make_lit(i, true));
            if (tuple_bit(c.neg, i)) cl.push_back(make_lit(i, false));
        }
        out.push_back(std::move(cl));
    }
    std::sort(out.begin(), out.end(), [](const Clause& a, const Clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::optional<std::vector<AffineEq>> relation_affine_system(const Relation& r) {
    if (r.is_empty()) return std::nullopt;
    const int n = r.arity;
    // Solve for all (a, b) with a . t = b for every tuple t: null space of the
    // tuple matrix augmented with an all-ones column, over GF(2).
    std::vector<std::uint64_t> rows;  // bits 0..n-1: tuple, bit n: 1-column
    for (Tuple t : r.tuples) rows.push_back(std::uint64_t{t} | (std::uint64_t{1} << n));

    // Gaussian elimination to reduced row echelon form over columns 0..n.
    int cols = n + 1;
    std::vector<std::uint64_t> basis;  // pivot rows
    std::vector<int> pivot_col;
    for (std::uint64_t row : rows) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((row >> pivot_col[i]) & 1) row ^= basis[i];
        if (row == 0) continue;
        int pc = 0;
        while (!((row >> pc) & 1)) ++pc;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((basis[i] >> pc) & 1) basis[i] ^= row;
        basis.push_back(row);
        pivot_col.push_back(pc);
    }

    // Null-space basis: free columns parameterize solutions.
    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_col) is_pivot[pc] = true;
    std::vector<AffineEq> eqs;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::uint64_t sol = std::uint64_t{1} << free;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((basis[i] >> free) & 1) sol |= std::uint64_t{1} << pivot_col[i];
        AffineEq eq;
        for (int j = 0; j < n; ++j)
            if ((sol >> j) & 1) eq.vars.push_back(j);
        eq.rhs = (sol >> n) & 1;
        if (!eq.vars.empty() || eq.rhs) eqs.push_back(std::move(eq));
    }

    // The relation is affine iff it equals the solution set of the system.
    std::size_t solutions = 0;
    for (Tuple t = 0; t < (Tuple{1} << n); ++t) {
        bool ok = true;
        for (const AffineEq& eq : eqs) {
            bool v = eq.rhs;
            for (int j : eq.vars) v ^= tuple_bit(t, j);
            if (v) {
                ok = false;
                break;
            }
        }
        if (ok) ++solutions;
    }
    if (solutions != r.tuples.size()) return std::nullopt;
    return eqs;
}

RelationShape relation_shape(const Relation& r) {
    RelationShape shape;
    if (r.is_empty()) {
        shape.unsatisfiable = true;
        return shape;
    }
    std::vector<Clause> pis = prime_implicates(r);

    // Converse implication pairs express forced equalities; they belong to
    // every co-clone and are excluded from the family tests.
    auto is_equality_pair = [&](const Clause& c) {
        if (clause_shape(c) != ClauseShape::implication) return false;
        Clause rev;
        for (int lit : c) rev.push_back(-lit);
        auto norm = normalize_clause(rev);
        return norm && std::find(pis.begin(), pis.end(), *norm) != pis.end();
    };

    bool any_pos_unit = false, any_neg_unit = false, any_lone_impl = false;
    bool any_pos_wide = false, any_neg_wide = false, any_other = false;
    for (const Clause& c : pis) {
        switch (clause_shape(c)) {
            case ClauseShape::pos_unit: any_pos_unit = true; break;
            case ClauseShape::neg_unit: any_neg_unit = true; break;
            case ClauseShape::implication:
                if (!is_equality_pair(c)) any_lone_impl = true;
                break;
            case ClauseShape::positive:
                any_pos_wide = true;
                shape.max_pos_width = std::max(shape.max_pos_width, static_cast<int>(c.size()));
                break;
            case ClauseShape::negative:
                any_neg_wide = true;
                shape.max_neg_width = std::max(shape.max_neg_width, static_cast<int>(c.size()));
                break;
            default: any_other = true; break;
        }
    }
    if (any_neg_unit) shape.max_neg_width = std::max(shape.max_neg_width, 1);
    if (any_pos_unit) shape.max_pos_width = std::max(shape.max_pos_width, 1);

    shape.trivial = !any_pos_unit && !any_neg_unit && !any_lone_impl && !any_pos_wide &&
                    !any_neg_wide && !any_other;
    shape.only_neg_and_eq = !any_other && !any_lone_impl && !any_pos_unit && !any_pos_wide;
    shape.essneg_shape = !any_other && !any_lone_impl && !any_pos_wide;
    shape.esspos_shape = !any_other && !any_lone_impl && !any_neg_wide;
    shape.only_pos_and_eq = !any_other && !any_lone_impl && !any_neg_unit && !any_neg_wide;
    shape.is10_shape = !any_other && !any_pos_wide;
    shape.is00_shape = !any_other && !any_neg_wide;
    shape.implications_only = !any_other && !any_pos_unit && !any_neg_unit && !any_pos_wide &&
                              !any_neg_wide;
    return shape;
}

}  // namespace abdkit
