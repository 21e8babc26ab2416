#include <doctest.h>

#include <random>

#include <functional>

#include "abdkit/lattice.hpp"
#include "abdkit/oracle.hpp"
#include "abdkit/schaefer.hpp"
#include "abdkit/parser.hpp"
#include "abdkit/solvers.hpp"
#include "support/test_support.hpp"

using namespace abdkit;
namespace ts = abdkit::testsupport;

namespace {

AbductionInstance make_inst(std::vector<Relation> rels, std::vector<Constraint> cons,
                            std::vector<std::string> hyps, std::vector<std::string> mans,
                            std::optional<int> size = std::nullopt) {
    AbductionInstance inst;
    for (Relation& r : rels) inst.language.add(std::move(r));
    inst.kb.constraints = std::move(cons);
    inst.hypotheses = std::move(hyps);
    inst.manifestations = std::move(mans);
    inst.size = size;
    inst.finalize();
    return inst;
}

bool witness_valid(const AbductionInstance& inst, const Explanation& e) {
    ModelTable table(inst.language, inst.kb, inst.variables);
    ModelTable restricted = table.restrict_true(e);
    if (!restricted.any()) return false;
    for (const std::string& m : inst.manifestations)
        if (!restricted.all_true(m)) return false;
    for (const std::string& h : e)
        if (!inst.is_hypothesis(h)) return false;
    return true;
}

}  // namespace

TEST_CASE("abd_to_le sets the bound to |H|") {
    AbductionInstance train = ts::train_example();
    AbductionInstance bridged = abd_to_le(train);
    CHECK(bridged.size == 3);
    CHECK(oracle_abduce(train, Variant::plain).has_value() ==
          oracle_abduce(bridged, Variant::at_most).has_value());

    AbductionInstance empty = make_inst({rel_imp("IMP")}, {}, {}, {});
    CHECK(abd_to_le(empty).size == 0);
}

TEST_CASE("extend_solution_monotone grows witnesses one hypothesis at a time") {
    AbductionInstance inst = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "m"}}},
                                       {"x", "z"}, {"m"});
    auto grown = extend_solution_monotone(inst, {"x"}, 2);
    REQUIRE(grown);
    CHECK(*grown == Explanation{"x", "z"});
    CHECK(witness_valid(inst, *grown));

    CHECK(extend_solution_monotone(inst, {"x"}, 1) == Explanation{"x"});  // identity

    AbductionInstance blocked =
        make_inst({rel_imp("IMP"), rel_unit_false("F")},
                  {Constraint{"IMP", {"x", "m"}}, Constraint{"F", {"z"}}}, {"x", "z"}, {"m"});
    CHECK(extend_solution_monotone(blocked, {"x"}, 2) == std::nullopt);
}

TEST_CASE("solve_ess_positive spec fixtures") {
    // a positive unit explains m1; m2 must come from H
    AbductionInstance inst = make_inst({rel_unit_true("T")}, {Constraint{"T", {"m1"}}},
                                       {"m2"}, {"m1", "m2"}, 1);
    CHECK(solve_ess_positive(inst, Variant::at_most) == Explanation{"m2"});

    // a forced-false manifestation kills every candidate
    AbductionInstance neg = make_inst({rel_unit_false("F")}, {Constraint{"F", {"m"}}},
                                      {"h"}, {"m"}, 1);
    CHECK(solve_ess_positive(neg, Variant::at_most) == std::nullopt);

    // exact sizing beyond the surviving hypotheses fails
    AbductionInstance small = make_inst({rel_or(2, "OR2")}, {Constraint{"OR2", {"a", "b"}}},
                                        {"h"}, {}, 2);
    CHECK(solve_ess_positive(small, Variant::exact) == std::nullopt);

    CHECK_THROWS_AS(solve_ess_positive(inst, Variant::plain), std::invalid_argument);
    AbductionInstance horny = make_inst({rel_nand(2, "NAND2")}, {}, {}, {}, 0);
    CHECK_THROWS_AS(solve_ess_positive(horny, Variant::exact), std::invalid_argument);
}

TEST_CASE("solve_ess_negative_le spec fixtures and minimality") {
    AbductionInstance inst = make_inst(
        {rel_nand(2, "NAND2"), rel_unit_true("T")},
        {Constraint{"NAND2", {"h1", "h2"}}, Constraint{"T", {"m1"}}}, {"h1", "m2"},
        {"m1", "m2"}, 1);
    CHECK(solve_ess_negative_le(inst) == Explanation{"m2"});

    AbductionInstance inconsistent = make_inst(
        {rel_nand(2, "NAND2"), rel_unit_false("F")},
        {Constraint{"F", {"m"}}}, {"h"}, {"m"}, 1);
    CHECK(solve_ess_negative_le(inconsistent) == std::nullopt);

    AbductionInstance tight = make_inst({rel_nand(2, "NAND2")}, {}, {"m1", "m2"},
                                        {"m1", "m2"}, 1);
    CHECK(solve_ess_negative_le(tight) == std::nullopt);  // |E_MP| = 2 > s

    // E_MP is cardinality-minimal: the oracle finds nothing smaller
    std::mt19937 rng(59);
    for (int i = 0; i < 200; ++i) {
        AbductionInstance random_inst = ts::random_instance(rng, ts::pool_essneg());
        AbductionInstance merged = eliminate_equality_ess_negative(random_inst);
        merged.size = static_cast<int>(merged.hypotheses.size());
        auto witness = solve_ess_negative_le(merged);
        if (!witness) continue;
        auto sizes = ts::oracle_achievable_sizes(merged);
        REQUIRE_FALSE(sizes.empty());
        CHECK(*sizes.begin() == static_cast<int>(witness->size()));
    }
}

TEST_CASE("solve_definite_horn_plain forward chains and minimises") {
    AbductionInstance inst = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "m"}}},
                                       {"x"}, {"m"});
    CHECK(solve_definite_horn_plain(inst) == Explanation{"x"});

    AbductionInstance needs_both = make_inst({rel_and_imp("ANDIMP"), rel_unit_true("T")},
                                             {Constraint{"ANDIMP", {"a", "b", "m"}}},
                                             {"a"}, {"m"});
    CHECK(solve_definite_horn_plain(needs_both) == std::nullopt);

    AbductionInstance no_m = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "y"}}},
                                       {"x"}, {});
    CHECK(solve_definite_horn_plain(no_m) == Explanation{});
}

TEST_CASE("H and size enumeration fixtures") {
    AbductionInstance train = ts::train_example();
    train.size = 1;
    CHECK(solve_by_H_enumeration(train, Variant::exact) == Explanation{"doorOpen"});
    CHECK(solve_by_size_enumeration(train, Variant::exact) == Explanation{"doorOpen"});

    AbductionInstance affine = make_inst({rel_xor(2, false, "XNOR")},
                                         {Constraint{"XNOR", {"x", "m"}}}, {"x"}, {"m"});
    CHECK(solve_by_H_enumeration(affine, Variant::plain) == Explanation{"x"});

    AbductionInstance no_h = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"a", "b"}}},
                                       {}, {"m"});
    CHECK(solve_by_H_enumeration(no_h, Variant::plain) == std::nullopt);

    AbductionInstance zero = make_inst({rel_imp("IMP")}, {}, {"h"}, {}, 0);
    CHECK(solve_by_size_enumeration(zero, Variant::exact) == Explanation{});
    CHECK_THROWS_AS(solve_by_size_enumeration(zero, Variant::plain), std::invalid_argument);

    AbductionInstance hard = make_inst({rel_one_in_three("R")}, {}, {}, {});
    CHECK_THROWS_AS(solve_by_H_enumeration(hard, Variant::plain), std::invalid_argument);
}

TEST_CASE("explainer_sets reachability") {
    ImplicationGraph g;
    g.vars = {"a", "b", "m1", "m2"};
    auto idx = [&](const std::string& v) { return g.var_index(v); };
    g.edges = {{idx("a"), idx("m1")}, {idx("b"), idx("m1")}, {idx("b"), idx("m2")}};
    ExplainerSets sets = explainer_sets(g, {"a", "b"}, {"m1", "m2"});
    CHECK(sets.per_manifestation.at("m1") == std::vector<std::string>{"a", "b"});
    CHECK(sets.per_manifestation.at("m2") == std::vector<std::string>{"b"});

    // a manifestation that is itself a hypothesis explains itself
    ExplainerSets self = explainer_sets(g, {"m1"}, {"m1"});
    CHECK(self.per_manifestation.at("m1") == std::vector<std::string>{"m1"});

    ImplicationGraph empty;
    ExplainerSets none = explainer_sets(empty, {"m"}, {"m", "x"});
    CHECK(none.per_manifestation.at("m") == std::vector<std::string>{"m"});
    CHECK(none.per_manifestation.at("x").empty());
}

TEST_CASE("preprocess_dualhorn eliminates units and hidden variables") {
    // units propagate away
    AbductionInstance units = make_inst(
        {rel_unit_true("T"), rel_imp("IMP")},
        {Constraint{"T", {"x"}}, Constraint{"IMP", {"x", "y"}}}, {}, {});
    ClauseForm cf = to_clause_form(units.language, units.kb, FormKind::dual_horn, units.variables);
    DualHornPreprocess pre = preprocess_dualhorn(cf, {}, {});
    CHECK_FALSE(pre.unsat);
    CHECK(pre.forced.at("x"));
    CHECK(pre.forced.at("y"));
    CHECK(pre.graph.edges.empty());

    // resolution bridges over a hidden variable
    AbductionInstance hidden = make_inst(
        {rel_imp("IMP")}, {Constraint{"IMP", {"u", "m"}}, Constraint{"IMP", {"h", "u"}}},
        {"h"}, {"m"});
    ClauseForm hcf =
        to_clause_form(hidden.language, hidden.kb, FormKind::dual_horn, hidden.variables);
    DualHornPreprocess hpre = preprocess_dualhorn(hcf, {"h"}, {"m"});
    bool has_hm = false;
    for (auto [a, b] : hpre.graph.edges)
        if (hpre.graph.vars[a] == "h" && hpre.graph.vars[b] == "m") has_hm = true;
    CHECK(has_hm);

    // a purely positive clause contributes no implication
    AbductionInstance pos = make_inst({rel_or(2, "OR2")}, {Constraint{"OR2", {"a", "b"}}},
                                      {"a", "b"}, {});
    ClauseForm pcf = to_clause_form(pos.language, pos.kb, FormKind::dual_horn, pos.variables);
    CHECK(preprocess_dualhorn(pcf, {"a", "b"}, {}).graph.edges.empty());
}

TEST_CASE("solve_M_setcover covers manifestations with few hypotheses") {
    AbductionInstance inst = make_inst(
        {rel_imp("IMP")},
        {Constraint{"IMP", {"a", "m1"}}, Constraint{"IMP", {"b", "m1"}},
         Constraint{"IMP", {"b", "m2"}}},
        {"a", "b"}, {"m1", "m2"}, 1);
    CHECK(solve_M_setcover(inst, Variant::at_most) == Explanation{"b"});

    inst.size = 0;
    CHECK(solve_M_setcover(inst, Variant::at_most) == std::nullopt);

    // |M| <= s: one explainer per manifestation suffices
    inst.size = 2;
    auto witness = solve_M_setcover(inst, Variant::at_most);
    REQUIRE(witness);
    CHECK(witness_valid(inst, *witness));

    CHECK_THROWS_AS(solve_M_setcover(inst, Variant::exact), std::invalid_argument);
}

TEST_CASE("solve_2affine fixtures and the size interval") {
    AbductionInstance chain = make_inst({rel_eq("EQ")},
                                        {Constraint{"EQ", {"a", "b"}}, Constraint{"EQ", {"b", "m"}}},
                                        {"a"}, {"m"}, 1);
    CHECK(solve_2affine(chain, Variant::exact) == Explanation{"a"});
    chain.size = 2;
    CHECK(solve_2affine(chain, Variant::exact) == std::nullopt);

    AbductionInstance chain2 = make_inst({rel_eq("EQ")},
                                         {Constraint{"EQ", {"a", "b"}}, Constraint{"EQ", {"b", "m"}}},
                                         {"a", "b"}, {"m"}, 2);
    CHECK(solve_2affine(chain2, Variant::exact) == Explanation{"a", "b"});

    // a manifestation class without hypotheses has no explanation
    AbductionInstance uncovered = make_inst({rel_neq("NEQ")}, {Constraint{"NEQ", {"m", "x"}}},
                                            {"x"}, {"m"}, 1);
    CHECK(solve_2affine(uncovered, Variant::plain) == std::nullopt);
    CHECK(solve_2affine(uncovered, Variant::at_most) == std::nullopt);
    CHECK(solve_2affine(uncovered, Variant::exact) == std::nullopt);
}

TEST_CASE("the 2-affine achievable sizes form exactly [e_min, e_max]") {
    std::mt19937 rng(61);
    for (int i = 0; i < 150; ++i) {
        AbductionInstance inst = ts::random_instance(rng, ts::pool_id1());
        TwoAffineAnalysis analysis = analyze_2affine(inst);
        auto sizes = ts::oracle_achievable_sizes(inst);
        INFO(serialize_instance(inst));
        if (!analysis.feasible()) {
            CHECK(sizes.empty());
            continue;
        }
        REQUIRE_FALSE(sizes.empty());
        CHECK(*sizes.begin() == analysis.e_min);
        CHECK(*sizes.rbegin() == analysis.e_max);
        CHECK(static_cast<int>(sizes.size()) == analysis.e_max - analysis.e_min + 1);
    }
}

TEST_CASE("on one-valid dualHorn languages the at-most and exact answers coincide") {
    std::mt19937 rng(67);
    for (int i = 0; i < 120; ++i) {
        AbductionInstance inst =
            ts::random_instance(rng, ts::pool_onevalid_dualhorn(), {.with_size = false});
        for (int s = 0; s <= static_cast<int>(inst.hypotheses.size()); ++s) {
            inst.size = s;
            INFO(serialize_instance(inst));
            bool le = oracle_abduce(inst, Variant::at_most).has_value();
            bool eq = oracle_abduce(inst, Variant::exact).has_value();
            REQUIRE(le == eq);
            // the two solver paths agree as well
            bool le_solver = solve_M_setcover(inst, Variant::at_most).has_value();
            bool eq_solver = solve_by_H_enumeration(inst, Variant::exact).has_value();
            REQUIRE(le_solver == le);
            REQUIRE(eq_solver == eq);
        }
    }
}

TEST_CASE("specialized solvers agree with the oracle on their regions") {
    std::mt19937 rng(71);
    struct Row {
        const char* name;
        std::vector<Relation> pool;
        std::function<std::optional<Explanation>(const AbductionInstance&, Variant)> run;
        std::vector<Variant> variants;
    };
    std::vector<Row> rows = {
        {"ess_positive", ts::pool_esspos(),
         [](const AbductionInstance& i, Variant v) { return solve_ess_positive(i, v); },
         {Variant::at_most, Variant::exact}},
        {"ess_negative_le", ts::pool_essneg(),
         [](const AbductionInstance& i, Variant) {
             AbductionInstance merged = eliminate_equality_ess_negative(i);
             merged.size = i.size;
             return solve_ess_negative_le(merged);
         },
         {Variant::at_most}},
        {"2affine", ts::pool_id1(),
         [](const AbductionInstance& i, Variant v) { return solve_2affine(i, v); },
         {Variant::plain, Variant::at_most, Variant::exact}},
        {"definite_horn", ts::pool_ie1(),
         [](const AbductionInstance& i, Variant) { return solve_definite_horn_plain(i); },
         {Variant::plain}},
        {"h_enum_horn", ts::pool_horn(),
         [](const AbductionInstance& i, Variant v) { return solve_by_H_enumeration(i, v); },
         {Variant::plain, Variant::at_most, Variant::exact}},
        {"h_enum_affine", ts::pool_affine(),
         [](const AbductionInstance& i, Variant v) { return solve_by_H_enumeration(i, v); },
         {Variant::plain, Variant::at_most, Variant::exact}},
        {"size_enum_krom", ts::pool_krom(),
         [](const AbductionInstance& i, Variant v) { return solve_by_size_enumeration(i, v); },
         {Variant::at_most, Variant::exact}},
        {"setcover_iv2", ts::pool_dualhorn(),
         [](const AbductionInstance& i, Variant v) { return solve_M_setcover(i, v); },
         {Variant::at_most}},
        {"setcover_im", ts::pool_im(),
         [](const AbductionInstance& i, Variant v) { return solve_M_setcover(i, v); },
         {Variant::at_most}},
    };
    for (const Row& row : rows) {
        for (int i = 0; i < 200; ++i) {
            AbductionInstance inst = ts::random_instance(rng, row.pool);
            for (Variant variant : row.variants) {
                auto witness = row.run(inst, variant);
                auto expected = oracle_abduce(inst, variant);
                INFO(row.name, " ", to_string(variant), "\n", serialize_instance(inst));
                REQUIRE(witness.has_value() == expected.has_value());
                if (witness) CHECK(witness_valid(inst, *witness));
                if (witness && variant == Variant::exact)
                    CHECK(static_cast<int>(witness->size()) == inst.size);
                if (witness && variant == Variant::at_most)
                    CHECK(static_cast<int>(witness->size()) <= inst.size);
            }
        }
    }
}
