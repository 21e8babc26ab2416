#include <doctest.h>

#include <random>

#include "abdkit/oracle.hpp"
#include "abdkit/parser.hpp"
#include "abdkit/schaefer.hpp"
#include "support/test_support.hpp"

using namespace abdkit;
namespace ts = abdkit::testsupport;

namespace {

AbductionInstance make_inst(std::vector<Relation> rels, std::vector<Constraint> cons,
                            std::vector<std::string> extra_vars = {}) {
    AbductionInstance inst;
    for (Relation& r : rels) inst.language.add(std::move(r));
    inst.kb.constraints = std::move(cons);
    inst.hypotheses = std::move(extra_vars);
    inst.finalize();
    return inst;
}

}  // namespace

TEST_CASE("to_clause_form expands prime implicates per kind") {
    AbductionInstance imp = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "y"}}});
    for (FormKind kind : {FormKind::horn, FormKind::dual_horn, FormKind::krom}) {
        ClauseForm cf = to_clause_form(imp.language, imp.kb, kind, imp.variables);
        REQUIRE(cf.clauses.size() == 1);
        CHECK(cf.clauses[0] == Clause{-1, 2});  // ~x v y over sorted vars {x, y}
        CHECK(cf.kind_ok());
    }

    AbductionInstance nand = make_inst({rel_nand(2, "NAND2")}, {Constraint{"NAND2", {"x", "y"}}});
    ClauseForm nf = to_clause_form(nand.language, nand.kb, FormKind::horn, nand.variables);
    REQUIRE(nf.clauses.size() == 1);
    CHECK(nf.clauses[0] == Clause{-1, -2});

    AbductionInstance even = make_inst({rel_even4("EVEN4")},
                                       {Constraint{"EVEN4", {"a", "b", "c", "d"}}});
    ClauseForm af = to_clause_form(even.language, even.kb, FormKind::affine, even.variables);
    // one parity constraint over four variables, even parity
    bool found = false;
    for (const AffineEq& eq : af.equations)
        if (eq.vars == std::vector<int>{0, 1, 2, 3} && eq.rhs == false) found = true;
    CHECK(found);

    // a dualHorn-only relation cannot be forced into horn form
    AbductionInstance orimp = make_inst({rel_or_imp("ORIMP")},
                                        {Constraint{"ORIMP", {"x", "y", "z"}}});
    CHECK_THROWS_AS(to_clause_form(orimp.language, orimp.kb, FormKind::horn, orimp.variables),
                    std::logic_error);
}

TEST_CASE("sat_poly canonical models per kind") {
    // horn: unit propagation conflict
    AbductionInstance horn = make_inst(
        {rel_unit_true("T"), rel_unit_false("F"), rel_imp("IMP")},
        {Constraint{"T", {"x"}}, Constraint{"IMP", {"x", "y"}}, Constraint{"F", {"y"}}});
    CHECK_FALSE(sat_poly(to_clause_form(horn.language, horn.kb, FormKind::horn, horn.variables)));

    // horn minimal model: defaults to 0
    AbductionInstance horn2 = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "y"}}});
    auto m2 = sat_poly(to_clause_form(horn2.language, horn2.kb, FormKind::horn, horn2.variables));
    REQUIRE(m2);
    CHECK_FALSE(m2->at("x"));
    CHECK_FALSE(m2->at("y"));

    // krom: (x v y) & (~x v y) & (x v ~y) forces x = y = 1
    AbductionInstance krom = make_inst(
        {rel_or(2, "OR2"), rel_imp("IMP")},
        {Constraint{"OR2", {"x", "y"}}, Constraint{"IMP", {"x", "y"}}, Constraint{"IMP", {"y", "x"}}});
    auto km = sat_poly(to_clause_form(krom.language, krom.kb, FormKind::krom, krom.variables));
    REQUIRE(km);
    CHECK(km->at("x"));
    CHECK(km->at("y"));

    // affine: x + y = 1, y = 1 gives x = 0
    AbductionInstance aff = make_inst({rel_neq("NEQ"), rel_unit_true("T")},
                                      {Constraint{"NEQ", {"x", "y"}}, Constraint{"T", {"y"}}});
    auto am = sat_poly(to_clause_form(aff.language, aff.kb, FormKind::affine, aff.variables));
    REQUIRE(am);
    CHECK_FALSE(am->at("x"));
    CHECK(am->at("y"));

    // dual_horn: defaults to 1
    AbductionInstance dh = make_inst({rel_or(2, "OR2")}, {Constraint{"OR2", {"x", "y"}}});
    auto dm = sat_poly(to_clause_form(dh.language, dh.kb, FormKind::dual_horn, dh.variables));
    REQUIRE(dm);
    CHECK(dm->at("x"));
    CHECK(dm->at("y"));
}

TEST_CASE("implies_poly matches the entailment definition") {
    AbductionInstance horn = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "y"}}});
    ClauseForm cf = to_clause_form(horn.language, horn.kb, FormKind::horn, horn.variables);
    CHECK(implies_poly(cf, {"x"}, {"y"}));
    CHECK_FALSE(implies_poly(cf, {}, {"y"}));
    CHECK(implies_poly(cf, {}, {}));  // vacuous

    AbductionInstance aff = make_inst({rel_neq("NEQ")}, {Constraint{"NEQ", {"x", "y"}}});
    ClauseForm acf = to_clause_form(aff.language, aff.kb, FormKind::affine, aff.variables);
    CHECK_FALSE(implies_poly(acf, {"x"}, {"y"}));  // y is forced to 0
}

TEST_CASE("with_units preserves the declared kind") {
    for (FormKind kind : {FormKind::horn, FormKind::dual_horn, FormKind::krom}) {
        AbductionInstance imp = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"x", "y"}}});
        ClauseForm cf = to_clause_form(imp.language, imp.kb, kind, imp.variables);
        ClauseForm with = with_units(cf, {"x"}, {"y"});
        CHECK(with.kind_ok());
        CHECK(with.clauses.size() == cf.clauses.size() + 2);
    }
}

TEST_CASE("polynomial solvers agree with brute force per kind") {
    std::mt19937 rng(41);
    struct Row {
        std::vector<Relation> pool;
        FormKind kind;
    };
    std::vector<Row> rows = {
        {ts::pool_horn(), FormKind::horn},
        {ts::pool_dualhorn(), FormKind::dual_horn},
        {ts::pool_krom(), FormKind::krom},
        {ts::pool_affine(), FormKind::affine},
    };
    for (const Row& row : rows) {
        for (int i = 0; i < 1000; ++i) {
            AbductionInstance inst =
                ts::random_instance(rng, row.pool, {.max_vars = 9, .max_constraints = 7});
            ClauseForm cf = to_clause_form(inst.language, inst.kb, row.kind, inst.variables);
            bool poly = sat_poly(cf).has_value();
            bool brute = sat_bruteforce(inst.language, inst.kb, inst.variables).has_value();
            INFO(to_string(row.kind), "\n", serialize_instance(inst));
            REQUIRE(poly == brute);

            // entailment agreement on the instance's own H and M
            bool poly_entails = implies_poly(cf, inst.hypotheses, inst.manifestations);
            bool brute_entails = entails_bruteforce(inst.language, inst.kb, inst.hypotheses,
                                                    inst.manifestations, inst.variables);
            REQUIRE(poly_entails == brute_entails);
        }
    }
}
