#include <doctest.h>

#include <random>

#include "abdkit/engine.hpp"
#include "abdkit/oracle.hpp"
#include "abdkit/parser.hpp"
#include "support/test_support.hpp"

using namespace abdkit;
namespace ts = abdkit::testsupport;

TEST_CASE("auto dispatch picks the specialized solver for the region") {
    // essentially negative at-most instances go to the forced-core solver
    AbductionInstance essneg;
    essneg.language.add(rel_nand(2, "NAND2"));
    essneg.language.add(rel_unit_true("T"));
    essneg.kb.constraints = {Constraint{"NAND2", {"h1", "h2"}}, Constraint{"T", {"m"}}};
    essneg.hypotheses = {"h1", "h2"};
    essneg.manifestations = {"m"};
    essneg.size = 1;
    essneg.finalize();
    SolveResult r = solve(essneg, Variant::at_most);
    CHECK(r.engine == "solve_ess_negative_le");
    CHECK(r.yes);

    AbductionInstance id1;
    id1.language.add(rel_eq("EQ"));
    id1.kb.constraints = {Constraint{"EQ", {"a", "m"}}};
    id1.hypotheses = {"a"};
    id1.manifestations = {"m"};
    id1.finalize();
    CHECK(solve(id1, Variant::plain).engine == "solve_2affine");

    AbductionInstance train = ts::train_example();
    train.size = 1;
    SolveResult tr = solve(train, Variant::exact);
    CHECK(tr.yes);
    CHECK(tr.witness == Explanation{"doorOpen"});
    CHECK((tr.engine == "solve_by_size_enumeration" || tr.engine == "solve_by_H_enumeration"));
    CHECK(tr.verdict.label == classify(train.language, Variant::exact, Param::H).label);
}

TEST_CASE("named engines check their preconditions") {
    AbductionInstance train = ts::train_example();
    train.size = 1;
    CHECK_THROWS_AS(solve(train, Variant::exact, "solve_ess_positive"), std::invalid_argument);
    CHECK_THROWS_AS(solve(train, Variant::exact, "solve_definite_horn_plain"),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve(train, Variant::exact, "no_such_engine"), std::invalid_argument);
    SolveResult oracle_run = solve(train, Variant::exact, "oracle");
    CHECK(oracle_run.yes);
    CHECK(oracle_run.engine == "oracle");
}

TEST_CASE("auto dispatch agrees with the oracle across mixed regions") {
    std::mt19937 rng(151);
    std::vector<std::vector<Relation>> pools = {
        ts::pool_horn(), ts::pool_dualhorn(), ts::pool_krom(),   ts::pool_id1(),
        ts::pool_essneg(), ts::pool_esspos(), ts::pool_affine(), ts::pool_is10(),
        {rel_one_in_three(), rel_imp(), rel_unit_true()},  // outside Schaefer: oracle route
    };
    for (const auto& pool : pools) {
        for (int i = 0; i < 40; ++i) {
            AbductionInstance inst = ts::random_instance(rng, pool);
            for (Variant variant : {Variant::plain, Variant::at_most, Variant::exact}) {
                SolveResult r = solve(inst, variant);
                INFO(r.engine, "\n", serialize_instance(inst));
                CHECK(r.yes == oracle_abduce(inst, variant).has_value());
            }
        }
    }
}

TEST_CASE("verify reports agreement and flags corrupted engines") {
    AbductionInstance train = ts::train_example();
    train.size = 1;
    VerifyReport report = verify(train, Variant::exact);
    CHECK(report.entries.size() >= 2);
    CHECK(report.agree());
    CHECK(report.summary().find("all engines agree") != std::string::npos);

    // harness self-test: a deliberately corrupted entry must be flagged
    VerifyReport corrupted = report;
    corrupted.add(VerifyEntry{"broken_engine", !report.entries.front().yes, true});
    CHECK_FALSE(corrupted.agree());
    CHECK(corrupted.summary().find("DISAGREEMENT") != std::string::npos);

    VerifyReport invalid_witness = report;
    invalid_witness.add(VerifyEntry{"lying_engine", report.entries.front().yes, false});
    CHECK_FALSE(invalid_witness.agree());
}

TEST_CASE("verify agrees across engines on random regional batches") {
    std::mt19937 rng(157);
    for (const auto& pool : {ts::pool_esspos(), ts::pool_essneg(), ts::pool_id1()}) {
        for (int i = 0; i < 40; ++i) {
            AbductionInstance inst = ts::random_instance(rng, pool);
            for (Variant variant : {Variant::at_most, Variant::exact}) {
                VerifyReport report = verify(inst, variant);
                INFO(serialize_instance(inst), " variant ", to_string(variant), "\n",
                     report.summary());
                CHECK(report.agree());
            }
        }
    }
}

TEST_CASE("the oracle respects its work cap") {
    AbductionInstance big;
    big.language.add(rel_imp("IMP"));
    for (int i = 0; i < 26; ++i) {
        std::string v = "v" + std::to_string(i);
        big.hypotheses.push_back(v);
        if (i) big.kb.constraints.push_back(Constraint{"IMP", {"v" + std::to_string(i - 1), v}});
    }
    big.finalize();
    CHECK_THROWS_AS(oracle_abduce(big, Variant::plain), oracle_limit_error);
}
