#include <doctest.h>

#include <random>

#include "abdkit/oracle.hpp"
#include "abdkit/parser.hpp"
#include "abdkit/reductions.hpp"
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

}  // namespace

TEST_CASE("wsat_bruteforce enumerates by weight then lexicographically") {
    WsatInstance w;
    w.variables = {"x", "y"};
    w.clauses = {{1, 2}};
    w.weight = 1;
    auto model = wsat_bruteforce(w);
    REQUIRE(model);
    CHECK(model->at("x"));
    CHECK_FALSE(model->at("y"));

    WsatInstance contradiction;
    contradiction.variables = {"x"};
    contradiction.clauses = {{1}, {-1}};
    contradiction.weight = 1;
    contradiction.mode = WsatInstance::Mode::at_most;
    CHECK_FALSE(wsat_bruteforce(contradiction));

    WsatInstance mono;
    mono.variables = {"a", "b"};
    mono.clauses = {{1, 2}, {2}};
    mono.weight = 1;
    mono.polarity = WsatInstance::Polarity::monotone;
    auto mm = wsat_bruteforce(mono);
    REQUIRE(mm);
    CHECK(mm->at("b"));
    CHECK_FALSE(mm->at("a"));
}

TEST_CASE("wsat file format round-trips") {
    WsatInstance w;
    w.variables = {"h1", "h2", "m"};
    w.clauses = {{1, 3}, {-1, -2}};
    w.weight = 2;
    w.mode = WsatInstance::Mode::exact;
    std::string text = write_wsat(w);
    WsatInstance back = parse_wsat(text);
    CHECK(back.variables == w.variables);
    CHECK(back.clauses == w.clauses);
    CHECK(back.weight == w.weight);
    CHECK(back.mode == w.mode);
}

TEST_CASE("reduce_im_eq_to_wsat spec fixtures") {
    AbductionInstance inst = make_inst(
        {rel_imp("IMP")},
        {Constraint{"IMP", {"a", "m1"}}, Constraint{"IMP", {"b", "m1"}},
         Constraint{"IMP", {"b", "m2"}}},
        {"a", "b"}, {"m1", "m2"}, 1);
    WsatInstance w = reduce_im_eq_to_wsat(inst);
    CHECK(w.weight == 1);
    CHECK(w.mode == WsatInstance::Mode::exact);
    CHECK(w.polarity == WsatInstance::Polarity::monotone);
    CHECK(validate_wsat_metadata(w));
    CHECK(wsat_bruteforce(w).has_value());

    inst.size = 2;
    WsatInstance w2 = reduce_im_eq_to_wsat(inst);
    CHECK(w2.weight == 2);
    CHECK(wsat_bruteforce(w2).has_value());

    // empty manifestation set: a vacuous CNF, weight still s
    AbductionInstance vac = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"a", "b"}}},
                                      {"a", "b"}, {}, 1);
    WsatInstance wv = reduce_im_eq_to_wsat(vac);
    CHECK(wv.clauses.empty());
    CHECK(wv.weight == 1);
    CHECK(wsat_bruteforce(wv).has_value());

    // unexplainable manifestation: trivially false image
    AbductionInstance dead = make_inst({rel_imp("IMP")}, {}, {"a"}, {"m"}, 1);
    CHECK(wsat_is_trivially_false(reduce_im_eq_to_wsat(dead)));
}

TEST_CASE("reduce_is10_eq_to_wsat expands negative clauses over explainers") {
    // negative clause over non-hypothesis variables expands to (~h1 v ~h2)
    AbductionInstance inst = make_inst(
        {rel_imp("IMP"), rel_nand(2, "NAND2")},
        {Constraint{"IMP", {"h1", "u"}}, Constraint{"IMP", {"h2", "v"}},
         Constraint{"NAND2", {"u", "v"}}, Constraint{"IMP", {"h1", "m"}}},
        {"h1", "h2"}, {"m"}, 1);
    WsatInstance w = reduce_is10_eq_to_wsat(inst);
    bool has_expanded = false;
    for (const Clause& c : w.clauses)
        if (c.size() == 2 && !lit_positive(c[0]) && !lit_positive(c[1])) has_expanded = true;
    CHECK(has_expanded);
    CHECK(validate_wsat_metadata(w));

    // clause entirely over hypotheses is kept verbatim
    AbductionInstance verbatim = make_inst(
        {rel_imp("IMP"), rel_nand(2, "NAND2")},
        {Constraint{"NAND2", {"h1", "h2"}}, Constraint{"IMP", {"h1", "m"}}},
        {"h1", "h2"}, {"m"}, 1);
    WsatInstance wv = reduce_is10_eq_to_wsat(verbatim);
    bool has_nand = false;
    for (const Clause& c : wv.clauses)
        if (c.size() == 2 && !lit_positive(c[0]) && !lit_positive(c[1])) has_nand = true;
    CHECK(has_nand);

    // no negative clauses: the image is the pure implication reduction
    AbductionInstance pure = make_inst({rel_imp("IMP")}, {Constraint{"IMP", {"h", "m"}}},
                                       {"h"}, {"m"}, 1);
    CHECK(write_wsat(reduce_is10_eq_to_wsat(pure)) == write_wsat(reduce_im_eq_to_wsat(pure)));
}

TEST_CASE("reduce_iv2_eq_to_wsat discharges what the KB forces") {
    AbductionInstance inst = make_inst(
        {rel_unit_true("T"), rel_imp("IMP")},
        {Constraint{"T", {"x"}}, Constraint{"IMP", {"x", "y"}}, Constraint{"IMP", {"h", "m"}}},
        {"h"}, {"m", "y"}, 1);
    WsatInstance w = reduce_iv2_eq_to_wsat(inst);
    // y is discharged by propagation, so only m needs a cover clause
    CHECK(w.clauses.size() == 1);
    CHECK(w.weight == 1);
    CHECK(wsat_bruteforce(w).has_value() == oracle_abduce(inst, Variant::exact).has_value());
}

TEST_CASE("reduce_essneg_eq_to_wsat weight discipline and fixtures") {
    AbductionInstance inst = make_inst(
        {rel_nand(2, "NAND2"), rel_unit_true("T")},
        {Constraint{"NAND2", {"h1", "h2"}}, Constraint{"T", {"m"}}},
        {"h1", "h2", "m"}, {"m"}, 2);
    WsatInstance w = reduce_essneg_eq_to_wsat(inst);
    CHECK(w.weight == 2 - static_cast<int>(essneg_forced_core(inst).size()));
    CHECK(wsat_bruteforce(w).has_value() == oracle_abduce(inst, Variant::exact).has_value());
    CHECK(validate_wsat_metadata(w));

    // s equal to the forced core: only the empty extension remains
    AbductionInstance tight = make_inst({rel_nand(2, "NAND2")}, {}, {"m"}, {"m"}, 1);
    WsatInstance wt = reduce_essneg_eq_to_wsat(tight);
    CHECK(wt.weight == 0);
    CHECK(wsat_bruteforce(wt).has_value());

    // s = 3 forces both sides of the NAND: unsatisfiable, like the oracle
    AbductionInstance over = make_inst(
        {rel_nand(2, "NAND2"), rel_unit_true("T")},
        {Constraint{"NAND2", {"h1", "h2"}}, Constraint{"T", {"m"}}},
        {"h1", "h2", "m"}, {"m"}, 3);
    WsatInstance wo = reduce_essneg_eq_to_wsat(over);
    CHECK(wsat_bruteforce(wo).has_value() == oracle_abduce(over, Variant::exact).has_value());
    CHECK_FALSE(wsat_bruteforce(wo).has_value());
}

TEST_CASE("reduction images agree with the oracle on random in-region instances") {
    std::mt19937 rng(83);
    struct Row {
        const char* name;
        std::vector<Relation> pool;
        WsatInstance (*run)(const AbductionInstance&);
    };
    std::vector<Row> rows = {
        {"im", ts::pool_im(), reduce_im_eq_to_wsat},
        {"is10", ts::pool_is10(), reduce_is10_eq_to_wsat},
        {"iv2", ts::pool_dualhorn(), reduce_iv2_eq_to_wsat},
        {"essneg", ts::pool_essneg(), reduce_essneg_eq_to_wsat},
    };
    for (const Row& row : rows) {
        for (int i = 0; i < 150; ++i) {
            AbductionInstance inst = ts::random_instance(rng, row.pool);
            WsatInstance w = row.run(inst);
            INFO(row.name, "\n", serialize_instance(inst));
            CHECK(validate_wsat_metadata(w));
            REQUIRE(wsat_bruteforce(w).has_value() ==
                    oracle_abduce(inst, Variant::exact).has_value());
            // weight discipline: k = s on non-degenerate images (the
            // canonical dummy is pinned at weight 0)
            if (!wsat_is_trivially_false(w) &&
                (row.run == reduce_im_eq_to_wsat || row.run == reduce_iv2_eq_to_wsat))
                CHECK(w.weight == *inst.size);
        }
    }
}

TEST_CASE("gen_indset_eq matches brute-force independent set") {
    Graph path = parse_graph("a-b");
    AbductionInstance inst = gen_indset_eq(path, 1);
    CHECK(inst.size == 2);
    auto witness = oracle_abduce(inst, Variant::exact);
    REQUIRE(witness);
    CHECK(witness->size() == 2);

    Graph triangle = parse_graph("a-b,b-c,a-c");
    CHECK_FALSE(oracle_abduce(gen_indset_eq(triangle, 2), Variant::exact));

    Graph edgeless = parse_graph("a,b,c,d");
    auto all = oracle_abduce(gen_indset_eq(edgeless, 4), Variant::exact);
    REQUIRE(all);
    CHECK(all->size() == 5);  // every vertex plus the goal
}

TEST_CASE("gen_vertexcover_le matches brute-force vertex cover") {
    Graph single = parse_graph("a-b");
    CHECK(oracle_abduce(gen_vertexcover_le(single, 1), Variant::at_most).has_value());

    Graph triangle = parse_graph("a-b,b-c,a-c");
    CHECK_FALSE(oracle_abduce(gen_vertexcover_le(triangle, 1), Variant::at_most).has_value());
    CHECK(oracle_abduce(gen_vertexcover_le(triangle, 2), Variant::at_most).has_value());

    Graph empty = parse_graph("a,b");
    auto witness = oracle_abduce(gen_vertexcover_le(empty, 0), Variant::at_most);
    REQUIRE(witness);
    CHECK(witness->empty());
}

TEST_CASE("generators agree with the checkers across small graphs") {
    // exhaustive over all graphs on up to 4 vertices, every parameter value
    for (int n = 1; n <= 4; ++n) {
        for (std::uint32_t mask = 0; mask < (1u << ts::pair_count(n)); ++mask) {
            Graph g = ts::graph_from_mask(n, mask);
            for (int k = 0; k <= n; ++k) {
                CHECK(oracle_abduce(gen_indset_eq(g, k), Variant::exact).has_value() ==
                      ts::has_independent_set(g, k));
                CHECK(oracle_abduce(gen_vertexcover_le(g, k), Variant::at_most).has_value() ==
                      ts::has_vertex_cover_le(g, k));
            }
        }
    }
}

TEST_CASE("graph parsing validates tokens") {
    Graph g = parse_graph("a-b, b-c,d");
    CHECK(g.vertices == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(g.edges.size() == 2);
    CHECK_THROWS_AS(parse_graph("a-a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph("a-"), std::invalid_argument);
}
