#include <benchmark/benchmark.h>

#include <random>

#include "abdkit/clause.hpp"
#include "abdkit/engine.hpp"
#include "abdkit/oracle.hpp"
#include "abdkit/solvers.hpp"
#include "abdkit/wsat.hpp"

using namespace abdkit;

namespace {

AbductionInstance horn_chain(int n) {
    AbductionInstance inst;
    inst.language.add(rel_imp("IMP"));
    inst.language.add(rel_and_imp("ANDIMP"));
    for (int i = 0; i + 1 < n; ++i) {
        std::string a = "v" + std::to_string(i), b = "v" + std::to_string(i + 1);
        inst.kb.constraints.push_back(Constraint{"IMP", {a, b}});
    }
    for (int i = 0; i < n; i += 3)
        inst.hypotheses.push_back("v" + std::to_string(i));
    inst.manifestations = {"v" + std::to_string(n - 1)};
    inst.finalize();
    return inst;
}

AbductionInstance affine_clusters(int n) {
    AbductionInstance inst;
    inst.language.add(rel_eq("EQ"));
    inst.language.add(rel_neq("NEQ"));
    for (int i = 0; i + 1 < n; i += 2) {
        std::string a = "v" + std::to_string(i), b = "v" + std::to_string(i + 1);
        inst.kb.constraints.push_back(Constraint{i % 4 ? "EQ" : "NEQ", {a, b}});
        inst.hypotheses.push_back(a);
    }
    inst.manifestations = {"v0"};
    inst.size = 2;
    inst.finalize();
    return inst;
}

void BM_OracleAbduce(benchmark::State& state) {
    AbductionInstance inst = horn_chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_abduce(inst, Variant::plain));
}
BENCHMARK(BM_OracleAbduce)->Arg(9)->Arg(12)->Arg(15);

void BM_HEnumeration(benchmark::State& state) {
    AbductionInstance inst = horn_chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_by_H_enumeration(inst, Variant::plain));
}
BENCHMARK(BM_HEnumeration)->Arg(9)->Arg(15)->Arg(21);

void BM_TwoAffine(benchmark::State& state) {
    AbductionInstance inst = affine_clusters(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_2affine(inst, Variant::exact));
}
BENCHMARK(BM_TwoAffine)->Arg(16)->Arg(64)->Arg(128);

void BM_PrimeImplicates(benchmark::State& state) {
    Relation r = rel_nand(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(prime_implicates(r));
}
BENCHMARK(BM_PrimeImplicates)->Arg(3)->Arg(5)->Arg(7);

void BM_WsatBruteforce(benchmark::State& state) {
    WsatInstance w;
    const int n = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) w.variables.push_back("x" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) w.clauses.push_back({-(i + 1), -(i + 2)});
    w.weight = n / 2;
    w.mode = WsatInstance::Mode::at_most;
    for (auto _ : state) benchmark::DoNotOptimize(wsat_bruteforce(w));
}
BENCHMARK(BM_WsatBruteforce)->Arg(12)->Arg(18);

}  // namespace

BENCHMARK_MAIN();
