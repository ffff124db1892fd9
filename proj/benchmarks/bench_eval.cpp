#include "lazylet/bench.hpp"
#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"

#include <benchmark/benchmark.h>

using namespace lazylet;

static void BM_ParsePrintFold(benchmark::State& state) {
    ExprPtr fold = parseExpr(corpus::foldText());
    for (auto _ : state) {
        benchmark::DoNotOptimize(parseExpr(print(fold)));
    }
}
BENCHMARK(BM_ParsePrintFold);

static void BM_EvaluateFold(benchmark::State& state) {
    std::uint64_t k = static_cast<std::uint64_t>(state.range(0));
    ExprPtr prog = corpus::foldProgram(corpus::FoldVariant::Foldl, false, k);
    SizeOptions opts;
    opts.peanoAsUnit = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(prog, 10'000'000, opts));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(k));
}
BENCHMARK(BM_EvaluateFold)->Arg(50)->Arg(100)->Arg(200);

static void BM_EvaluateFoldStrict(benchmark::State& state) {
    std::uint64_t k = static_cast<std::uint64_t>(state.range(0));
    ExprPtr prog = corpus::foldProgram(corpus::FoldVariant::FoldlStrict, false, k);
    SizeOptions opts;
    opts.peanoAsUnit = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(prog, 10'000'000, opts));
    }
}
BENCHMARK(BM_EvaluateFoldStrict)->Arg(100)->Arg(200);

static void BM_CheckPairGrammarFamily(benchmark::State& state) {
    ExprPtr e = parseExpr("letrec x = True, y = x in seq y x");
    auto insts = listRedexes(e, Rule::Xch);
    ExprPtr after = applyRule(e, insts[0]);
    CheckParams params;
    params.depth = static_cast<std::uint64_t>(state.range(0));
    params.fuel = 100000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            checkPair(e, after, reductionFamily(), params, "xch"));
    }
}
BENCHMARK(BM_CheckPairGrammarFamily)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
