#pragma once

#include "lazylet/check.hpp"
#include "lazylet/corpus.hpp"

namespace lazylet {

struct BenchRow {
    std::string variant;
    bool inlined = false;
    std::uint64_t k = 0;
    EvalStatus status = EvalStatus::Whnf;
    std::uint64_t rln = 0;
    std::uint64_t spmax = 0;
};

// variant TAB inlined TAB k TAB rln TAB spmax
std::string benchRowTsv(const BenchRow& r);

// <fold variant> xor False (take k lst), measured with unit-sized numerals
BenchRow foldExperiment(corpus::FoldVariant v, bool inlined, std::uint64_t k,
                        std::uint64_t fuel = 10'000'000);
std::vector<BenchRow> foldTable(const std::vector<std::uint64_t>& ks,
                                std::uint64_t fuel = 10'000'000);

struct CseDemoRow {
    std::uint64_t n = 0;
    std::uint64_t spmaxBefore = 0;
    std::uint64_t spmaxAfter = 0;
};
CseDemoRow cseDemo(std::uint64_t n, std::uint64_t fuel = 10'000'000);

struct AppendRow {
    std::uint64_t n = 0;
    std::int64_t deltaLastContext = 0;     // left-associated minus right-associated
    std::int64_t deltaSeqDominator = 0;    // same programs under a dominating tail
};
AppendRow appendAssoc(std::uint64_t n, std::uint64_t fuel = 10'000'000);

} // namespace lazylet
