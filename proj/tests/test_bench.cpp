#include "lazylet/bench.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace lazylet;

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("fold corpus: shipped data file matches the built-in text") {
    ExprPtr shipped = parseExpr(readFile(std::string(LAZYLET_DATA_DIR) + "/fold.let"));
    ExprPtr builtin = parseExpr(corpus::foldText());
    CHECK(alphaEqual(shipped, builtin));
}

TEST_CASE("consumers corpus: shipped data file matches the built-in text") {
    ExprPtr shipped =
        parseExpr(readFile(std::string(LAZYLET_DATA_DIR) + "/consumers.let"));
    ExprPtr builtin = parseExpr(corpus::consumersText());
    CHECK(alphaEqual(shipped, builtin));
}

TEST_CASE("foldExperiment: small lengths converge and scale") {
    BenchRow a = foldExperiment(corpus::FoldVariant::Foldl, false, 5);
    BenchRow b = foldExperiment(corpus::FoldVariant::Foldl, false, 10);
    CHECK(a.status == EvalStatus::Whnf);
    CHECK(b.status == EvalStatus::Whnf);
    CHECK(a.rln < b.rln);
    CHECK(a.spmax < b.spmax);

    BenchRow c = foldExperiment(corpus::FoldVariant::FoldlStrict, false, 5);
    BenchRow d = foldExperiment(corpus::FoldVariant::FoldlStrict, false, 10);
    CHECK(c.spmax == d.spmax); // strict accumulator runs in constant space
}

TEST_CASE("foldExperiment: inlining lowers the step count") {
    BenchRow plain = foldExperiment(corpus::FoldVariant::Foldr, false, 10);
    BenchRow inlined = foldExperiment(corpus::FoldVariant::Foldr, true, 10);
    CHECK(inlined.rln < plain.rln);
}

TEST_CASE("cseDemo: sharing trades constant space for linear space") {
    CseDemoRow a = cseDemo(6);
    CseDemoRow b = cseDemo(12);
    CHECK(a.spmaxBefore == b.spmaxBefore);
    CHECK(b.spmaxAfter > a.spmaxAfter);
}

TEST_CASE("appendAssoc: runs on small lengths") {
    AppendRow r = appendAssoc(2);
    CHECK(r.deltaSeqDominator == 0);
    CHECK(r.deltaLastContext >= 0);
}

TEST_CASE("bench row rendering") {
    BenchRow r;
    r.variant = "foldl";
    r.inlined = false;
    r.k = 100;
    r.rln = 10;
    r.spmax = 20;
    CHECK(benchRowTsv(r) == "foldl\tfalse\t100\t10\t20");
}
