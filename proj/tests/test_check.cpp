#include "lazylet/bench.hpp"
#include "lazylet/check.hpp"
#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"

#include <doctest.h>

using namespace lazylet;

TEST_CASE("generateContexts: grammar family counts match the enumeration") {
    auto fam = reductionFamily();
    // five wraps, counts are sums of powers
    CHECK(generateContexts(fam, 0, 0).size() == 1);
    CHECK(generateContexts(fam, 0, 1).size() == 1 + 5);
    CHECK(generateContexts(fam, 0, 2).size() == 1 + 5 + 25);
    CHECK(generateContexts(fam, 0, 3).size() == 1 + 5 + 25 + 125);
}

TEST_CASE("generateContexts: single-wrap holes sit at reduction positions") {
    auto fam = reductionFamily();
    for (const auto& tmpl : generateContexts(fam, 0, 1)) {
        ExprPtr filled = fillHole(tmpl, parseExpr("\\x -> x"));
        CHECK(isClosed(filled));
        if (tmpl.name != "[]") {
            CAPTURE(tmpl.name);
            CHECK(classifyContext(filled, tmpl.holePath) == ContextClass::Reduction);
        }
    }
}

TEST_CASE("generateContexts: list driver contains the call-list shape") {
    auto fam = listDriverFamily();
    auto templates = generateContexts(fam, 3, 0);
    const ContextTemplate* calls = nullptr;
    for (const auto& t : templates)
        if (t.name == "calls-and-last") calls = &t;
    REQUIRE(calls != nullptr);
    // z is bound to a three-element list of (y Zero) calls consumed by
    // the boolean folder and by last
    ExprPtr z;
    for (const auto& b : calls->body->binds)
        if (nameText(b.var) == "z") z = b.rhs;
    REQUIRE(z);
    int cells = 0;
    ExprPtr cur = z;
    while (cur->tag == Tag::Con && nameText(cur->name) == "Cons") {
        ExprPtr elt = cur->kids[0];
        CHECK(elt->tag == Tag::App);
        CHECK(nameText(elt->kids[0]->name) == "y");
        ++cells;
        cur = cur->kids[1];
    }
    CHECK(cells == 3);
    // filling with a closed abstraction closes the program
    ExprPtr filled = fillHole(*calls, parseExpr("\\q -> True"));
    CHECK(isClosed(filled));
    EvalResult r = evaluate(filled, 100000);
    CHECK(r.status == EvalStatus::Whnf);
}

TEST_CASE("checkPair: variable copies are space-equivalent") {
    ExprPtr e = parseExpr(
        "letrec y = Cons True Nil, x = y in seq x (case x of { Nil -> True ; Cons a b "
        "-> a })");
    auto insts = listRedexes(e, Rule::CpxIn);
    REQUIRE_FALSE(insts.empty());
    ExprPtr after = applyRule(e, insts[0]);
    CheckParams params;
    params.depth = 2;
    params.fuel = 100000;
    Verdict v = checkPair(e, after, reductionFamily(), params, "cpx");
    CHECK(v.classification == Classification::EquivalenceConsistent);
    CHECK(v.maxDelta == 0);
    CHECK(v.minDelta == 0);
    CHECK(v.violations == 0);
    CHECK(v.sizeEqualEverywhere);
}

TEST_CASE("checkPair: deltas are antisymmetric") {
    ExprPtr s = parseExpr("(\\x -> x) True");
    ExprPtr t = parseExpr("letrec x = True in x");
    CheckParams params;
    params.depth = 2;
    params.fuel = 100000;
    Verdict st = checkPair(s, t, reductionFamily(), params, "fwd");
    Verdict ts = checkPair(t, s, reductionFamily(), params, "bwd");
    CHECK(st.contextsTested == ts.contextsTested);
    CHECK(st.maxDelta == -ts.minDelta);
    CHECK(st.minDelta == -ts.maxDelta);
}

TEST_CASE("checkPair: the empty context is always included") {
    ExprPtr s = parseExpr("seq True (Cons False Nil)");
    ExprPtr t = parseExpr("Cons False Nil");
    CheckParams params;
    params.depth = 0;
    params.fuel = 1000;
    Verdict v = checkPair(s, t, reductionFamily(), params, "seq-c");
    CHECK(v.contextsTested == 1);
    CHECK(v.maxDelta < 0); // the seq node and the discarded value are gone
}

TEST_CASE("checkCpBound: surface copy obeys the size(v) bound") {
    ExprPtr e = parseExpr("letrec f = \\u -> u in seq (f True) (f False)");
    auto insts = listRedexes(e, Rule::CpS);
    REQUIRE_FALSE(insts.empty());
    CpBoundReport rep = checkCpBound(e, insts[0], 10000);
    CHECK(rep.converged);
    CHECK(rep.isSurfaceInstance);
    CHECK(rep.generalBoundHolds);
    CHECK(rep.surfaceBoundHolds);
    CHECK(rep.sizeV == 1);
}

TEST_CASE("growth fit feeds the leak classification") {
    InstancePair pr = corpus::cseLeakPair();
    CheckParams params;
    params.ns = {4, 8, 12};
    params.fuel = 200000;
    Verdict v = checkPairs({pr}, listDriverFamily(), params, "cse");
    CHECK(v.classification == Classification::LeakEvidence);
    REQUIRE(v.maxDeltaByN.size() == 3);
    CHECK(v.maxDeltaByN[0].second < v.maxDeltaByN[1].second);
    CHECK(v.maxDeltaByN[1].second < v.maxDeltaByN[2].second);
}

TEST_CASE("verdict rendering") {
    Verdict v;
    v.rule = "(demo)";
    v.maxDelta = 2;
    v.minDelta = 0;
    v.growth = {Growth::Constant, 2};
    v.classification = Classification::SafeUpTo;
    v.safeBound = 2;
    v.contextsTested = 7;
    std::string line = verdictTsv(v);
    CHECK(line.find("(demo)") == 0);
    CHECK(line.find("safe-up-to(2)") != std::string::npos);
}
