#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"
#include "lazylet/reduce.hpp"

#include "testgen.hpp"

#include <doctest.h>

using namespace lazylet;

namespace {

EvalResult run(const std::string& text, std::uint64_t fuel = 100000) {
    return evaluate(parseExpr(text), fuel);
}

} // namespace

TEST_CASE("label: beta redex at the application") {
    Labeling lab = label(parseExpr("(\\x -> x) True"));
    REQUIRE(lab.outcome == LabelOutcome::Redex);
    CHECK(lab.rule == Rule::Lbeta);
    CHECK(lab.focusPath == Path::parse("0"));
}

TEST_CASE("label: abstraction demanded through the body chain") {
    Labeling lab = label(parseExpr("letrec x = \\y -> y in x"));
    REQUIRE(lab.outcome == LabelOutcome::Redex);
    CHECK(lab.rule == Rule::CpIn);
    REQUIRE(lab.chain.size() == 1);
    CHECK(nameText(lab.chain[0].first) == "x");
    CHECK(lab.targetPath == Path::parse("1")); // the body occurrence
    CHECK(lab.focusPath == Path::parse("0"));  // the binding holding the value
}

TEST_CASE("label: cyclic demand is a blackhole") {
    CHECK(label(parseExpr("letrec x = x in x")).outcome == LabelOutcome::Blackhole);
    CHECK(label(parseExpr("letrec x = y, y = x in x")).outcome ==
          LabelOutcome::Blackhole);
    CHECK(label(parseExpr("letrec x = seq x True in x")).outcome ==
          LabelOutcome::Blackhole);
}

TEST_CASE("label: open terms are reported distinctly") {
    CHECK_THROWS_AS(label(parseExpr("free oops")), OpenTermError);
    CHECK_THROWS_AS(label(parseExpr("letrec x = y in x")), OpenTermError);
}

TEST_CASE("gcMax: removes exactly the unreachable bindings of the top letrec") {
    GcResult g = gcMax(parseExpr("letrec x = True, y = Nil in x"));
    CHECK(g.changed);
    CHECK(g.rule == Rule::Gc1);
    CHECK(alphaEqual(g.expr, parseExpr("letrec x = True in x")));

    GcResult g2 = gcMax(parseExpr("letrec x = True in Nil"));
    CHECK(g2.changed);
    CHECK(g2.rule == Rule::Gc2);
    CHECK(alphaEqual(g2.expr, parseExpr("Nil")));

    GcResult g3 = gcMax(parseExpr("letrec x = Cons y Nil, y = True in x"));
    CHECK_FALSE(g3.changed);

    // only the top letrec is considered
    GcResult g4 = gcMax(parseExpr("seq (letrec x = True in Nil) False"));
    CHECK_FALSE(g4.changed);
}

TEST_CASE("step: gc takes priority over reduction") {
    NameSupply ns;
    StepOutcome s = step(parseExpr("letrec x = True in \\y -> y"), ns);
    REQUIRE(s.next.has_value());
    CHECK(s.next->rule == Rule::Gc2);
    CHECK(alphaEqual(s.next->expr, parseExpr("\\y -> y")));
}

TEST_CASE("step: basic rules") {
    NameSupply ns;
    StepOutcome s1 = step(parseExpr("(\\x -> x) True"), ns);
    REQUIRE(s1.next.has_value());
    CHECK(s1.next->rule == Rule::Lbeta);
    CHECK(alphaEqual(s1.next->expr, parseExpr("letrec x = True in x")));

    StepOutcome s2 = step(parseExpr("seq True Nil"), ns);
    REQUIRE(s2.next.has_value());
    CHECK(s2.next->rule == Rule::SeqC);
    CHECK(alphaEqual(s2.next->expr, parseExpr("Nil")));
}

TEST_CASE("isWHNF: the three shapes") {
    CHECK(isWHNF(parseExpr("\\x -> x")));
    CHECK(isWHNF(parseExpr("Cons True Nil")));
    CHECK(isWHNF(parseExpr("letrec x = True in \\y -> y")));
    CHECK(isWHNF(parseExpr("letrec x = Cons y z, y = True, z = Nil in x")));
    // a chained abstraction still needs a copy step
    CHECK_FALSE(isWHNF(parseExpr("letrec x = \\y -> y in x")));
    CHECK_FALSE(isWHNF(parseExpr("letrec x = x in x")));
    CHECK_FALSE(isWHNF(parseExpr("(\\x -> x) True")));
}

TEST_CASE("isLRPgcWHNF: additionally gc-irreducible") {
    CHECK(isLRPgcWHNF(parseExpr("\\x -> x")));
    CHECK_FALSE(isLRPgcWHNF(parseExpr("letrec x = True, y = Nil in x")));
    CHECK(isLRPgcWHNF(parseExpr("letrec x = Cons y Nil, y = True in x")));
}

TEST_CASE("evaluate: identity application, hand-traced measures") {
    EvalResult r = run("(\\x -> x) True");
    CHECK(r.status == EvalStatus::Whnf);
    CHECK(r.measures.rln == 1);
    CHECK(r.measures.rlnall == 1);
    CHECK(r.measures.rlnLCSC == 1);
    REQUIRE(r.measures.spmax.has_value());
    CHECK(*r.measures.spmax == 3);
    CHECK(alphaEqual(r.final, parseExpr("letrec x = True in x")));
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].rule == Rule::Lbeta);
    CHECK(r.steps[0].sizeBefore == 3);
    CHECK(formatSummary(r) == "WHNF\t1\t1\t1\t3");
}

TEST_CASE("evaluate: blackhole reports unbounded space") {
    EvalResult r = run("letrec x = x in x");
    CHECK(r.status == EvalStatus::Blackhole);
    CHECK_FALSE(r.measures.spmax.has_value());
    CHECK(formatSummary(r) == "Blackhole\t0\t0\t0\tinf");
}

TEST_CASE("evaluate: fuel exhaustion reports lower bounds") {
    // an unbounded producer forced by an unbounded consumer
    EvalResult r = run(
        "letrec ones = Cons True ones, "
        "force = \\l -> case l of { Nil -> True ; Cons b bs -> force bs } "
        "in force ones",
        200);
    CHECK(r.status == EvalStatus::FuelExhausted);
    CHECK(r.measures.rln > 0);
}

TEST_CASE("evaluate: whnf stability") {
    NameSupply ns;
    for (const char* text : {"\\x -> x", "letrec x = Cons y Nil, y = True in x", "True"}) {
        ExprPtr e = parseExpr(text);
        StepOutcome s = step(e, ns);
        CHECK_FALSE(s.next.has_value());
        CHECK(s.doneStatus == EvalStatus::Whnf);
        CHECK(isLRPgcWHNF(e));
    }
}

TEST_CASE("evaluate: deterministic traces") {
    for (const auto& [name, prog] : corpus::convergingPrograms()) {
        CAPTURE(name);
        EvalResult a = evaluate(prog, 100000);
        EvalResult b = evaluate(prog, 100000);
        REQUIRE(a.steps.size() == b.steps.size());
        for (std::size_t i = 0; i < a.steps.size(); ++i) {
            CHECK(a.steps[i].rule == b.steps[i].rule);
            CHECK(a.steps[i].sizeBefore == b.steps[i].sizeBefore);
        }
        CHECK(alphaEqual(a.final, b.final));
    }
}

TEST_CASE("evaluate: measure invariants on corpus and random terms") {
    auto checkInvariants = [](const ExprPtr& e, const std::string& name) {
        CAPTURE(name);
        EvalResult r;
        try {
            r = evaluate(e, 2000);
        } catch (const EvalError&) {
            return; // stuck or open: nothing to check
        }
        CHECK(r.measures.rln <= r.measures.rlnLCSC);
        CHECK(r.measures.rlnLCSC <= r.measures.rlnall);
        if (r.status == EvalStatus::Whnf) {
            REQUIRE(r.measures.spmax.has_value());
            CHECK(*r.measures.spmax >= size(r.final));
            CHECK(isLRPgcWHNF(r.final));
        }
        // alpha invariance of every measure
        EvalResult rf;
        try {
            rf = evaluate(freshen(e), 2000);
        } catch (const EvalError&) {
            return;
        }
        CHECK(rf.status == r.status);
        CHECK(rf.measures.rln == r.measures.rln);
        CHECK(rf.measures.rlnall == r.measures.rlnall);
        CHECK(rf.measures.rlnLCSC == r.measures.rlnLCSC);
        CHECK(rf.measures.spmax == r.measures.spmax);
    };
    for (const auto& [name, prog] : corpus::convergingPrograms())
        checkInvariants(prog, name);
    testgen::Gen gen(42);
    for (int i = 0; i < 300; ++i)
        checkInvariants(gen.closedTerm(4), "random-" + std::to_string(i));
}

TEST_CASE("evaluate: collectible junk does not change spmax") {
    testgen::Gen gen(99);
    int checked = 0;
    for (int i = 0; i < 120 && checked < 40; ++i) {
        ExprPtr e = gen.closedTerm(4);
        EvalResult base;
        try {
            base = evaluate(e, 2000);
        } catch (const EvalError&) {
            continue;
        }
        if (base.status != EvalStatus::Whnf) continue;
        ExprPtr junk = parseExpr("Cons True (Cons False Nil)");
        ExprPtr wrapped;
        if (e->tag == Tag::Letrec) {
            std::vector<Binding> binds = e->binds;
            binds.push_back({intern("junkbinding"), junk});
            wrapped = mkLetrec(std::move(binds), e->body);
        } else {
            wrapped = mkLetrec({{intern("junkbinding"), junk}}, e);
        }
        EvalResult r = evaluate(wrapped, 4000);
        REQUIRE(r.status == EvalStatus::Whnf);
        CHECK(r.measures.spmax == base.measures.spmax);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("trace format lines") {
    CHECK(formatTraceLine(3, {Rule::CaseIn, 17}) == "3\tcase-in\t17");
}

TEST_CASE("rule names round trip") {
    for (const char* token :
         {"lbeta", "cp-in", "cp-e", "llet-in", "llet-e", "lapp", "lcase", "lseq",
          "seq-c", "seq-in", "seq-e", "case-c", "case-in", "case-e", "gc1", "gc2",
          "cpx-in", "cpx-e", "cpcx-in", "cpcx-e", "abs", "abse", "xch", "ucp1", "ucp2",
          "ucp3", "case-cx", "caseStar", "gcEq", "caseId", "cse", "cpS", "cpcxT",
          "seqInsert", "psi"}) {
        auto r = ruleFromName(token);
        REQUIRE_MESSAGE(r.has_value(), token);
        CHECK(std::string(ruleName(*r)) == token);
    }
    CHECK_FALSE(ruleFromName("nope").has_value());
}
