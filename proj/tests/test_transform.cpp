#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"
#include "lazylet/transform.hpp"

#include "testgen.hpp"

#include <doctest.h>

using namespace lazylet;

namespace {

RuleInstance only(const ExprPtr& e, Rule r) {
    auto insts = listRedexes(e, r);
    REQUIRE_MESSAGE(insts.size() == 1, ruleName(r));
    return insts[0];
}

const std::initializer_list<Rule> kSizePreserving = {
    Rule::Lapp,  Rule::Lcase,  Rule::Lseq, Rule::LletIn, Rule::LletE,
    Rule::Xch,   Rule::CpxIn,  Rule::CpxE, Rule::GcEq,   Rule::Abs,
    Rule::Abse,  Rule::Ucp1,   Rule::Ucp2, Rule::Ucp3};

} // namespace

TEST_CASE("classifyContext: the four classes") {
    ExprPtr lam = parseExpr("\\x -> seq x True");
    CHECK(classifyContext(lam, Path::parse("0.1")) == ContextClass::General);

    ExprPtr cs = parseExpr("case True of { True -> False ; False -> True }");
    CHECK(classifyContext(cs, Path::parse("1")) == ContextClass::Surface);

    ExprPtr app = parseExpr("(\\x -> x) True");
    CHECK(classifyContext(app, Path::parse("0")) == ContextClass::Reduction);
    // the argument of the application is not demanded yet
    CHECK(classifyContext(app, Path::parse("1")) == ContextClass::Top);

    CHECK_THROWS(classifyContext(app, Path::parse("7")));
}

TEST_CASE("classifyContext: demanded chain positions count as reduction") {
    ExprPtr e = parseExpr("letrec x = Cons True Nil in seq x False");
    // the binding rhs is demanded through the chain from the seq
    CHECK(classifyContext(e, Path::parse("0")) == ContextClass::Reduction);
    CHECK(classifyContext(e, Path::parse("1.0")) == ContextClass::Reduction);
}

TEST_CASE("listRedexes: documented instances") {
    // a variable-copy instance sits at the occurrence inside the binding
    ExprPtr e1 = parseExpr("letrec x = y, z = Cons x Nil in z");
    auto cpx = listRedexes(e1, Rule::CpxE);
    REQUIRE(cpx.size() == 1);
    CHECK(cpx[0].position == Path::parse("1.0"));

    CHECK(listRedexes(parseExpr("seq True (Cons False Nil)"), Rule::Lbeta).empty());

    ExprPtr e2 = parseExpr("case s of { True -> True ; False -> False }");
    auto ids = listRedexes(e2, Rule::CaseId);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].position == Path{});
}

TEST_CASE("applyRule: ucp3 inlines the unique surface occurrence") {
    ExprPtr e = parseExpr("letrec x = True in seq x Nil");
    ExprPtr r = applyRule(e, only(e, Rule::Ucp3));
    CHECK(alphaEqual(r, parseExpr("seq True Nil")));
}

TEST_CASE("applyRule: cse merges equal bindings") {
    ExprPtr e = parseExpr(
        "letrec x = Cons True Nil, y = Cons True Nil in Cons x (Cons y Nil)");
    ExprPtr r = applyRule(e, only(e, Rule::Cse));
    CHECK(alphaEqual(
        r, parseExpr("letrec x = Cons True Nil in Cons x (Cons x Nil)")));
}

TEST_CASE("applyRule: xch swaps the binding and the indirection") {
    ExprPtr e = parseExpr("letrec x = True, y = x in y");
    ExprPtr r = applyRule(e, only(e, Rule::Xch));
    CHECK(alphaEqual(r, parseExpr("letrec x = y, y = True in y")));
}

TEST_CASE("applyRule: gcEq drops a dead indirection") {
    ExprPtr e = parseExpr("letrec x = y, y = True in Cons y y");
    ExprPtr r = applyRule(e, only(e, Rule::GcEq));
    CHECK(alphaEqual(r, parseExpr("letrec y = True in Cons y y")));
}

TEST_CASE("applyRule: caseId returns the scrutinee") {
    ExprPtr e = parseExpr("case seq True False of { True -> True ; False -> False }");
    ExprPtr r = applyRule(e, only(e, Rule::CaseId));
    CHECK(alphaEqual(r, parseExpr("seq True False")));
}

TEST_CASE("applyRule: rejects stale instances") {
    ExprPtr e = parseExpr("letrec x = True in seq x Nil");
    RuleInstance inst = only(e, Rule::Ucp3);
    ExprPtr other = parseExpr("letrec x = True, q = x in seq q (seq x Nil)");
    CHECK_THROWS_AS(applyRule(other, inst), TransformError);
}

TEST_CASE("applyRule: context restrictions of the restricted copies") {
    // inside an abstraction the target context degrades to general
    ExprPtr e = parseExpr("letrec f = \\u -> u in \\w -> f w");
    auto general = listRedexes(e, Rule::CpE);
    bool anyGeneral = false;
    for (const auto& i : general)
        anyGeneral = anyGeneral || i.contextClass == ContextClass::General;
    CHECK_FALSE(anyGeneral); // the occurrence is in the body, not a binding
    auto cpIn = listRedexes(e, Rule::CpIn);
    REQUIRE(cpIn.size() == 1);
    CHECK(cpIn[0].contextClass == ContextClass::General);
    CHECK(listRedexes(e, Rule::CpS).empty());

    ExprPtr top = parseExpr("letrec f = \\u -> u in f True");
    CHECK_FALSE(listRedexes(top, Rule::CpS).empty());
}

TEST_CASE("seqInsert: adds one unit and requires scope") {
    ExprPtr e = parseExpr("letrec w = True in Cons w Nil");
    ExprPtr r = seqInsert(e, Path::parse("1"), intern("w"));
    CHECK(alphaEqual(r, parseExpr("letrec w = True in seq w (Cons w Nil)")));
    CHECK(size(r) == size(e) + 1);
    CHECK_THROWS_AS(seqInsert(e, Path::parse("1"), intern("nosuch")), TransformError);
}

TEST_CASE("psi: applications get variable arguments") {
    ExprPtr r = psiTranslate(parseExpr("(\\x -> x) True"));
    CHECK(alphaEqual(r, parseExpr("letrec y = True in (\\x -> x) y")));
    CHECK(alphaEqual(psiTranslate(parseExpr("v")), parseExpr("v")));
    // variable arguments stay in place
    CHECK(alphaEqual(psiTranslate(parseExpr("letrec f = \\x -> x, a = True in f a")),
                     parseExpr("letrec f = \\x -> x, a = True in f a")));
}

TEST_CASE("psi: constructor arguments are shared") {
    ExprPtr r = psiTranslate(
        parseExpr("letrec f = \\x -> x in Cons (f True) Nil"));
    ExprPtr expect = parseExpr(
        "letrec f = \\x -> x in letrec y1 = letrec y2 = True in f y2, y3 = Nil in "
        "Cons y1 y3");
    CHECK(alphaEqual(r, expect));
}

TEST_CASE("psi: idempotent up to renaming") {
    testgen::Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        ExprPtr e = gen.closedTerm(4);
        ExprPtr once = psiTranslate(e);
        ExprPtr twice = psiTranslate(once);
        CHECK(alphaEqual(once, twice));
    }
}

TEST_CASE("size laws per rule") {
    for (const auto& [name, prog] : corpus::convergingPrograms()) {
        CAPTURE(name);
        for (Rule r : kSizePreserving) {
            for (const auto& inst : listRedexes(prog, r)) {
                ExprPtr after = applyRule(prog, inst);
                CHECK_MESSAGE(size(after) == size(prog), ruleName(r));
            }
        }
        for (Rule r : {Rule::Gc1, Rule::Gc2}) {
            for (const auto& inst : listRedexes(prog, r)) {
                ExprPtr after = applyRule(prog, inst);
                CHECK(size(after) <= size(prog));
            }
        }
        for (const auto& inst : listRedexes(prog, Rule::CpcxIn)) {
            ExprPtr after = applyRule(prog, inst);
            CHECK(size(after) == size(prog) + 1);
        }
    }
}

TEST_CASE("instances re-match after renaming") {
    for (const auto& [name, prog] : corpus::convergingPrograms()) {
        CAPTURE(name);
        ExprPtr fresh = freshen(prog);
        for (Rule r : {Rule::Lbeta, Rule::CaseC, Rule::CaseIn, Rule::SeqC, Rule::CpIn,
                       Rule::CpE, Rule::CpxIn, Rule::CpxE, Rule::Ucp1, Rule::Ucp3,
                       Rule::Xch, Rule::Cse, Rule::Gc1, Rule::Gc2, Rule::CaseId}) {
            auto a = listRedexes(prog, r);
            auto b = listRedexes(fresh, r);
            REQUIRE_MESSAGE(a.size() == b.size(), ruleName(r));
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i].position == b[i].position);
        }
    }
}

TEST_CASE("inline: specializes a direct call site") {
    ExprPtr e = parseExpr(R"(
letrec
  xor = \x y -> case x of { True -> case y of { True -> False ; False -> True } ; False -> y },
  go = \z xs -> case xs of { Nil -> z ; Cons y ys -> go (xor z y) ys }
in go False (Cons True Nil)
)");
    // the applied occurrence of xor inside go's second alternative
    auto insts = listRedexes(e, Rule::CpE);
    const RuleInstance* target = nullptr;
    for (const auto& i : insts) {
        ExprPtr occ = subtermAt(e, i.position);
        if (occ->tag == Tag::Var && nameText(occ->name) == "xor") target = &i;
    }
    REQUIRE(target != nullptr);
    NameSupply ns;
    ns.reserveAllNames(e);
    ExprPtr inlined = inlineBinding(e, intern("xor"), target->position, ns);
    ExprPtr expect = parseExpr(R"(
letrec
  xor = \x y -> case x of { True -> case y of { True -> False ; False -> True } ; False -> y },
  go = \z xs -> case xs of { Nil -> z ; Cons y ys -> go (case z of { True -> case y of { True -> False ; False -> True } ; False -> y }) ys }
in go False (Cons True Nil)
)");
    CHECK(alphaEqual(inlined, expect));
}

TEST_CASE("inline: requires an applied occurrence of a bound abstraction") {
    ExprPtr e = parseExpr("letrec f = \\u -> u in Cons f Nil");
    // the occurrence is a constructor argument, not applied
    Path occ = Path::parse("1.0");
    NameSupply ns;
    ns.reserveAllNames(e);
    CHECK_THROWS_AS(inlineBinding(e, intern("f"), occ, ns), TransformError);
}

TEST_CASE("convergence status preserved by catalog rules") {
    const Rule catalog[] = {Rule::Lbeta,  Rule::CpIn,   Rule::CpE,    Rule::LletIn,
                            Rule::LletE,  Rule::Lapp,   Rule::Lcase,  Rule::Lseq,
                            Rule::SeqC,   Rule::SeqIn,  Rule::SeqE,   Rule::CaseC,
                            Rule::CaseIn, Rule::CaseE,  Rule::Gc1,    Rule::Gc2,
                            Rule::CpxIn,  Rule::CpxE,   Rule::CpcxIn, Rule::CpcxE,
                            Rule::Abs,    Rule::Abse,   Rule::Xch,    Rule::Ucp1,
                            Rule::Ucp2,   Rule::Ucp3,   Rule::CaseCx, Rule::CaseStar,
                            Rule::GcEq,   Rule::CaseId};
    for (const auto& [name, prog] : corpus::convergingPrograms()) {
        CAPTURE(name);
        EvalResult base = evaluate(prog, 20000);
        REQUIRE(base.status == EvalStatus::Whnf);
        for (Rule r : catalog) {
            auto insts = listRedexes(prog, r);
            for (std::size_t i = 0; i < insts.size() && i < 4; ++i) {
                ExprPtr after = applyRule(prog, insts[i]);
                EvalResult ra = evaluate(after, 40000);
                CHECK_MESSAGE(ra.status == EvalStatus::Whnf,
                              name << " after " << ruleName(r));
            }
        }
    }
}
