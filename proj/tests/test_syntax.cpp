#include "lazylet/ast.hpp"
#include "lazylet/corpus.hpp"
#include "lazylet/freshen.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"
#include "lazylet/size.hpp"

#include "testgen.hpp"

#include <doctest.h>

using namespace lazylet;

namespace {

// independent free-variable oracle: plain environment-passing traversal
void fvOracle(const ExprPtr& e, std::vector<NameId> bound, std::set<std::string>& out) {
    auto isBound = [&](NameId v) {
        return std::find(bound.begin(), bound.end(), v) != bound.end();
    };
    switch (e->tag) {
        case Tag::Var:
            if (!isBound(e->name)) out.insert(nameText(e->name));
            return;
        case Tag::Lam: {
            bound.push_back(e->name);
            fvOracle(e->kids[0], bound, out);
            return;
        }
        case Tag::Case: {
            fvOracle(e->kids[0], bound, out);
            for (const Alt& a : e->alts) {
                auto inner = bound;
                inner.insert(inner.end(), a.vars.begin(), a.vars.end());
                fvOracle(a.rhs, inner, out);
            }
            return;
        }
        case Tag::Letrec: {
            for (const auto& b : e->binds) bound.push_back(b.var);
            for (const auto& b : e->binds) fvOracle(b.rhs, bound, out);
            fvOracle(e->body, bound, out);
            return;
        }
        default:
            for (const auto& k : e->kids) fvOracle(k, bound, out);
            return;
    }
}

} // namespace

TEST_CASE("parse: smallest abstraction") {
    ExprPtr e = parseExpr("\\x -> x");
    REQUIRE(e->tag == Tag::Lam);
    CHECK(e->kids[0]->tag == Tag::Var);
    CHECK(e->kids[0]->name == e->name);
}

TEST_CASE("parse: letrec with constructor") {
    ExprPtr e = parseExpr("letrec x = True in x");
    REQUIRE(e->tag == Tag::Letrec);
    REQUIRE(e->binds.size() == 1);
    CHECK(e->binds[0].rhs->tag == Tag::Con);
    CHECK(nameText(e->binds[0].rhs->name) == "True");
    CHECK(e->body->tag == Tag::Var);
}

TEST_CASE("parse: data declarations extend the constructor scope") {
    auto r = parse("data Pair = MkPair 2; MkPair True Nil");
    REQUIRE(r.decls.size() == 1);
    CHECK(r.expr->tag == Tag::Con);
    CHECK(r.expr->kids.size() == 2);
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(parseExpr("letrec x = True, x = False in x"), ParseError);
    CHECK_THROWS_AS(parseExpr("Cons True"), ParseError);           // unsaturated
    CHECK_THROWS_AS(parseExpr("Wat"), ParseError);                 // unknown constructor
    CHECK_THROWS_AS(parseExpr("case True of { True -> False }"), ParseError);
    CHECK_THROWS_AS(
        parseExpr("case True of { True -> False ; True -> False ; False -> True }"),
        ParseError);
    CHECK_THROWS_AS(parseExpr("\\x -> (x"), ParseError);
}

TEST_CASE("parse: alternatives are reordered to declaration order") {
    ExprPtr e = parseExpr("case True of { False -> True ; True -> False }");
    REQUIRE(e->alts.size() == 2);
    CHECK(nameText(e->alts[0].con) == "True");
    CHECK(nameText(e->alts[1].con) == "False");
}

TEST_CASE("print: trivial forms") {
    CHECK(print(parseExpr("\\x -> x")) == "\\x -> x");
    CHECK(print(mkCon("True", {})) == "True");
}

TEST_CASE("print/parse round trip over the corpus") {
    ExprPtr fold = parseExpr(corpus::foldText());
    CHECK(alphaEqual(parseExpr(print(fold)), fold));
    for (const auto& [name, prog] : corpus::convergingPrograms()) {
        CAPTURE(name);
        ExprPtr back = parseExpr(print(prog));
        CHECK(alphaEqual(back, prog));
    }
}

TEST_CASE("print/parse round trip on random terms") {
    testgen::Gen gen(7);
    for (int i = 0; i < 200; ++i) {
        ExprPtr e = gen.closedTerm(4);
        ExprPtr back = parseExpr(print(e));
        CHECK(alphaEqual(back, e));
    }
}

TEST_CASE("freeVars: basic scoping") {
    CHECK(freeVars(parseExpr("\\x -> x")).empty());
    auto fv = freeVars(parseExpr("letrec x = y in x"));
    CHECK(fv == std::set<std::string>{"y"});
}

TEST_CASE("freeVars: case scoping matches the traversal oracle") {
    ExprPtr e = parseExpr(
        "case Cons a b of { Nil -> n0 ; Cons h t -> Cons h (Cons t rest) }");
    std::set<std::string> expect;
    fvOracle(e, {}, expect);
    CHECK(freeVars(e) == expect);
    CHECK(expect == std::set<std::string>{"a", "b", "n0", "rest"});

    testgen::Gen gen(11);
    for (int i = 0; i < 100; ++i) {
        ExprPtr t = gen.closedTerm(4);
        std::set<std::string> oracle;
        fvOracle(t, {}, oracle);
        CHECK(freeVars(t) == oracle);
    }
}

TEST_CASE("size: defining clauses") {
    CHECK(size(parseExpr("x")) == 0);
    CHECK(size(parseExpr("\\x -> x")) == 1);
    // one cons cell under a letrec: the binding contributes only its rhs
    CHECK(size(parseExpr("letrec x = Cons y Nil in x")) == 2);
    CHECK(size(parseExpr("seq True False")) == 3);
    CHECK(size(parseExpr("case x of { True -> False ; False -> True }")) == 5);
}

TEST_CASE("size: unit-sized numerals") {
    SizeOptions peano;
    peano.peanoAsUnit = true;
    CHECK(size(parseExpr("Succ (Succ Zero)")) == 3);
    CHECK(size(parseExpr("Succ (Succ Zero)"), peano) == 1);
    CHECK(size(mkNumeral(40), peano) == 1);
    // an open Succ chain is not a numeral
    CHECK(size(parseExpr("Succ n"), peano) == 1);
    CHECK(size(parseExpr("Succ (Succ n)"), peano) == 2);
}

TEST_CASE("size: zero only for variables and variable-only letrecs") {
    CHECK(size(parseExpr("x")) == 0);
    CHECK(size(parseExpr("letrec a = b in a")) == 0);
    CHECK(size(parseExpr("True")) == 1);
}

TEST_CASE("freshen: inner shadowing resolved") {
    ExprPtr e = parseExpr("\\x -> \\x -> x");
    ExprPtr f = freshen(e);
    REQUIRE(f->tag == Tag::Lam);
    REQUIRE(f->kids[0]->tag == Tag::Lam);
    CHECK(f->name != f->kids[0]->name);
    CHECK(f->kids[0]->kids[0]->name == f->kids[0]->name);
    CHECK(hasDistinctBinders(f));
    CHECK(alphaEqual(e, f));
}

TEST_CASE("freshen: preserves size and free variables") {
    testgen::Gen gen(13);
    for (int i = 0; i < 100; ++i) {
        ExprPtr e = gen.closedTerm(4);
        ExprPtr f = freshen(e);
        CHECK(size(f) == size(e));
        CHECK(freeVars(f) == freeVars(e));
        CHECK(alphaEqual(e, f));
        CHECK(hasDistinctBinders(f));
    }
}

TEST_CASE("paths: printing, parsing and navigation") {
    ExprPtr e = parseExpr("seq (Cons True Nil) False");
    Path p = Path::parse("0.1");
    CHECK(p.toString() == "0.1");
    CHECK(nameText(subtermAt(e, p)->name) == "Nil");
    ExprPtr r = replaceAt(e, p, mkCon("Nil", {}));
    CHECK(alphaEqual(r, e));
    CHECK_THROWS(subtermAt(e, Path::parse("5")));
}
