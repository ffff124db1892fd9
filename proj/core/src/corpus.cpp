#include "lazylet/corpus.hpp"

#include "lazylet/printer.hpp"

#include <algorithm>

namespace lazylet::corpus {

namespace {

ExprPtr parseOne(const std::string& text) { return parseExpr(text); }

// replace every free occurrence of a marker variable by a closed term
ExprPtr replaceMarker(const ExprPtr& e, NameId marker, const ExprPtr& repl) {
    if (!freeIn(marker, e)) return e;
    if (e->tag == Tag::Var && e->name == marker) return repl;
    auto n = std::make_shared<Expr>(e->tag);
    n->name = e->name;
    n->kids = e->kids;
    n->alts = e->alts;
    n->binds = e->binds;
    n->body = e->body;
    for (auto& k : n->kids) k = replaceMarker(k, marker, repl);
    for (auto& a : n->alts) a.rhs = replaceMarker(a.rhs, marker, repl);
    for (auto& b : n->binds) b.rhs = replaceMarker(b.rhs, marker, repl);
    if (n->body) n->body = replaceMarker(n->body, marker, repl);
    return n;
}

ExprPtr listOf(std::size_t n, const ExprPtr& elt) {
    ExprPtr acc = mkCon("Nil", {});
    for (std::size_t i = 0; i < n; ++i) acc = mkCon("Cons", {elt, acc});
    return acc;
}

InstancePair applied(const ExprPtr& base, Rule rule, std::size_t index,
                     const std::string& note) {
    auto insts = listRedexes(base, rule);
    if (index >= insts.size())
        throw std::runtime_error(std::string("corpus: missing ") + ruleName(rule) +
                                 " instance in " + note);
    InstancePair p;
    p.before = base;
    p.after = applyRule(base, insts[index]);
    p.note = note;
    return p;
}

void appendAll(std::vector<InstancePair>& out, const ExprPtr& base,
               std::initializer_list<Rule> rules, const std::string& note,
               std::size_t cap = 8) {
    for (Rule r : rules) {
        auto insts = listRedexes(base, r);
        for (std::size_t i = 0; i < insts.size() && i < cap; ++i) {
            InstancePair p;
            p.before = base;
            p.after = applyRule(base, insts[i]);
            p.note = note + ":" + ruleName(r);
            out.push_back(std::move(p));
        }
    }
}

} // namespace

// ---- fold corpus ------------------------------------------------------------

const std::string& foldText() {
    static const std::string text = R"(-- fold variants, plain and with the test function folded into the body
letrec
  foldl = \f z xs -> case xs of { Nil -> z ; Cons y ys -> foldl f (f z y) ys },
  foldl' = \f z xs -> case xs of { Nil -> z ; Cons y ys -> letrec w = f z y in seq w (foldl' f w ys) },
  foldr = \f z xs -> case xs of { Nil -> z ; Cons y ys -> f y (foldr f z ys) },
  foldlIn = \f z xs -> case xs of { Nil -> z ; Cons y ys -> foldlIn f (case z of { True -> case y of { True -> False ; False -> True } ; False -> y }) ys },
  foldl'In = \f z xs -> case xs of { Nil -> z ; Cons y ys -> letrec w = case z of { True -> case y of { True -> False ; False -> True } ; False -> y } in seq w (foldl'In f w ys) },
  foldrIn = \f z xs -> case xs of { Nil -> z ; Cons y ys -> case y of { True -> case foldrIn f z ys of { True -> False ; False -> True } ; False -> foldrIn f z ys } },
  xor = \x y -> case x of { True -> case y of { True -> False ; False -> True } ; False -> y },
  take = \n xs -> case n of { Zero -> Nil ; Succ m -> case xs of { Nil -> Nil ; Cons y ys -> Cons y (take m ys) } },
  lst = Cons True falses,
  falses = Cons False falses
in \k -> foldl xor False (take k lst)
)";
    return text;
}

const char* foldVariantName(FoldVariant v) {
    switch (v) {
        case FoldVariant::Foldl: return "foldl";
        case FoldVariant::FoldlStrict: return "foldl'";
        case FoldVariant::Foldr: return "foldr";
    }
    return "?";
}

ExprPtr foldProgram(FoldVariant v, bool inlined, std::uint64_t k) {
    static const ExprPtr defs = parseOne(foldText());
    std::string fn;
    switch (v) {
        case FoldVariant::Foldl: fn = inlined ? "foldlIn" : "foldl"; break;
        case FoldVariant::FoldlStrict: fn = inlined ? "foldl'In" : "foldl'"; break;
        case FoldVariant::Foldr: fn = inlined ? "foldrIn" : "foldr"; break;
    }
    ExprPtr body = mkApps(mkVar(fn), {mkVar("xor"), mkCon("False", {}),
                                      mkApps(mkVar("take"), {mkNumeral(k), mkVar("lst")})});
    return mkLetrec(defs->binds, body);
}

// ---- shared consumers ---------------------------------------------------------

const std::string& consumersText() {
    static const std::string text = R"(-- boolean and list consumers shared by the harness corpus
letrec
  andB = \l -> case l of { Nil -> True ; Cons b bs -> case b of { True -> andB bs ; False -> False } },
  and2 = \a b -> case a of { True -> b ; False -> False },
  lastB = \l -> case l of { Nil -> False ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } },
  forceB = \l -> case l of { Nil -> True ; Cons b bs -> seq b (forceB bs) },
  headB = \l -> case l of { Nil -> False ; Cons b bs -> b },
  eqB = \a b -> case a of { True -> b ; False -> case b of { True -> False ; False -> True } },
  upto = \m j -> case j of { Zero -> Nil ; Succ j2 -> Cons m (upto (Succ m) j2) }
in andB
)";
    return text;
}

// ---- demos ----------------------------------------------------------------------

// the list [n, n-1, ..., 1] built by walking down the numeral's spine;
// consumed cells and passed spine nodes become garbage immediately, so a
// single traversal runs in constant space under unit-sized numerals
ExprPtr cseDemoBefore(std::uint64_t n) {
    static const ExprPtr tmpl = parseOne(R"(
letrec
  gen = \j -> case j of { Zero -> Nil ; Succ m -> Cons j (gen m) },
  lastB = \l -> case l of { Nil -> Zero ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } }
in case lastB (gen nnn) of { Zero -> Nil ; Succ w -> gen nnn }
)");
    return replaceMarker(tmpl, intern("nnn"), mkNumeral(n));
}

ExprPtr cseDemoAfter(std::uint64_t n) {
    static const ExprPtr tmpl = parseOne(R"(
letrec
  gen = \j -> case j of { Zero -> Nil ; Succ m -> Cons j (gen m) },
  lastB = \l -> case l of { Nil -> Zero ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } },
  x = gen nnn
in case lastB x of { Zero -> Nil ; Succ w -> x }
)");
    return replaceMarker(tmpl, intern("nnn"), mkNumeral(n));
}

ExprPtr appendExpr(bool leftAssociated, std::uint64_t n) {
    static const ExprPtr tmplLeft = parseOne(R"(
letrec
  app = \as bs -> case as of { Nil -> bs ; Cons q qs -> Cons q (app qs bs) },
  xs = xsM, ys = ysM, zs = zsM
in app (app xs ys) zs
)");
    static const ExprPtr tmplRight = parseOne(R"(
letrec
  app = \as bs -> case as of { Nil -> bs ; Cons q qs -> Cons q (app qs bs) },
  xs = xsM, ys = ysM, zs = zsM
in app xs (app ys zs)
)");
    ExprPtr t = leftAssociated ? tmplLeft : tmplRight;
    t = replaceMarker(t, intern("xsM"), listOf(n, mkCon("True", {})));
    t = replaceMarker(t, intern("ysM"), listOf(n, mkCon("True", {})));
    t = replaceMarker(t, intern("zsM"), listOf(n, mkCon("True", {})));
    return t;
}

// ---- leak pairs -------------------------------------------------------------------

InstancePair cseLeakPair() {
    ExprPtr before = parseOne(R"(
\k -> letrec
  gen = \j -> case j of { Zero -> Nil ; Succ m -> Cons j (gen m) },
  lastB = \l -> case l of { Nil -> Zero ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } },
  as = gen k,
  bs = gen k
in seq (lastB as) (seq (lastB bs) True)
)");
    auto insts = listRedexes(before, Rule::Cse);
    if (insts.empty()) throw std::runtime_error("corpus: cse leak instance missing");
    InstancePair p;
    p.before = before;
    p.after = applyRule(before, insts[0]);
    p.note = "shared generator replaces recomputation";
    return p;
}

InstancePair soecLeakPair() {
    ExprPtr before = parseOne(R"(
\k -> letrec
  gen = \j -> case j of { Zero -> Nil ; Succ m -> Cons j (gen m) },
  lastB = \l -> case l of { Nil -> Zero ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } },
  headB = \l -> case l of { Nil -> Zero ; Cons b bs -> b },
  isZero = \a -> case a of { Zero -> True ; Succ a2 -> False },
  xs = gen k,
  w = lastB xs
in case isZero (headB xs) of { True -> isZero w ; False -> isZero w }
)");
    const ExprPtr& lam = before;
    const ExprPtr& let = lam->kids[0];
    Path bodyPath = Path{}.child(0).child(static_cast<int>(let->binds.size()));
    InstancePair p;
    p.before = before;
    p.after = seqInsert(before, bodyPath, intern("w"));
    p.note = "force the spine-walking consumer first";
    return p;
}

InstancePair cpLeakPair() {
    ExprPtr before = parseOne(R"(
letrec
  big = \q -> case q of { True -> False ; False -> True },
  v = \x -> Cons (\u -> big u) Nil
in v
)");
    auto insts = listRedexes(before, Rule::CpE);
    if (insts.empty()) throw std::runtime_error("corpus: cp leak instance missing");
    InstancePair p;
    p.before = before;
    p.after = applyRule(before, insts[0]);
    p.note = "abstraction copied under two binders";
    p.sizeOfCopied = size(before->binds[0].rhs);
    return p;
}

// ---- classification rows --------------------------------------------------------

namespace {

std::vector<InstancePair> lbetaPairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("(\\x -> x) True"), {Rule::Lbeta}, "id");
    appendAll(out, parseOne("seq ((\\x -> Cons x Nil) True) False"), {Rule::Lbeta},
              "under-seq");
    appendAll(out,
              parseOne("letrec notB = \\b -> case b of { True -> False ; False -> True } "
                       "in (\\u -> notB u) True"),
              {Rule::Lbeta}, "wrapped-call");
    return out;
}

std::vector<InstancePair> casePairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("case Cons True Nil of { Nil -> False ; Cons a b -> a }"),
              {Rule::CaseC}, "direct");
    appendAll(out,
              parseOne("letrec p = Cons True Nil in case p of { Nil -> False ; Cons a b "
                       "-> a }"),
              {Rule::CaseIn}, "in-body");
    appendAll(out,
              parseOne("letrec p = Cons True Nil, q = case p of { Nil -> False ; Cons a "
                       "b -> a } in seq q True"),
              {Rule::CaseE}, "in-binding");
    appendAll(out,
              parseOne("letrec p = True in case p of { True -> False ; False -> True }"),
              {Rule::CaseIn}, "nullary");
    return out;
}

std::vector<InstancePair> seqPairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("seq True False"), {Rule::SeqC}, "value");
    appendAll(out, parseOne("seq (\\x -> x) True"), {Rule::SeqC}, "abstraction");
    appendAll(out, parseOne("letrec p = Cons True Nil in seq p False"), {Rule::SeqIn},
              "in-body");
    appendAll(out, parseOne("letrec p = Nil, q = seq p True in q"), {Rule::SeqE},
              "in-binding");
    return out;
}

std::vector<InstancePair> lllPairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("(letrec x = True in \\y -> y) False"), {Rule::Lapp}, "app");
    appendAll(out,
              parseOne("case (letrec x = Cons True Nil in x) of { Nil -> False ; Cons a "
                       "b -> a }"),
              {Rule::Lcase}, "case");
    appendAll(out, parseOne("seq (letrec x = True in x) False"), {Rule::Lseq}, "seq");
    appendAll(out, parseOne("letrec a = True in letrec b = Nil in seq b a"),
              {Rule::LletIn}, "body");
    appendAll(out, parseOne("letrec a = (letrec c = True in c) in seq a a"),
              {Rule::LletE}, "binding");
    return out;
}

std::vector<InstancePair> gcPairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("letrec junk = Cons True Nil, x = True in x"), {Rule::Gc1},
              "partial");
    appendAll(out, parseOne("letrec j = True in Nil"), {Rule::Gc2}, "whole");
    appendAll(out, parseOne("seq (letrec j = Cons True Nil in False) True"), {Rule::Gc2},
              "nested");
    return out;
}

std::vector<InstancePair> caseStarPairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("case Cons True Nil of { Nil -> False ; Cons a b -> a }"),
              {Rule::CaseStar}, "direct");
    appendAll(out,
              parseOne("letrec p = Cons True Nil in case p of { Nil -> False ; Cons a b "
                       "-> a }"),
              {Rule::CaseStar}, "plain-args");
    appendAll(out,
              parseOne("letrec y1 = True, y2 = Nil, p = Cons y1 y2 in case p of { Nil "
                       "-> False ; Cons a b -> a }"),
              {Rule::CaseStar}, "var-args");
    return out;
}

std::vector<InstancePair> caseIdPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("case Cons True Nil of { Nil -> Nil ; Cons a b -> Cons a b }"),
              {Rule::CaseId}, "direct");
    appendAll(out,
              parseOne("letrec p = Cons True Nil in case p of { Nil -> Nil ; Cons a b "
                       "-> Cons a b }"),
              {Rule::CaseId}, "bound");
    return out;
}

std::vector<InstancePair> cpxPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec y = Cons True Nil, x = y in seq x (case x of { Nil -> "
                       "True ; Cons a b -> a })"),
              {Rule::CpxIn}, "body");
    appendAll(out,
              parseOne("letrec y = True, x = y, z = Cons x Nil in case z of { Nil -> "
                       "False ; Cons a b -> a }"),
              {Rule::CpxE}, "binding");
    return out;
}

std::vector<InstancePair> absPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec p = Cons True Nil in case p of { Nil -> False ; Cons a b "
                       "-> a }"),
              {Rule::Abs}, "ground-args");
    appendAll(out,
              parseOne("letrec p = Cons (seq True False) Nil in case p of { Nil -> "
                       "False ; Cons a b -> a }"),
              {Rule::Abs}, "thunk-arg");
    return out;
}

std::vector<InstancePair> absePairs() {
    std::vector<InstancePair> out;
    appendAll(out, parseOne("Cons True Nil"), {Rule::Abse}, "value");
    appendAll(out,
              parseOne("case Cons (seq True True) Nil of { Nil -> False ; Cons a b -> a "
                       "}"),
              {Rule::Abse}, "scrutinee");
    return out;
}

std::vector<InstancePair> xchPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec x = Cons True Nil, y = x in case y of { Nil -> False ; "
                       "Cons a b -> a }"),
              {Rule::Xch}, "list");
    appendAll(out, parseOne("letrec x = True, y = x in seq y x"), {Rule::Xch}, "bool");
    return out;
}

std::vector<InstancePair> ucpPairs() {
    std::vector<InstancePair> out;
    ExprPtr u1 = parseOne(
        "letrec d = True, x = Cons d Nil in case x of { Nil -> False ; Cons a b -> a }");
    appendAll(out, u1, {Rule::Ucp1}, "body-occurrence");
    appendAll(out, u1, {Rule::Ucp2}, "binding-occurrence");
    appendAll(out,
              parseOne("letrec w = Cons True Nil in case w of { Nil -> False ; Cons a b "
                       "-> a }"),
              {Rule::Ucp3}, "single-binding");
    return out;
}

// the binding-preserving case variant against the plain case step from
// the same source term
std::vector<InstancePair> caseCxPairs() {
    std::vector<InstancePair> out;
    {
        ExprPtr base = parseOne(
            "letrec y1 = True, y2 = Nil, p = Cons y1 y2 in case p of { Nil -> False ; "
            "Cons a b -> a }");
        auto plain = listRedexes(base, Rule::CaseIn);
        auto cx = listRedexes(base, Rule::CaseCx);
        if (plain.empty() || cx.empty())
            throw std::runtime_error("corpus: case-cx row instance missing");
        InstancePair p;
        p.before = applyRule(base, plain[0]);
        p.after = applyRule(base, cx[0]);
        p.note = "plain case step vs binding-preserving step";
        out.push_back(std::move(p));
    }
    {
        ExprPtr base = parseOne(
            "letrec y1 = True, y2 = Nil, p = Cons y1 y2, r = case p of { Nil -> False ; "
            "Cons a b -> a } in seq r (seq r True)");
        auto plain = listRedexes(base, Rule::CaseE);
        auto cx = listRedexes(base, Rule::CaseCx);
        if (plain.empty() || cx.empty())
            throw std::runtime_error("corpus: case-cx row instance missing");
        InstancePair p;
        p.before = applyRule(base, plain[0]);
        p.after = applyRule(base, cx[0]);
        p.note = "binding-position case";
        out.push_back(std::move(p));
    }
    return out;
}

// single-occurrence constructor copies whose source binding dies at once;
// a traversal inside the term dominates the transient window
std::vector<InstancePair> cpcxTEquivalencePairs() {
    std::vector<InstancePair> out;
    ExprPtr base = parseOne(R"(
letrec
  p = Cons True Nil,
  l1 = Cons True (Cons True (Cons True (Cons True Nil))),
  lastB = \l -> case l of { Nil -> False ; Cons c cs -> case cs of { Nil -> c ; Cons d ds -> lastB cs } }
in seq p (lastB l1)
)");
    appendAll(out, base, {Rule::CpcxT}, "dying-source", 1);
    return out;
}

std::vector<InstancePair> cpcxTSafetyPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec p = Cons True Nil in seq p (case p of { Nil -> False ; "
                       "Cons a b -> a })"),
              {Rule::CpcxT}, "shared-source");
    for (auto& p : cpcxTEquivalencePairs()) out.push_back(std::move(p));
    return out;
}

std::vector<InstancePair> gcEqPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec x = y, y = Cons True Nil in case y of { Nil -> False ; "
                       "Cons a b -> a }"),
              {Rule::GcEq}, "dead-indirection");
    return out;
}

std::vector<InstancePair> cpSPairs() {
    std::vector<InstancePair> out;
    ExprPtr p1 = parseOne(
        "letrec f = \\u -> case u of { True -> False ; False -> True } in Cons (f True) "
        "(Cons (f False) Nil)");
    ExprPtr p2 = parseOne("letrec f = \\u -> u in seq (f True) (f False)");
    for (const ExprPtr& base : {p1, p2}) {
        for (const auto& inst : listRedexes(base, Rule::CpS)) {
            InstancePair q;
            q.before = base;
            q.after = applyRule(base, inst);
            q.note = "surface-target copy";
            q.sizeOfCopied = size(base->binds[inst.bindingIndex].rhs);
            out.push_back(std::move(q));
        }
    }
    return out;
}

std::vector<InstancePair> cpcxInformationalPairs() {
    std::vector<InstancePair> out;
    appendAll(out,
              parseOne("letrec p = Cons True Nil in seq p (case p of { Nil -> False ; "
                       "Cons a b -> a })"),
              {Rule::CpcxIn}, "shared-source");
    return out;
}

} // namespace

const std::vector<TableRowSpec>& tableRows() {
    static const std::vector<TableRowSpec> rows = [] {
        std::vector<TableRowSpec> r;
        r.push_back({"(lbeta)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     lbetaPairs()});
        r.push_back({"(case)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     casePairs()});
        r.push_back({"(seq)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     seqPairs()});
        r.push_back({"(lll)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     lllPairs()});
        r.push_back({"(gc)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     gcPairs()});
        r.push_back({"(case*)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     caseStarPairs()});
        r.push_back({"(caseId)", Expectation::Improvement, FamilyKind::ReductionGrammar,
                     caseIdPairs()});
        r.push_back({"(cpx)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     cpxPairs()});
        r.push_back({"(abs)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     absPairs()});
        r.push_back({"(abse)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     absePairs()});
        r.push_back({"(xch)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     xchPairs()});
        r.push_back({"(ucp)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     ucpPairs()});
        r.push_back({"(case-cx)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     caseCxPairs()});
        r.push_back({"(cpcxT)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     cpcxTEquivalencePairs(), false});
        r.push_back({"(gc=)", Expectation::Equivalence, FamilyKind::ReductionGrammar,
                     gcEqPairs()});
        r.push_back({"(T,cpcxT)", Expectation::SafeUpToOne,
                     FamilyKind::ReductionGrammar, cpcxTSafetyPairs()});
        r.push_back({"(S,cpS)", Expectation::SafeUpToSizeV,
                     FamilyKind::ReductionGrammar, cpSPairs()});
        r.push_back({"(cpcx)", Expectation::Informational,
                     FamilyKind::ReductionGrammar, cpcxInformationalPairs()});
        r.push_back({"(cp)", Expectation::Leak, FamilyKind::ListDriver, {cpLeakPair()}});
        r.push_back(
            {"(cse)", Expectation::Leak, FamilyKind::ListDriver, {cseLeakPair()}});
        r.push_back(
            {"(soec)", Expectation::Leak, FamilyKind::ListDriver, {soecLeakPair()}});
        return r;
    }();
    return rows;
}

const std::vector<std::pair<std::string, ExprPtr>>& convergingPrograms() {
    static const std::vector<std::pair<std::string, ExprPtr>> programs = [] {
        std::vector<std::pair<std::string, ExprPtr>> p;
        auto add = [&](const std::string& name, const ExprPtr& e) {
            p.emplace_back(name, e);
        };
        for (const auto& row : tableRows()) {
            std::size_t i = 0;
            for (const auto& pair : row.pairs) {
                if (row.family != FamilyKind::ReductionGrammar) continue;
                add(row.name + "/before/" + std::to_string(i), pair.before);
                add(row.name + "/after/" + std::to_string(i), pair.after);
                ++i;
            }
        }
        add("fold/foldl/3", foldProgram(FoldVariant::Foldl, false, 3));
        add("fold/foldl'/3", foldProgram(FoldVariant::FoldlStrict, false, 3));
        add("fold/foldr/3", foldProgram(FoldVariant::Foldr, false, 3));
        add("fold/foldlIn/3", foldProgram(FoldVariant::Foldl, true, 3));
        add("fold/foldl'In/3", foldProgram(FoldVariant::FoldlStrict, true, 3));
        add("fold/foldrIn/3", foldProgram(FoldVariant::Foldr, true, 3));
        add("demo/cse-before/4", cseDemoBefore(4));
        add("demo/cse-after/4", cseDemoAfter(4));
        add("demo/append-left/2", appendExpr(true, 2));
        add("demo/append-right/2", appendExpr(false, 2));
        return p;
    }();
    return programs;
}

} // namespace lazylet::corpus
