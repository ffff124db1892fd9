#include "lazylet/check.hpp"

#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"

#include <algorithm>
#include <sstream>

namespace lazylet {

// ---- context families -----------------------------------------------------

namespace {

NameId holeMarker() {
    static NameId id = intern("hole0");
    return id;
}

std::optional<Path> findVar(const ExprPtr& e, NameId v, Path p = {}) {
    if (e->tag == Tag::Var && e->name == v) return p;
    int n = childCount(*e);
    for (int i = 0; i < n; ++i)
        if (auto r = findVar(childAt(e, i), v, p.child(i))) return r;
    return std::nullopt;
}

ContextTemplate templateFromText(const std::string& name, const std::string& text) {
    ContextTemplate t;
    t.name = name;
    t.body = parseExpr(text);
    auto hp = findVar(t.body, holeMarker());
    if (!hp) throw std::logic_error("context template without hole: " + name);
    t.holePath = *hp;
    return t;
}

ContextTemplate wrap(const ContextTemplate& outer, const ContextTemplate& inner) {
    ContextTemplate t;
    t.name = outer.name + "." + inner.name;
    t.body = replaceAt(outer.body, outer.holePath, inner.body);
    Path p = outer.holePath;
    p.steps.insert(p.steps.end(), inner.holePath.steps.begin(), inner.holePath.steps.end());
    t.holePath = p;
    t.param = inner.param;
    return t;
}

const std::vector<ContextTemplate>& grammarWraps() {
    static const std::vector<ContextTemplate> wraps = [] {
        std::vector<ContextTemplate> w;
        w.push_back(templateFromText("app", "hole0 True"));
        w.push_back(templateFromText(
            "case", "case hole0 of { True -> False ; False -> True }"));
        w.push_back(templateFromText("seq", "seq hole0 False"));
        w.push_back(templateFromText("let", "letrec h = hole0 in seq h True"));
        w.push_back(
            templateFromText("chain", "letrec h = hole0, h2 = h in seq h2 True"));
        return w;
    }();
    return wraps;
}

ExprPtr consumerBindingsBase() {
    static const ExprPtr defs = parseExpr(corpus::consumersText());
    return defs;
}

ExprPtr callList(std::size_t n, const ExprPtr& call) {
    ExprPtr acc = mkCon("Nil", {});
    for (std::size_t i = 0; i < n; ++i) acc = mkCon("Cons", {call, acc});
    return acc;
}

std::vector<ContextTemplate> listDriverTemplates(std::uint64_t n) {
    std::vector<ContextTemplate> out;
    ExprPtr defs = consumerBindingsBase();
    ExprPtr yCall = mkApp(mkVar("y"), mkCon("Zero", {}));

    { // boolean consumers over a list of n calls
        std::vector<Binding> binds = defs->binds;
        binds.push_back({intern("y"), mkVar(holeMarker())});
        binds.push_back({intern("z"), callList(n, yCall)});
        ExprPtr body = mkApps(mkVar("and2"), {mkApp(mkVar("andB"), mkVar("z")),
                                              mkApp(mkVar("lastB"), mkVar("z"))});
        ContextTemplate t;
        t.name = "calls-and-last";
        t.body = mkLetrec(binds, body);
        t.holePath = Path{}.child(static_cast<int>(defs->binds.size()));
        t.param = n;
        out.push_back(std::move(t));
    }
    { // whnf-forcing consumer that keeps every call result alive
        std::vector<Binding> binds = defs->binds;
        binds.push_back({intern("y"), mkVar(holeMarker())});
        binds.push_back({intern("z"), callList(n, yCall)});
        ExprPtr body =
            mkSeq(mkApp(mkVar("forceB"), mkVar("z")),
                  mkSeq(mkApp(mkVar("lastB"), mkVar("z")), mkCon("True", {})));
        ContextTemplate t;
        t.name = "calls-force-retain";
        t.body = mkLetrec(binds, body);
        t.holePath = Path{}.child(static_cast<int>(defs->binds.size()));
        t.param = n;
        out.push_back(std::move(t));
    }
    { // one call with an argument that grows with n
        std::vector<Binding> binds;
        binds.push_back({intern("y"), mkVar(holeMarker())});
        ExprPtr body =
            mkSeq(mkApp(mkVar("y"), mkNumeral(n)), mkCon("True", {}));
        ContextTemplate t;
        t.name = "growing-argument";
        t.body = mkLetrec(binds, body);
        t.holePath = Path{}.child(0);
        t.param = n;
        out.push_back(std::move(t));
    }
    return out;
}

ContextTemplate seqDominatorTemplate(std::uint64_t n) {
    ExprPtr defs = consumerBindingsBase();
    std::vector<Binding> binds = defs->binds;
    binds.push_back({intern("one"), mkCon("Succ", {mkCon("Zero", {})})});
    binds.push_back(
        {intern("q"), mkApps(mkVar("upto"), {mkVar("one"), mkNumeral(n)})});
    // the q list is retained across its first traversal, so the tail
    // peaks at order n regardless of the hole
    ExprPtr tail = mkSeq(mkApp(mkVar("lastB"), mkVar("q")),
                         mkSeq(mkApp(mkVar("lastB"), mkVar("q")), mkCon("True", {})));
    ExprPtr body = mkSeq(mkApp(mkVar("lastB"), mkVar(holeMarker())), tail);
    ContextTemplate t;
    t.name = "seq-dominator";
    t.body = mkLetrec(binds, body);
    t.holePath = Path{}.child(static_cast<int>(binds.size())).child(0).child(1);
    t.param = n;
    return t;
}

} // namespace

ContextFamily reductionFamily() {
    return {"reduction-grammar", FamilyKind::ReductionGrammar, ContextClass::Reduction};
}
ContextFamily listDriverFamily() {
    return {"list-driver", FamilyKind::ListDriver, ContextClass::Top};
}
ContextFamily seqDominatorFamily() {
    return {"seq-dominator", FamilyKind::SeqDominator, ContextClass::Top};
}

ExprPtr fillHole(const ContextTemplate& t, const ExprPtr& s) {
    return replaceAt(t.body, t.holePath, s);
}

std::vector<ContextTemplate> generateContexts(const ContextFamily& family,
                                              std::uint64_t n, std::uint64_t d) {
    switch (family.kind) {
        case FamilyKind::ReductionGrammar: {
            ContextTemplate empty;
            empty.name = "[]";
            empty.body = mkVar(holeMarker());
            empty.holePath = Path{};
            std::vector<ContextTemplate> all = {empty};
            std::vector<ContextTemplate> frontier = {empty};
            for (std::uint64_t depth = 1; depth <= d; ++depth) {
                std::vector<ContextTemplate> next;
                for (const auto& w : grammarWraps())
                    for (const auto& inner : frontier) next.push_back(wrap(w, inner));
                all.insert(all.end(), next.begin(), next.end());
                frontier = std::move(next);
            }
            return all;
        }
        case FamilyKind::ListDriver:
            return listDriverTemplates(n);
        case FamilyKind::SeqDominator:
            return {seqDominatorTemplate(n)};
    }
    return {};
}

// ---- verdicts ---------------------------------------------------------------

const char* classificationName(Classification c) {
    switch (c) {
        case Classification::ImprovementConsistent: return "improvement-consistent";
        case Classification::EquivalenceConsistent: return "equivalence-consistent";
        case Classification::SafeUpTo: return "safe-up-to";
        case Classification::LeakEvidence: return "leak-evidence";
        case Classification::Violation: return "violation";
    }
    return "?";
}

std::string growthToString(const Growth& g) {
    std::ostringstream os;
    switch (g.kind) {
        case Growth::Constant: os << "constant(" << g.value << ")"; break;
        case Growth::Linear: os << "linear(" << g.value << ")"; break;
        case Growth::Superlinear: os << "superlinear"; break;
    }
    return os.str();
}

const char* expectationName(Expectation e) {
    switch (e) {
        case Expectation::Improvement: return "improvement";
        case Expectation::Equivalence: return "equivalence";
        case Expectation::SafeUpToOne: return "safe-up-to-1";
        case Expectation::SafeUpToSizeV: return "safe-up-to-size(v)";
        case Expectation::Leak: return "leak";
        case Expectation::Informational: return "informational";
    }
    return "?";
}

namespace {

Growth fitGrowth(const std::vector<std::pair<std::uint64_t, std::int64_t>>& pts) {
    Growth g;
    if (pts.empty()) return g;
    if (pts.size() == 1) {
        g.kind = Growth::Constant;
        g.value = static_cast<double>(pts[0].second);
        return g;
    }
    bool allEqual = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].second != pts[0].second) allEqual = false;
    if (allEqual) {
        g.kind = Growth::Constant;
        g.value = static_cast<double>(pts[0].second);
        return g;
    }
    // per-unit first differences, compared exactly by cross-multiplication
    bool linear = true;
    bool strictlyIncreasing = true;
    bool diffsIncreasing = true;
    double prevPerUnit = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::int64_t dv = pts[i].second - pts[i - 1].second;
        std::int64_t dn = static_cast<std::int64_t>(pts[i].first - pts[i - 1].first);
        if (dv <= 0) strictlyIncreasing = false;
        double perUnit = static_cast<double>(dv) / static_cast<double>(dn);
        if (i >= 2) {
            std::int64_t pv = pts[i - 1].second - pts[i - 2].second;
            std::int64_t pn =
                static_cast<std::int64_t>(pts[i - 1].first - pts[i - 2].first);
            if (dv * pn != pv * dn) linear = false;
            if (perUnit <= prevPerUnit) diffsIncreasing = false;
        }
        prevPerUnit = perUnit;
    }
    if (linear) {
        g.kind = Growth::Linear;
        g.value = static_cast<double>(pts.back().second - pts.front().second) /
                  static_cast<double>(pts.back().first - pts.front().first);
        return g;
    }
    if (strictlyIncreasing && diffsIncreasing) {
        g.kind = Growth::Superlinear;
        return g;
    }
    std::int64_t level = pts[0].second;
    for (const auto& [n, v] : pts) level = std::max(level, v);
    g.kind = Growth::Constant;
    g.value = static_cast<double>(level);
    return g;
}

Classification classify(const Verdict& v) {
    if (v.violations > 0) return Classification::Violation;
    if (v.contextsTested == 0) return Classification::Violation;
    if (v.maxDelta == 0 && v.minDelta == 0) return Classification::EquivalenceConsistent;
    if (v.maxDelta <= 0) return Classification::ImprovementConsistent;
    if ((v.growth.kind == Growth::Linear && v.growth.value > 0) ||
        v.growth.kind == Growth::Superlinear)
        return Classification::LeakEvidence;
    return Classification::SafeUpTo;
}

} // namespace

std::string verdictTsv(const Verdict& v) {
    std::ostringstream os;
    os << v.rule << '\t' << classificationName(v.classification);
    if (v.classification == Classification::SafeUpTo) os << '(' << v.safeBound << ')';
    os << '\t' << v.maxDelta << '\t' << v.minDelta << '\t' << growthToString(v.growth)
       << '\t' << v.contextsTested << '\t' << v.warnings;
    return os.str();
}

Verdict checkPairs(const std::vector<InstancePair>& pairs, const ContextFamily& family,
                   const CheckParams& params, const std::string& ruleLabel) {
    Verdict v;
    v.rule = ruleLabel;
    v.instancesTested = pairs.size();

    for (const auto& pr : pairs) {
        // context-lemma side conditions for the improvement direction
        if (size(pr.after) > size(pr.before)) ++v.sideConditionWarnings;
        const auto& fvA = freeVarsSorted(pr.after);
        const auto& fvB = freeVarsSorted(pr.before);
        if (!std::includes(fvB.begin(), fvB.end(), fvA.begin(), fvA.end()))
            ++v.sideConditionWarnings;
    }

    std::vector<std::uint64_t> buckets =
        family.kind == FamilyKind::ReductionGrammar ? std::vector<std::uint64_t>{0}
                                                    : params.ns;
    bool sawDelta = false;
    for (std::uint64_t n : buckets) {
        auto templates = generateContexts(family, n, params.depth);
        bool bucketAny = false;
        std::int64_t bucketMax = 0;
        for (const auto& pr : pairs) {
            for (const auto& tmpl : templates) {
                ExprPtr cs = fillHole(tmpl, pr.before);
                ExprPtr ct = fillHole(tmpl, pr.after);
                if (size(cs) != size(ct)) v.sizeEqualEverywhere = false;
                EvalResult rs, rt;
                try {
                    rs = evaluate(cs, params.fuel, {}, params.seed);
                    rt = evaluate(ct, params.fuel, {}, params.seed);
                } catch (const EvalError&) {
                    ++v.warnings;
                    continue;
                }
                if (rs.status != rt.status) {
                    ++v.violations;
                    continue;
                }
                if (rs.status != EvalStatus::Whnf) {
                    ++v.warnings;
                    continue;
                }
                std::int64_t delta = static_cast<std::int64_t>(*rt.measures.spmax) -
                                     static_cast<std::int64_t>(*rs.measures.spmax);
                ++v.contextsTested;
                if (!sawDelta) {
                    v.maxDelta = v.minDelta = delta;
                    sawDelta = true;
                } else {
                    v.maxDelta = std::max(v.maxDelta, delta);
                    v.minDelta = std::min(v.minDelta, delta);
                }
                if (delta > 0 &&
                    (!v.counterexample || delta > v.counterexample->second))
                    v.counterexample = {{tmpl.name + "@" + pr.note, delta}};
                if (!bucketAny || delta > bucketMax) {
                    bucketMax = delta;
                    bucketAny = true;
                }
            }
        }
        if (bucketAny) v.maxDeltaByN.emplace_back(n, bucketMax);
    }
    v.growth = fitGrowth(v.maxDeltaByN);
    v.classification = classify(v);
    v.safeBound = v.maxDelta;
    return v;
}

Verdict checkPair(const ExprPtr& before, const ExprPtr& after,
                  const ContextFamily& family, const CheckParams& params,
                  const std::string& ruleLabel) {
    InstancePair p;
    p.before = before;
    p.after = after;
    p.note = ruleLabel;
    return checkPairs({p}, family, params, ruleLabel);
}

// ---- copy bound ------------------------------------------------------------------

CpBoundReport checkCpBound(const ExprPtr& s, const RuleInstance& inst,
                           std::uint64_t fuel) {
    if (inst.rule != Rule::CpIn && inst.rule != Rule::CpE && inst.rule != Rule::CpS)
        throw TransformError("checkCpBound expects a cp instance");
    CpBoundReport rep;
    ExprPtr L = subtermAt(s, inst.letrecPath);
    ExprPtr v = L->binds[inst.bindingIndex].rhs;
    rep.sizeV = size(v);
    rep.isSurfaceInstance =
        contextRank(inst.contextClass) >= contextRank(ContextClass::Surface);

    ExprPtr t = applyRule(s, inst);
    EvalResult rs = evaluate(s, fuel);
    EvalResult rt = evaluate(t, fuel);
    if (rs.status != EvalStatus::Whnf || rt.status != EvalStatus::Whnf) {
        rep.converged = false;
        return rep;
    }
    rep.spmaxBefore = *rs.measures.spmax;
    rep.spmaxAfter = *rt.measures.spmax;
    rep.rlnBefore = rs.measures.rln;
    rep.generalBoundHolds =
        rep.spmaxAfter <= (rep.rlnBefore + 2) * rep.sizeV + rep.spmaxBefore;
    rep.surfaceBoundHolds =
        !rep.isSurfaceInstance || rep.spmaxAfter <= rep.sizeV + rep.spmaxBefore;
    return rep;
}

// ---- the classification table -----------------------------------------------------

std::vector<TableRowResult> checkTheoremTable(const CheckParams& params) {
    std::vector<TableRowResult> out;
    for (const auto& row : corpus::tableRows()) {
        ContextFamily family = row.family == FamilyKind::ListDriver
                                   ? listDriverFamily()
                                   : reductionFamily();
        TableRowResult r;
        r.row = row.name;
        r.expectation = row.expectation;
        if (row.expectation == Expectation::SafeUpToSizeV) {
            // the bound is per instance: check each pair separately
            bool pass = true;
            Verdict merged;
            merged.rule = row.name;
            bool first = true;
            for (const auto& pr : row.pairs) {
                Verdict v = checkPairs({pr}, family, params, row.name);
                if (v.violations > 0 ||
                    v.maxDelta > static_cast<std::int64_t>(pr.sizeOfCopied))
                    pass = false;
                if (first) {
                    merged = v;
                    first = false;
                } else {
                    merged.maxDelta = std::max(merged.maxDelta, v.maxDelta);
                    merged.minDelta = std::min(merged.minDelta, v.minDelta);
                    merged.contextsTested += v.contextsTested;
                    merged.warnings += v.warnings;
                    merged.violations += v.violations;
                }
            }
            merged.instancesTested = row.pairs.size();
            merged.safeBound = merged.maxDelta;
            merged.growth = {Growth::Constant, static_cast<double>(merged.maxDelta)};
            merged.classification = merged.maxDelta > 0
                                        ? Classification::SafeUpTo
                                        : Classification::ImprovementConsistent;
            r.verdict = merged;
            r.pass = pass && merged.violations == 0;
            out.push_back(std::move(r));
            continue;
        }
        Verdict v = checkPairs(row.pairs, family, params, row.name);
        r.verdict = v;
        switch (row.expectation) {
            case Expectation::Improvement:
                r.pass = v.violations == 0 && v.contextsTested > 0 && v.maxDelta <= 0;
                break;
            case Expectation::Equivalence:
                r.pass = v.violations == 0 && v.contextsTested > 0 && v.maxDelta == 0 &&
                         v.minDelta == 0 &&
                         (!row.requireSizeEqual || v.sizeEqualEverywhere);
                break;
            case Expectation::SafeUpToOne:
                r.pass = v.violations == 0 && v.contextsTested > 0 && v.maxDelta <= 1;
                break;
            case Expectation::Leak:
                r.pass = v.classification == Classification::LeakEvidence;
                break;
            default:
                r.pass = v.violations == 0;
                break;
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace lazylet
