#include "lazylet/reduce.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lazylet {

// ---- rule names -------------------------------------------------------------

namespace {

const std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Lbeta, "lbeta"},      {Rule::CpIn, "cp-in"},
    {Rule::CpE, "cp-e"},         {Rule::LletIn, "llet-in"},
    {Rule::LletE, "llet-e"},     {Rule::Lapp, "lapp"},
    {Rule::Lcase, "lcase"},      {Rule::Lseq, "lseq"},
    {Rule::SeqC, "seq-c"},       {Rule::SeqIn, "seq-in"},
    {Rule::SeqE, "seq-e"},       {Rule::CaseC, "case-c"},
    {Rule::CaseIn, "case-in"},   {Rule::CaseE, "case-e"},
    {Rule::Gc1, "gc1"},          {Rule::Gc2, "gc2"},
    {Rule::CpxIn, "cpx-in"},     {Rule::CpxE, "cpx-e"},
    {Rule::CpcxIn, "cpcx-in"},   {Rule::CpcxE, "cpcx-e"},
    {Rule::Abs, "abs"},          {Rule::Abse, "abse"},
    {Rule::Xch, "xch"},          {Rule::Ucp1, "ucp1"},
    {Rule::Ucp2, "ucp2"},        {Rule::Ucp3, "ucp3"},
    {Rule::CaseCx, "case-cx"},   {Rule::CaseStar, "caseStar"},
    {Rule::GcEq, "gcEq"},        {Rule::CaseId, "caseId"},
    {Rule::Cse, "cse"},          {Rule::CpS, "cpS"},
    {Rule::CpcxT, "cpcxT"},      {Rule::SeqInsert, "seqInsert"},
    {Rule::Psi, "psi"},
};

} // namespace

const char* ruleName(Rule r) {
    for (const auto& [rule, name] : kRuleNames)
        if (rule == r) return name;
    return "?";
}

std::optional<Rule> ruleFromName(const std::string& name) {
    for (const auto& [rule, n] : kRuleNames)
        if (name == n) return rule;
    return std::nullopt;
}

bool isReductionRule(Rule r) {
    switch (r) {
        case Rule::Lbeta:
        case Rule::CpIn:
        case Rule::CpE:
        case Rule::LletIn:
        case Rule::LletE:
        case Rule::Lapp:
        case Rule::Lcase:
        case Rule::Lseq:
        case Rule::SeqC:
        case Rule::SeqIn:
        case Rule::SeqE:
        case Rule::CaseC:
        case Rule::CaseIn:
        case Rule::CaseE:
        case Rule::Gc1:
        case Rule::Gc2:
            return true;
        default:
            return false;
    }
}

const char* statusName(EvalStatus s) {
    switch (s) {
        case EvalStatus::Whnf: return "WHNF";
        case EvalStatus::FuelExhausted: return "FuelExhausted";
        case EvalStatus::Blackhole: return "Blackhole";
    }
    return "?";
}

// ---- binder index scratch ------------------------------------------------------

namespace {

// flat NameId -> binding index map with epoch invalidation; labeling and
// gc run per step, so rebuilding a hash map each time would dominate
struct BinderScratch {
    std::vector<std::uint64_t> epochOf;
    std::vector<int> indexOf;
    std::uint64_t epoch = 0;

    void begin(const std::vector<Binding>& binds) {
        ++epoch;
        for (std::size_t i = 0; i < binds.size(); ++i) {
            NameId v = binds[i].var;
            if (v >= epochOf.size()) {
                epochOf.resize(v + 64, 0);
                indexOf.resize(v + 64, -1);
            }
            epochOf[v] = epoch;
            indexOf[v] = static_cast<int>(i);
        }
    }

    int find(NameId v) const {
        if (v >= epochOf.size() || epochOf[v] != epoch) return -1;
        return indexOf[v];
    }
};

BinderScratch& binderScratch() {
    static thread_local BinderScratch s;
    return s;
}

} // namespace

// ---- garbage collection ----------------------------------------------------------

GcResult gcMax(const ExprPtr& e) {
    if (e->tag != Tag::Letrec) return {e, false, Rule::Gc1};
    const auto& binds = e->binds;
    auto& scratch = binderScratch();
    scratch.begin(binds);

    static thread_local std::vector<char> reachable;
    static thread_local std::vector<int> work;
    reachable.assign(binds.size(), 0);
    work.clear();
    std::size_t keep = 0;
    auto enter = [&](NameId v) {
        int i = scratch.find(v);
        if (i >= 0 && !reachable[i]) {
            reachable[i] = 1;
            ++keep;
            work.push_back(i);
        }
    };
    for (NameId v : freeVarsSorted(e->body)) enter(v);
    while (!work.empty()) {
        int i = work.back();
        work.pop_back();
        for (NameId v : freeVarsSorted(binds[i].rhs)) enter(v);
    }

    if (keep == binds.size()) return {e, false, Rule::Gc1};
    if (keep == 0) return {e->body, true, Rule::Gc2};
    std::vector<Binding> kept;
    kept.reserve(keep);
    for (std::size_t i = 0; i < binds.size(); ++i)
        if (reachable[i]) kept.push_back(binds[i]);
    return {mkLetrec(std::move(kept), e->body), true, Rule::Gc1};
}

// ---- WHNF -------------------------------------------------------------------------

bool isWHNF(const ExprPtr& e) {
    if (isValue(*e)) return true;
    if (e->tag != Tag::Letrec) return false;
    if (isValue(*e->body)) return true;
    if (e->body->tag != Tag::Var) return false;
    auto& scratch = binderScratch();
    scratch.begin(e->binds);
    std::unordered_set<int> seen;
    int i = scratch.find(e->body->name);
    while (i >= 0 && seen.insert(i).second) {
        const ExprPtr& rhs = e->binds[i].rhs;
        if (rhs->tag == Tag::Con) return true;
        if (rhs->tag != Tag::Var) return false;
        i = scratch.find(rhs->name);
    }
    return false;
}

bool isLRPgcWHNF(const ExprPtr& e) { return isWHNF(e) && !gcMax(e).changed; }

// ---- labeling -----------------------------------------------------------------------

namespace {

DemandKind kindOfParent(const Expr& parent) {
    switch (parent.tag) {
        case Tag::App: return DemandKind::AppFun;
        case Tag::Seq: return DemandKind::SeqFirst;
        case Tag::Case: return DemandKind::CaseScrut;
        default: return DemandKind::TopBody;
    }
}

bool inBindingRegion(const Path& p, std::size_t bindingCount) {
    return !p.empty() && p.steps[0] < static_cast<int>(bindingCount);
}

} // namespace

Labeling labelNoThrow(const ExprPtr& root, bool wantTrail) {
    Labeling lab;
    if (wantTrail) lab.trail.push_back(Path{});

    const bool topLet = root->tag == Tag::Letrec;
    const std::vector<Binding>* binds = topLet ? &root->binds : nullptr;
    auto& scratch = binderScratch();
    if (topLet) scratch.begin(*binds);

    ExprPtr cur = root;
    Path curPath;
    const Expr* parent = nullptr; // syntactic parent of cur on the demand spine

    if (topLet) {
        parent = root.get();
        curPath.steps.push_back(static_cast<int>(binds->size()));
        cur = root->body;
        if (wantTrail) lab.trail.push_back(curPath);
    }

    // visited binding indexes; flat epoch-stamped set, chains can be long
    static thread_local std::vector<std::uint64_t> visitedEpoch;
    static thread_local std::uint64_t visitEpoch = 0;
    ++visitEpoch;
    if (topLet && visitedEpoch.size() < binds->size())
        visitedEpoch.resize(binds->size() + 64, 0);
    bool inChain = false;                   // currently following var-to-var bindings
    Path chainStartPath;
    DemandKind chainStartKind = DemandKind::TopBody;

    auto descend = [&](int childIx) {
        parent = cur.get();
        cur = childAt(cur, childIx);
        curPath.steps.push_back(childIx);
        if (wantTrail) lab.trail.push_back(curPath);
        inChain = false;
    };

    while (true) {
        switch (cur->tag) {
            case Tag::Var: {
                NameId v = cur->name;
                int i = topLet ? scratch.find(v) : -1;
                if (i < 0) {
                    lab.outcome = LabelOutcome::Open;
                    lab.message = nameText(v);
                    return lab;
                }
                if (!inChain) {
                    chainStartPath = curPath;
                    chainStartKind = parent ? kindOfParent(*parent) : DemandKind::TopBody;
                    inChain = true;
                }
                if (wantTrail) lab.chain.emplace_back(v, curPath);
                if (visitedEpoch[i] == visitEpoch) {
                    lab.outcome = LabelOutcome::Blackhole;
                    return lab;
                }
                visitedEpoch[i] = visitEpoch;
                parent = root.get();
                cur = (*binds)[i].rhs;
                curPath.steps.clear();
                curPath.steps.push_back(i);
                if (wantTrail) lab.trail.push_back(curPath);
                break;
            }
            case Tag::Lam:
            case Tag::Con: {
                const bool atRoot = curPath.empty();
                const bool atTopBody =
                    topLet && curPath.steps.size() == 1 &&
                    curPath.steps[0] == static_cast<int>(binds->size());
                if (atRoot || atTopBody) {
                    lab.outcome = LabelOutcome::Whnf;
                    return lab;
                }
                const bool atBindingRhs = topLet && curPath.steps.size() == 1 &&
                                          curPath.steps[0] < static_cast<int>(binds->size());
                lab.outcome = LabelOutcome::Redex;
                lab.focusPath = curPath;
                if (atBindingRhs) {
                    // value reached through an indirection chain
                    lab.targetPath = chainStartPath;
                    lab.targetKind = chainStartKind;
                    if (cur->tag == Tag::Lam) {
                        lab.rule = inBindingRegion(chainStartPath, binds->size())
                                       ? Rule::CpE
                                       : Rule::CpIn;
                        return lab;
                    }
                    switch (chainStartKind) {
                        case DemandKind::TopBody:
                            lab.outcome = LabelOutcome::Whnf; // letrec ... in x chain to constructor
                            return lab;
                        case DemandKind::SeqFirst:
                            lab.rule = inBindingRegion(chainStartPath, binds->size())
                                           ? Rule::SeqE
                                           : Rule::SeqIn;
                            return lab;
                        case DemandKind::CaseScrut:
                            lab.rule = inBindingRegion(chainStartPath, binds->size())
                                           ? Rule::CaseE
                                           : Rule::CaseIn;
                            return lab;
                        case DemandKind::AppFun:
                            lab.outcome = LabelOutcome::Stuck;
                            lab.message = "constructor application in function position";
                            return lab;
                    }
                    return lab;
                }
                // value directly at the demanded position
                switch (parent->tag) {
                    case Tag::App:
                        if (cur->tag != Tag::Lam) {
                            lab.outcome = LabelOutcome::Stuck;
                            lab.message = "constructor application in function position";
                            return lab;
                        }
                        lab.rule = Rule::Lbeta;
                        return lab;
                    case Tag::Seq:
                        lab.rule = Rule::SeqC;
                        return lab;
                    case Tag::Case: {
                        if (cur->tag != Tag::Con) {
                            lab.outcome = LabelOutcome::Stuck;
                            lab.message = "case scrutinee evaluated to an abstraction";
                            return lab;
                        }
                        lab.rule = Rule::CaseC;
                        return lab;
                    }
                    default:
                        lab.outcome = LabelOutcome::Stuck;
                        lab.message = "value in unexpected demand position";
                        return lab;
                }
            }
            case Tag::Letrec: {
                if (curPath.empty()) {
                    // handled before the loop; only possible if root had no top env
                    parent = root.get();
                    throw std::logic_error("top letrec revisited");
                }
                lab.outcome = LabelOutcome::Redex;
                lab.focusPath = curPath;
                if (parent->tag == Tag::App)
                    lab.rule = Rule::Lapp;
                else if (parent->tag == Tag::Case)
                    lab.rule = Rule::Lcase;
                else if (parent->tag == Tag::Seq)
                    lab.rule = Rule::Lseq;
                else if (topLet && curPath.steps.size() == 1 &&
                         curPath.steps[0] == static_cast<int>(binds->size()))
                    lab.rule = Rule::LletIn;
                else if (topLet && curPath.steps.size() == 1)
                    lab.rule = Rule::LletE;
                else
                    throw std::logic_error("nested letrec in unexpected demand position");
                return lab;
            }
            case Tag::App:
            case Tag::Seq:
            case Tag::Case:
                descend(0);
                break;
        }
    }
}

Labeling labelNoThrow(const ExprPtr& root) { return labelNoThrow(root, true); }

Labeling label(const ExprPtr& root) {
    Labeling lab = labelNoThrow(root, true);
    if (lab.outcome == LabelOutcome::Open) throw OpenTermError(lab.message);
    if (lab.outcome == LabelOutcome::Stuck) throw StuckError(lab.message);
    return lab;
}

// trail-free variant for the evaluator loop
Labeling labelForStep(const ExprPtr& root) {
    Labeling lab = labelNoThrow(root, false);
    if (lab.outcome == LabelOutcome::Open) throw OpenTermError(lab.message);
    if (lab.outcome == LabelOutcome::Stuck) throw StuckError(lab.message);
    return lab;
}

// ---- applying the labeled rule -----------------------------------------------------

namespace {

Path parentOf(const Path& p) {
    Path q = p;
    q.steps.pop_back();
    return q;
}

const Alt& altFor(const Expr& caseNode, NameId con) {
    for (const Alt& a : caseNode.alts)
        if (a.con == con) return a;
    throw StuckError("case over " + nameText(caseNode.name) +
                     " scrutinized a " + nameText(con) + " value");
}

// one rebuild for the constructor-binding rewrite, the inserted argument
// bindings and the consumed case/seq node, which may sit in the body or
// in another binding
ExprPtr rebuildTopLetrec(const ExprPtr& root, std::size_t bindingIx, ExprPtr newRhs,
                         std::vector<Binding> inserted, const Path& sitePath,
                         ExprPtr siteRepl) {
    int slot = sitePath.steps.empty() ? -1 : sitePath.steps[0];
    Path rel;
    if (slot >= 0)
        rel = Path(std::vector<int>(sitePath.steps.begin() + 1, sitePath.steps.end()));
    std::vector<Binding> binds;
    binds.reserve(root->binds.size() + inserted.size());
    for (std::size_t i = 0; i < root->binds.size(); ++i) {
        Binding b = root->binds[i];
        if (i == bindingIx && newRhs) b.rhs = newRhs;
        if (slot == static_cast<int>(i)) b.rhs = replaceAt(b.rhs, rel, siteRepl);
        binds.push_back(std::move(b));
        if (i == bindingIx)
            for (auto& ins : inserted) binds.push_back(std::move(ins));
    }
    ExprPtr body = root->body;
    if (slot == static_cast<int>(root->binds.size())) body = replaceAt(body, rel, siteRepl);
    return mkLetrec(std::move(binds), std::move(body));
}

ExprPtr applyLabeled(const ExprPtr& root, const Labeling& lab, NameSupply& ns) {
    switch (lab.rule) {
        case Rule::Lbeta: {
            Path appPath = parentOf(lab.focusPath);
            ExprPtr app = subtermAt(root, appPath);
            const ExprPtr& lam = app->kids[0];
            ExprPtr red = mkLetrec({{lam->name, app->kids[1]}}, lam->kids[0]);
            return replaceAt(root, appPath, red);
        }
        case Rule::CpIn:
        case Rule::CpE: {
            ExprPtr v = subtermAt(root, lab.focusPath);
            ExprPtr copy = freshen(v, ns);
            return replaceAt(root, lab.targetPath, copy);
        }
        case Rule::LletIn: {
            // the focus is the letrec in body position of the top letrec
            ExprPtr inner = subtermAt(root, lab.focusPath);
            std::vector<Binding> binds = root->binds;
            binds.insert(binds.end(), inner->binds.begin(), inner->binds.end());
            return mkLetrec(std::move(binds), inner->body);
        }
        case Rule::LletE: {
            std::size_t ix = static_cast<std::size_t>(lab.focusPath.steps[0]);
            ExprPtr inner = root->binds[ix].rhs;
            std::vector<Binding> binds;
            binds.reserve(root->binds.size() + inner->binds.size());
            for (std::size_t i = 0; i < root->binds.size(); ++i) {
                if (i == ix) {
                    for (const auto& b : inner->binds) binds.push_back(b);
                    binds.push_back({root->binds[i].var, inner->body});
                } else {
                    binds.push_back(root->binds[i]);
                }
            }
            return mkLetrec(std::move(binds), root->body);
        }
        case Rule::Lapp: {
            Path appPath = parentOf(lab.focusPath);
            ExprPtr app = subtermAt(root, appPath);
            const ExprPtr& inner = app->kids[0];
            ExprPtr moved = mkLetrec(inner->binds, mkApp(inner->body, app->kids[1]));
            return replaceAt(root, appPath, moved);
        }
        case Rule::Lcase: {
            Path casePath = parentOf(lab.focusPath);
            ExprPtr cs = subtermAt(root, casePath);
            const ExprPtr& inner = cs->kids[0];
            ExprPtr moved = mkLetrec(inner->binds, mkCase(cs->name, inner->body, cs->alts));
            return replaceAt(root, casePath, moved);
        }
        case Rule::Lseq: {
            Path seqPath = parentOf(lab.focusPath);
            ExprPtr sq = subtermAt(root, seqPath);
            const ExprPtr& inner = sq->kids[0];
            ExprPtr moved = mkLetrec(inner->binds, mkSeq(inner->body, sq->kids[1]));
            return replaceAt(root, seqPath, moved);
        }
        case Rule::SeqC: {
            Path seqPath = parentOf(lab.focusPath);
            ExprPtr sq = subtermAt(root, seqPath);
            return replaceAt(root, seqPath, sq->kids[1]);
        }
        case Rule::SeqIn:
        case Rule::SeqE: {
            Path seqPath = parentOf(lab.targetPath);
            ExprPtr sq = subtermAt(root, seqPath);
            return replaceAt(root, seqPath, sq->kids[1]);
        }
        case Rule::CaseC: {
            Path casePath = parentOf(lab.focusPath);
            ExprPtr cs = subtermAt(root, casePath);
            const ExprPtr& con = cs->kids[0];
            const Alt& alt = altFor(*cs, con->name);
            if (alt.vars.empty()) return replaceAt(root, casePath, alt.rhs);
            std::vector<Binding> binds;
            binds.reserve(alt.vars.size());
            for (std::size_t i = 0; i < alt.vars.size(); ++i)
                binds.push_back({alt.vars[i], con->kids[i]});
            return replaceAt(root, casePath, mkLetrec(std::move(binds), alt.rhs));
        }
        case Rule::CaseIn:
        case Rule::CaseE: {
            std::size_t bindingIx = static_cast<std::size_t>(lab.focusPath.steps[0]);
            ExprPtr con = subtermAt(root, lab.focusPath);
            Path casePath = parentOf(lab.targetPath);
            ExprPtr cs = subtermAt(root, casePath);
            const Alt& alt = altFor(*cs, con->name);
            if (alt.vars.empty()) {
                // nullary constructor: take the alternative in place
                return replaceAt(root, casePath, alt.rhs);
            }
            // abstract the constructor arguments into fresh shared bindings
            std::vector<ExprPtr> freshVars;
            std::vector<Binding> argBinds;
            std::vector<Binding> patBinds;
            for (std::size_t i = 0; i < alt.vars.size(); ++i) {
                NameId y = ns.fresh(alt.vars[i]);
                freshVars.push_back(mkVar(y));
                argBinds.push_back({y, con->kids[i]});
                patBinds.push_back({alt.vars[i], freshVars[i]});
            }
            ExprPtr newCase = mkLetrec(std::move(patBinds), alt.rhs);
            return rebuildTopLetrec(root, bindingIx, mkCon(con->name, freshVars),
                                    std::move(argBinds), casePath, std::move(newCase));
        }
        default:
            throw std::logic_error("applyLabeled: not a normal-order rule");
    }
}

} // namespace

// ---- stepping ------------------------------------------------------------------------

StepOutcome step(const ExprPtr& e, NameSupply& ns) {
    GcResult gc = gcMax(e);
    if (gc.changed) return {StepResult{gc.expr, gc.rule}, EvalStatus::Whnf};
    Labeling lab = labelForStep(e);
    if (lab.outcome == LabelOutcome::Whnf) return {std::nullopt, EvalStatus::Whnf};
    if (lab.outcome == LabelOutcome::Blackhole)
        return {std::nullopt, EvalStatus::Blackhole};
    return {StepResult{applyLabeled(e, lab, ns), lab.rule}, EvalStatus::Whnf};
}

namespace {

void countRule(Measures& m, Rule r) {
    switch (r) {
        case Rule::Lbeta:
        case Rule::SeqC:
        case Rule::SeqIn:
        case Rule::SeqE:
        case Rule::CaseC:
        case Rule::CaseIn:
        case Rule::CaseE:
            ++m.rln;
            ++m.rlnLCSC;
            ++m.rlnall;
            break;
        case Rule::CpIn:
        case Rule::CpE:
            ++m.rlnLCSC;
            ++m.rlnall;
            break;
        default:
            ++m.rlnall;
            break;
    }
}

} // namespace

EvalResult evaluate(const ExprPtr& e, std::uint64_t fuel, const SizeOptions& opts,
                    std::uint64_t seed) {
    if (!isClosed(e)) {
        throw OpenTermError(nameText(freeVarsSorted(e).front()));
    }
    NameSupply ns(seed);
    ns.reserveAllNames(e);
    ExprPtr cur = hasDistinctBinders(e) ? e : freshen(e, ns);

    EvalResult res;
    std::uint64_t sampledMax = 0;
    bool sampledAny = false;
    std::uint64_t nonGcSteps = 0;
    // rules that neither change any free-variable set nor touch the top
    // environment cannot enable a collection that was impossible before
    bool gcUnchangedSinceCheck = false;

    while (true) {
        if (!gcUnchangedSinceCheck) {
            GcResult gc = gcMax(cur);
            if (gc.changed) {
                res.steps.push_back({gc.rule, size(cur, opts)});
                cur = gc.expr;
                continue;
            }
        }
        gcUnchangedSinceCheck = false;
        Labeling lab = labelForStep(cur);
        if (lab.outcome == LabelOutcome::Whnf) {
            std::uint64_t sz = size(cur, opts);
            sampledMax = std::max(sampledMax, sz);
            sampledAny = true;
            res.status = EvalStatus::Whnf;
            break;
        }
        if (lab.outcome == LabelOutcome::Blackhole) {
            res.status = EvalStatus::Blackhole;
            break;
        }
        if (nonGcSteps >= fuel) {
            res.status = EvalStatus::FuelExhausted;
            break;
        }
        std::uint64_t sz = size(cur, opts);
        sampledMax = std::max(sampledMax, sz);
        sampledAny = true;
        res.steps.push_back({lab.rule, sz});
        cur = applyLabeled(cur, lab, ns);
        ++nonGcSteps;
        countRule(res.measures, lab.rule);
        switch (lab.rule) {
            case Rule::Lbeta:
            case Rule::Lapp:
            case Rule::Lcase:
            case Rule::Lseq:
                // unless the rewrite created a new top letrec
                gcUnchangedSinceCheck = lab.focusPath.depth() >= 2;
                break;
            default:
                break;
        }
    }

    res.final = cur;
    if (res.status == EvalStatus::Blackhole)
        res.measures.spmax = std::nullopt;
    else
        res.measures.spmax = sampledAny ? sampledMax : 0;
    return res;
}

std::string formatSummary(const EvalResult& r) {
    std::ostringstream os;
    os << statusName(r.status) << '\t' << r.measures.rln << '\t' << r.measures.rlnall
       << '\t' << r.measures.rlnLCSC << '\t';
    if (r.measures.spmax)
        os << *r.measures.spmax;
    else
        os << "inf";
    return os.str();
}

std::string formatTraceLine(std::size_t index, const TraceStep& s) {
    std::ostringstream os;
    os << index << '\t' << ruleName(s.rule) << '\t' << s.sizeBefore;
    return os.str();
}

} // namespace lazylet
