#include "lazylet/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lazylet {

const char* contextClassName(ContextClass c) {
    switch (c) {
        case ContextClass::General: return "general";
        case ContextClass::Surface: return "surface";
        case ContextClass::Top: return "top";
        case ContextClass::Reduction: return "reduction";
    }
    return "?";
}

int contextRank(ContextClass c) {
    switch (c) {
        case ContextClass::General: return 0;
        case ContextClass::Surface: return 1;
        case ContextClass::Top: return 2;
        case ContextClass::Reduction: return 3;
    }
    return 0;
}

ContextClass classifyContext(const ExprPtr& e, const Path& p) {
    bool underLam = false;
    bool inAlt = false;
    ExprPtr cur = e;
    for (std::size_t d = 0; d < p.steps.size(); ++d) {
        int i = p.steps[d];
        if (cur->tag == Tag::Lam) underLam = true;
        if (cur->tag == Tag::Case && i >= 1) inAlt = true;
        cur = childAt(cur, i); // throws on invalid path
    }
    if (underLam) return ContextClass::General;
    if (inAlt) return ContextClass::Surface;
    // the demand trail is meaningful even when the search ends open or
    // stuck: positions walked so far are where reduction takes place
    Labeling lab = labelNoThrow(e);
    for (const Path& t : lab.trail)
        if (t == p) return ContextClass::Reduction;
    return ContextClass::Top;
}

// ---- helpers ---------------------------------------------------------------

namespace {

Path relativize(const Path& base, const Path& abs) {
    if (!base.isPrefixOf(abs)) throw TransformError("position outside anchor");
    return Path(std::vector<int>(abs.steps.begin() + base.depth(), abs.steps.end()));
}

Path parentOf(const Path& p) {
    Path q = p;
    q.steps.pop_back();
    return q;
}

// index of the binding named v, or -1
int bindingOf(const std::vector<Binding>& binds, NameId v) {
    for (std::size_t i = 0; i < binds.size(); ++i)
        if (binds[i].var == v) return static_cast<int>(i);
    return -1;
}

// follow x_m = x_{m-1} = ... within binds; returns the index of the
// first binding with a non-variable right-hand side, or -1 on a cycle
// or when the chain leaves the environment
int followChain(const std::vector<Binding>& binds, NameId v) {
    std::set<int> seen;
    int i = bindingOf(binds, v);
    while (i >= 0 && seen.insert(i).second) {
        const ExprPtr& rhs = binds[i].rhs;
        if (rhs->tag != Tag::Var) return i;
        int j = bindingOf(binds, rhs->name);
        if (j < 0) return -1;
        i = j;
    }
    return -1;
}

struct Occurrence {
    NameId var;
    Path path; // absolute
};

// free occurrences of the binders of an environment inside a subterm,
// honoring shadowing by nested binders
void occWalk(const ExprPtr& e, const Path& p, std::set<NameId> active,
             std::vector<Occurrence>& out) {
    if (active.empty()) return;
    switch (e->tag) {
        case Tag::Var:
            if (active.count(e->name)) out.push_back({e->name, p});
            return;
        case Tag::Lam: {
            active.erase(e->name);
            occWalk(e->kids[0], p.child(0), std::move(active), out);
            return;
        }
        case Tag::Case: {
            occWalk(e->kids[0], p.child(0), active, out);
            for (std::size_t i = 0; i < e->alts.size(); ++i) {
                std::set<NameId> inner = active;
                for (NameId v : e->alts[i].vars) inner.erase(v);
                occWalk(e->alts[i].rhs, p.child(static_cast<int>(i) + 1), std::move(inner),
                        out);
            }
            return;
        }
        case Tag::Letrec: {
            for (const auto& b : e->binds) active.erase(b.var);
            if (active.empty()) return;
            for (std::size_t i = 0; i < e->binds.size(); ++i)
                occWalk(e->binds[i].rhs, p.child(static_cast<int>(i)), active, out);
            occWalk(e->body, p.child(static_cast<int>(e->binds.size())), active, out);
            return;
        }
        default:
            for (std::size_t i = 0; i < e->kids.size(); ++i)
                occWalk(e->kids[i], p.child(static_cast<int>(i)), active, out);
            return;
    }
}

std::vector<Occurrence> occurrencesIn(const ExprPtr& letrec, const Path& pL) {
    std::set<NameId> binders;
    for (const auto& b : letrec->binds) binders.insert(b.var);
    std::vector<Occurrence> out;
    for (std::size_t i = 0; i < letrec->binds.size(); ++i)
        occWalk(letrec->binds[i].rhs, pL.child(static_cast<int>(i)), binders, out);
    occWalk(letrec->body, pL.child(static_cast<int>(letrec->binds.size())), binders, out);
    return out;
}

// does the occurrence sit in the body (in) or in a binding (e) of the
// letrec at pL
bool inBodyRegion(const ExprPtr& letrec, const Path& pL, const Path& occ) {
    Path rel = relativize(pL, occ);
    return rel.steps[0] == static_cast<int>(letrec->binds.size());
}

// surface within its slot: no abstraction between the slot root and p
bool surfaceWithinSlot(const ExprPtr& root, const Path& pL, const Path& p) {
    Path rel = relativize(pL, p);
    ExprPtr cur = subtermAt(root, pL);
    for (std::size_t d = 0; d < rel.steps.size(); ++d) {
        if (d > 0 && cur->tag == Tag::Lam) return false;
        cur = childAt(cur, rel.steps[d]);
    }
    return true;
}

ExprPtr substVar(const ExprPtr& e, NameId from, NameId to) {
    if (!freeIn(from, e)) return e;
    switch (e->tag) {
        case Tag::Var:
            return e->name == from ? mkVar(to) : e;
        case Tag::App:
            return mkApp(substVar(e->kids[0], from, to), substVar(e->kids[1], from, to));
        case Tag::Seq:
            return mkSeq(substVar(e->kids[0], from, to), substVar(e->kids[1], from, to));
        case Tag::Lam:
            if (e->name == from) return e;
            return mkLam(e->name, substVar(e->kids[0], from, to));
        case Tag::Con: {
            std::vector<ExprPtr> args;
            args.reserve(e->kids.size());
            for (const auto& k : e->kids) args.push_back(substVar(k, from, to));
            return mkCon(e->name, std::move(args));
        }
        case Tag::Case: {
            std::vector<Alt> alts = e->alts;
            for (auto& a : alts) {
                if (std::find(a.vars.begin(), a.vars.end(), from) != a.vars.end())
                    continue;
                a.rhs = substVar(a.rhs, from, to);
            }
            return mkCase(e->name, substVar(e->kids[0], from, to), std::move(alts));
        }
        case Tag::Letrec: {
            for (const auto& b : e->binds)
                if (b.var == from) return e;
            std::vector<Binding> binds = e->binds;
            for (auto& b : binds) b.rhs = substVar(b.rhs, from, to);
            return mkLetrec(std::move(binds), substVar(e->body, from, to));
        }
    }
    return e;
}

const Alt& altFor(const Expr& caseNode, NameId con) {
    for (const Alt& a : caseNode.alts)
        if (a.con == con) return a;
    throw TransformError("case over " + nameText(caseNode.name) +
                         " has no alternative for " + nameText(con));
}

bool allDistinctVars(const Expr& con) {
    std::set<NameId> seen;
    for (const auto& k : con.kids) {
        if (k->tag != Tag::Var) return false;
        if (!seen.insert(k->name).second) return false;
    }
    return true;
}

ExprPtr rebuildLetrec(const ExprPtr& letrec, std::size_t bindingIx, ExprPtr newRhs,
                      std::vector<Binding> inserted) {
    std::vector<Binding> binds;
    binds.reserve(letrec->binds.size() + inserted.size());
    for (std::size_t i = 0; i < letrec->binds.size(); ++i) {
        Binding b = letrec->binds[i];
        if (i == bindingIx && newRhs) b.rhs = newRhs;
        binds.push_back(std::move(b));
        if (i == bindingIx)
            for (auto& ins : inserted) binds.push_back(std::move(ins));
    }
    return mkLetrec(std::move(binds), letrec->body);
}

ExprPtr dropBinding(const ExprPtr& letrec, std::size_t ix) {
    std::vector<Binding> binds;
    binds.reserve(letrec->binds.size() - 1);
    for (std::size_t i = 0; i < letrec->binds.size(); ++i)
        if (i != ix) binds.push_back(letrec->binds[i]);
    return mkLetrec(std::move(binds), letrec->body);
}

// reachability of binding j from the body, optionally pretending one
// binding was removed
bool reachableFromBody(const ExprPtr& letrec, int target, int without) {
    const auto& binds = letrec->binds;
    std::vector<char> reach(binds.size(), 0);
    std::vector<int> work;
    auto enter = [&](NameId v) {
        int i = bindingOf(binds, v);
        if (i >= 0 && i != without && !reach[i]) {
            reach[i] = 1;
            work.push_back(i);
        }
    };
    for (NameId v : freeVarsSorted(letrec->body)) enter(v);
    while (!work.empty()) {
        int i = work.back();
        work.pop_back();
        for (NameId v : freeVarsSorted(binds[i].rhs)) enter(v);
    }
    return reach[target] != 0;
}

// ---- instance enumeration ---------------------------------------------------

struct Enumerator {
    const ExprPtr& root;
    Rule rule;
    std::vector<RuleInstance> out;

    void add(Rule r, const Path& position, const Path& letrecPath = Path{},
             int bi = -1, int bi2 = -1, int alt = -1) {
        RuleInstance inst;
        inst.rule = r;
        inst.position = position;
        inst.contextClass = classifyContext(root, position);
        inst.letrecPath = letrecPath;
        inst.bindingIndex = bi;
        inst.bindingIndex2 = bi2;
        inst.altIndex = alt;
        out.push_back(std::move(inst));
    }

    void visit(const ExprPtr& e, const Path& p) {
        switch (rule) {
            case Rule::Lbeta:
                if (e->tag == Tag::App && e->kids[0]->tag == Tag::Lam) add(rule, p);
                break;
            case Rule::SeqC:
                if (e->tag == Tag::Seq && isValue(*e->kids[0])) add(rule, p);
                break;
            case Rule::CaseC:
                if (e->tag == Tag::Case && e->kids[0]->tag == Tag::Con) {
                    for (std::size_t i = 0; i < e->alts.size(); ++i)
                        if (e->alts[i].con == e->kids[0]->name)
                            add(rule, p, Path{}, -1, -1, static_cast<int>(i));
                }
                break;
            case Rule::Lapp:
                if (e->tag == Tag::App && e->kids[0]->tag == Tag::Letrec) add(rule, p);
                break;
            case Rule::Lcase:
                if (e->tag == Tag::Case && e->kids[0]->tag == Tag::Letrec) add(rule, p);
                break;
            case Rule::Lseq:
                if (e->tag == Tag::Seq && e->kids[0]->tag == Tag::Letrec) add(rule, p);
                break;
            case Rule::LletIn:
                if (e->tag == Tag::Letrec && e->body->tag == Tag::Letrec) add(rule, p);
                break;
            case Rule::LletE:
                if (e->tag == Tag::Letrec)
                    for (std::size_t i = 0; i < e->binds.size(); ++i)
                        if (e->binds[i].rhs->tag == Tag::Letrec)
                            add(rule, p, p, static_cast<int>(i));
                break;
            case Rule::Gc1:
            case Rule::Gc2:
                if (e->tag == Tag::Letrec) {
                    GcResult g = gcMax(e);
                    if (g.changed && g.rule == rule) add(rule, p, p);
                }
                break;
            case Rule::CaseId:
                if (e->tag == Tag::Case) {
                    bool id = true;
                    for (const Alt& a : e->alts) {
                        if (a.rhs->tag != Tag::Con || a.rhs->name != a.con ||
                            a.rhs->kids.size() != a.vars.size()) {
                            id = false;
                            break;
                        }
                        for (std::size_t i = 0; i < a.vars.size(); ++i)
                            if (a.rhs->kids[i]->tag != Tag::Var ||
                                a.rhs->kids[i]->name != a.vars[i]) {
                                id = false;
                                break;
                            }
                        if (!id) break;
                    }
                    if (id) add(rule, p);
                }
                break;
            case Rule::Abse:
                if (e->tag == Tag::Con && !e->kids.empty()) add(rule, p);
                break;
            default:
                if (e->tag == Tag::Letrec) visitLetrec(e, p);
                break;
        }
        // recurse in child order
        int n = childCount(*e);
        for (int i = 0; i < n; ++i) visit(childAt(e, i), p.child(i));
    }

    void visitLetrec(const ExprPtr& e, const Path& p) {
        const auto& binds = e->binds;
        switch (rule) {
            case Rule::CpIn:
            case Rule::CpE:
            case Rule::CpS: {
                for (const Occurrence& occ : occurrencesIn(e, p)) {
                    int j = followChain(binds, occ.var);
                    if (j < 0 || binds[j].rhs->tag != Tag::Lam) continue;
                    bool inBody = inBodyRegion(e, p, occ.path);
                    if (rule == Rule::CpIn && !inBody) continue;
                    if (rule == Rule::CpE && inBody) continue;
                    if (rule == Rule::CpS &&
                        contextRank(classifyContext(root, occ.path)) <
                            contextRank(ContextClass::Surface))
                        continue;
                    add(rule, occ.path, p, j);
                }
                break;
            }
            case Rule::CpxIn:
            case Rule::CpxE: {
                for (const Occurrence& occ : occurrencesIn(e, p)) {
                    int i = bindingOf(binds, occ.var);
                    if (i < 0) continue;
                    const ExprPtr& rhs = binds[i].rhs;
                    if (rhs->tag != Tag::Var || rhs->name == occ.var) continue;
                    // skip the chain binding's own right-hand side, x = y is kept
                    bool inBody = inBodyRegion(e, p, occ.path);
                    if (rule == Rule::CpxIn && !inBody) continue;
                    if (rule == Rule::CpxE && inBody) continue;
                    add(rule, occ.path, p, i);
                }
                break;
            }
            case Rule::CpcxIn:
            case Rule::CpcxE:
            case Rule::CpcxT: {
                for (const Occurrence& occ : occurrencesIn(e, p)) {
                    int i = bindingOf(binds, occ.var);
                    if (i < 0 || binds[i].rhs->tag != Tag::Con) continue;
                    bool inBody = inBodyRegion(e, p, occ.path);
                    if (rule == Rule::CpcxIn && !inBody) continue;
                    if (rule == Rule::CpcxE && inBody) continue;
                    if (rule == Rule::CpcxT &&
                        contextRank(classifyContext(root, occ.path)) <
                            contextRank(ContextClass::Top))
                        continue;
                    add(rule, occ.path, p, i);
                }
                break;
            }
            case Rule::Abs: {
                for (std::size_t i = 0; i < binds.size(); ++i)
                    if (binds[i].rhs->tag == Tag::Con && !binds[i].rhs->kids.empty())
                        add(rule, p.child(static_cast<int>(i)), p, static_cast<int>(i));
                break;
            }
            case Rule::Xch: {
                for (std::size_t j = 0; j < binds.size(); ++j) {
                    if (binds[j].rhs->tag != Tag::Var) continue;
                    int i = bindingOf(binds, binds[j].rhs->name);
                    if (i < 0 || i == static_cast<int>(j)) continue;
                    add(rule, p, p, i, static_cast<int>(j));
                }
                break;
            }
            case Rule::GcEq: {
                for (std::size_t i = 0; i < binds.size(); ++i) {
                    const ExprPtr& rhs = binds[i].rhs;
                    if (rhs->tag != Tag::Var || rhs->name == binds[i].var) continue;
                    int j = bindingOf(binds, rhs->name);
                    if (j < 0) continue;
                    // x unused anywhere
                    bool used = false;
                    for (const Occurrence& occ : occurrencesIn(e, p))
                        if (occ.var == binds[i].var) {
                            used = true;
                            break;
                        }
                    if (used) continue;
                    if (!reachableFromBody(e, j, static_cast<int>(i))) continue;
                    add(rule, p, p, static_cast<int>(i), j);
                }
                break;
            }
            case Rule::Cse: {
                for (std::size_t i = 0; i < binds.size(); ++i) {
                    for (std::size_t j = i + 1; j < binds.size(); ++j) {
                        if (!alphaEqual(binds[i].rhs, binds[j].rhs)) continue;
                        if (freeIn(binds[i].var, binds[i].rhs)) continue;
                        if (freeIn(binds[j].var, binds[i].rhs)) continue;
                        add(rule, p, p, static_cast<int>(i), static_cast<int>(j));
                    }
                }
                break;
            }
            case Rule::Ucp1:
            case Rule::Ucp2:
            case Rule::Ucp3: {
                auto occs = occurrencesIn(e, p);
                for (std::size_t i = 0; i < binds.size(); ++i) {
                    NameId x = binds[i].var;
                    std::vector<const Occurrence*> mine;
                    for (const auto& occ : occs)
                        if (occ.var == x) mine.push_back(&occ);
                    if (mine.size() != 1) continue;
                    const Occurrence& occ = *mine[0];
                    Path rel = relativize(p, occ.path);
                    if (rel.steps[0] == static_cast<int>(i)) continue; // occurs in own rhs
                    if (!surfaceWithinSlot(root, p, occ.path)) continue;
                    bool inBody = inBodyRegion(e, p, occ.path);
                    Rule shape = inBody ? (binds.size() == 1 ? Rule::Ucp3 : Rule::Ucp1)
                                        : Rule::Ucp2;
                    if (shape != rule) continue;
                    add(rule, occ.path, p, static_cast<int>(i));
                }
                break;
            }
            case Rule::SeqIn:
            case Rule::SeqE:
            case Rule::CaseIn:
            case Rule::CaseE:
            case Rule::CaseCx:
            case Rule::CaseStar:
                visitDemandNodes(e, p);
                break;
            default:
                break;
        }
    }

    // seq/case nodes inside the letrec whose demanded position is a
    // variable chained to a constructor binding
    void visitDemandNodes(const ExprPtr& letrec, const Path& pL) {
        std::set<NameId> binders;
        for (const auto& b : letrec->binds) binders.insert(b.var);
        for (int i = 0; i <= static_cast<int>(letrec->binds.size()); ++i)
            demandWalk(letrec, pL, childAt(letrec, i), pL.child(i), binders);
    }

    void demandWalk(const ExprPtr& letrec, const Path& pL, const ExprPtr& e,
                    const Path& p, std::set<NameId> active) {
        switch (e->tag) {
            case Tag::Lam: {
                active.erase(e->name);
                demandWalk(letrec, pL, e->kids[0], p.child(0), std::move(active));
                return;
            }
            case Tag::Case:
            case Tag::Seq: {
                const ExprPtr& head = e->kids[0];
                if (head->tag == Tag::Var && active.count(head->name)) {
                    int j = followChain(letrec->binds, head->name);
                    if (j >= 0 && letrec->binds[j].rhs->tag == Tag::Con)
                        emitDemand(letrec, pL, e, p, j);
                }
                break;
            }
            case Tag::Letrec:
                for (const auto& b : e->binds) active.erase(b.var);
                break;
            default:
                break;
        }
        int n = childCount(*e);
        for (int i = 0; i < n; ++i) {
            std::set<NameId> inner = active;
            if (e->tag == Tag::Case && i >= 1)
                for (NameId v : e->alts[i - 1].vars) inner.erase(v);
            demandWalk(letrec, pL, childAt(e, i), p.child(i), std::move(inner));
        }
    }

    void emitDemand(const ExprPtr& letrec, const Path& pL, const ExprPtr& node,
                    const Path& p, int bindingIx) {
        const ExprPtr& con = letrec->binds[bindingIx].rhs;
        bool inBody = inBodyRegion(letrec, pL, p);
        if (node->tag == Tag::Seq) {
            if (rule == Rule::SeqIn && inBody) add(rule, p, pL, bindingIx);
            if (rule == Rule::SeqE && !inBody) add(rule, p, pL, bindingIx);
            return;
        }
        // case node
        int altIx = -1;
        for (std::size_t i = 0; i < node->alts.size(); ++i)
            if (node->alts[i].con == con->name) altIx = static_cast<int>(i);
        if (altIx < 0) return; // ill-typed scrutinee
        bool cx = allDistinctVars(*con) && !con->kids.empty();
        switch (rule) {
            case Rule::CaseIn:
                if (inBody) add(rule, p, pL, bindingIx, -1, altIx);
                break;
            case Rule::CaseE:
                if (!inBody) add(rule, p, pL, bindingIx, -1, altIx);
                break;
            case Rule::CaseCx:
                if (cx) add(rule, p, pL, bindingIx, -1, altIx);
                break;
            case Rule::CaseStar:
                add(rule, p, pL, bindingIx, -1, altIx);
                break;
            default:
                break;
        }
    }
};

} // namespace

std::vector<RuleInstance> listRedexes(const ExprPtr& e, Rule rule) {
    Enumerator en{e, rule, {}};
    // caseStar also covers the direct constructor scrutinee; reuse the
    // case-c matcher in the same pass
    if (rule == Rule::CaseStar) {
        Enumerator direct{e, Rule::CaseC, {}};
        direct.visit(e, Path{});
        en.visit(e, Path{});
        std::vector<RuleInstance> merged;
        for (auto& i : direct.out) {
            i.rule = Rule::CaseStar;
            merged.push_back(std::move(i));
        }
        for (auto& i : en.out) merged.push_back(std::move(i));
        std::sort(merged.begin(), merged.end(),
                  [](const RuleInstance& a, const RuleInstance& b) {
                      return a.position < b.position;
                  });
        return merged;
    }
    en.visit(e, Path{});
    return en.out;
}

// ---- rule application ---------------------------------------------------------

namespace {

bool sameInstance(const RuleInstance& a, const RuleInstance& b) {
    return a.position == b.position && a.letrecPath == b.letrecPath &&
           a.bindingIndex == b.bindingIndex && a.bindingIndex2 == b.bindingIndex2;
}

ExprPtr applyMatched(const ExprPtr& root, const RuleInstance& inst, NameSupply& ns) {
    switch (inst.rule) {
        case Rule::Lbeta: {
            ExprPtr app = subtermAt(root, inst.position);
            const ExprPtr& lam = app->kids[0];
            return replaceAt(root, inst.position,
                             mkLetrec({{lam->name, app->kids[1]}}, lam->kids[0]));
        }
        case Rule::CpIn:
        case Rule::CpE:
        case Rule::CpS: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr copy = freshen(L->binds[inst.bindingIndex].rhs, ns);
            return replaceAt(root, inst.position, copy);
        }
        case Rule::LletIn: {
            ExprPtr outer = subtermAt(root, inst.position);
            std::vector<Binding> binds = outer->binds;
            const ExprPtr& inner = outer->body;
            binds.insert(binds.end(), inner->binds.begin(), inner->binds.end());
            return replaceAt(root, inst.position, mkLetrec(std::move(binds), inner->body));
        }
        case Rule::LletE: {
            ExprPtr outer = subtermAt(root, inst.position);
            std::size_t ix = static_cast<std::size_t>(inst.bindingIndex);
            const ExprPtr& inner = outer->binds[ix].rhs;
            std::vector<Binding> binds;
            for (std::size_t i = 0; i < outer->binds.size(); ++i) {
                if (i == ix) {
                    for (const auto& b : inner->binds) binds.push_back(b);
                    binds.push_back({outer->binds[i].var, inner->body});
                } else {
                    binds.push_back(outer->binds[i]);
                }
            }
            return replaceAt(root, inst.position, mkLetrec(std::move(binds), outer->body));
        }
        case Rule::Lapp: {
            ExprPtr app = subtermAt(root, inst.position);
            const ExprPtr& inner = app->kids[0];
            return replaceAt(root, inst.position,
                             mkLetrec(inner->binds, mkApp(inner->body, app->kids[1])));
        }
        case Rule::Lcase: {
            ExprPtr cs = subtermAt(root, inst.position);
            const ExprPtr& inner = cs->kids[0];
            return replaceAt(root, inst.position,
                             mkLetrec(inner->binds, mkCase(cs->name, inner->body, cs->alts)));
        }
        case Rule::Lseq: {
            ExprPtr sq = subtermAt(root, inst.position);
            const ExprPtr& inner = sq->kids[0];
            return replaceAt(root, inst.position,
                             mkLetrec(inner->binds, mkSeq(inner->body, sq->kids[1])));
        }
        case Rule::SeqC:
        case Rule::SeqIn:
        case Rule::SeqE: {
            ExprPtr sq = subtermAt(root, inst.position);
            return replaceAt(root, inst.position, sq->kids[1]);
        }
        case Rule::CaseC: {
            ExprPtr cs = subtermAt(root, inst.position);
            const ExprPtr& con = cs->kids[0];
            const Alt& alt = altFor(*cs, con->name);
            if (alt.vars.empty()) return replaceAt(root, inst.position, alt.rhs);
            std::vector<Binding> binds;
            for (std::size_t i = 0; i < alt.vars.size(); ++i)
                binds.push_back({alt.vars[i], con->kids[i]});
            return replaceAt(root, inst.position, mkLetrec(std::move(binds), alt.rhs));
        }
        case Rule::CaseIn:
        case Rule::CaseE: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr con = L->binds[inst.bindingIndex].rhs;
            Path relCase = relativize(inst.letrecPath, inst.position);
            ExprPtr cs = subtermAt(L, relCase);
            const Alt& alt = altFor(*cs, con->name);
            if (alt.vars.empty()) {
                ExprPtr L1 = replaceAt(L, relCase, alt.rhs);
                return replaceAt(root, inst.letrecPath, L1);
            }
            std::vector<ExprPtr> freshVars;
            std::vector<Binding> argBinds, patBinds;
            for (std::size_t i = 0; i < alt.vars.size(); ++i) {
                NameId y = ns.fresh(alt.vars[i]);
                freshVars.push_back(mkVar(y));
                argBinds.push_back({y, con->kids[i]});
                patBinds.push_back({alt.vars[i], freshVars[i]});
            }
            ExprPtr L1 = replaceAt(L, relCase, mkLetrec(std::move(patBinds), alt.rhs));
            ExprPtr L2 = rebuildLetrec(L1, inst.bindingIndex, mkCon(con->name, freshVars),
                                       std::move(argBinds));
            return replaceAt(root, inst.letrecPath, L2);
        }
        case Rule::CaseCx: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr con = L->binds[inst.bindingIndex].rhs;
            Path relCase = relativize(inst.letrecPath, inst.position);
            ExprPtr cs = subtermAt(L, relCase);
            const Alt& alt = altFor(*cs, con->name);
            ExprPtr repl;
            if (alt.vars.empty()) {
                repl = alt.rhs;
            } else {
                std::vector<Binding> binds;
                for (std::size_t i = 0; i < alt.vars.size(); ++i)
                    binds.push_back({alt.vars[i], con->kids[i]});
                repl = mkLetrec(std::move(binds), alt.rhs);
            }
            ExprPtr L1 = replaceAt(L, relCase, repl);
            return replaceAt(root, inst.letrecPath, L1);
        }
        case Rule::CaseStar: {
            // optimized dispatch: constructor of distinct variables uses
            // the binding-preserving variant, everything else the plain rule
            RuleInstance eff = inst;
            if (inst.letrecPath == inst.position && inst.bindingIndex < 0) {
                eff.rule = Rule::CaseC;
            } else if (inst.bindingIndex >= 0) {
                ExprPtr L = subtermAt(root, inst.letrecPath);
                const ExprPtr& con = L->binds[inst.bindingIndex].rhs;
                if (allDistinctVars(*con) && !con->kids.empty())
                    eff.rule = Rule::CaseCx;
                else
                    eff.rule = inBodyRegion(L, inst.letrecPath, inst.position)
                                   ? Rule::CaseIn
                                   : Rule::CaseE;
            } else {
                eff.rule = Rule::CaseC;
            }
            return applyMatched(root, eff, ns);
        }
        case Rule::Gc1:
        case Rule::Gc2: {
            ExprPtr L = subtermAt(root, inst.position);
            GcResult g = gcMax(L);
            if (!g.changed || g.rule != inst.rule)
                throw TransformError("gc instance no longer matches");
            return replaceAt(root, inst.position, g.expr);
        }
        case Rule::CpxIn:
        case Rule::CpxE: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            return replaceAt(root, inst.position,
                             mkVar(L->binds[inst.bindingIndex].rhs->name));
        }
        case Rule::CpcxIn:
        case Rule::CpcxE:
        case Rule::CpcxT: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr con = L->binds[inst.bindingIndex].rhs;
            if (con->kids.empty())
                return replaceAt(root, inst.position, mkCon(con->name, {}));
            std::vector<ExprPtr> freshVars;
            std::vector<Binding> argBinds;
            for (const auto& arg : con->kids) {
                NameId y = ns.fresh(intern("y"));
                freshVars.push_back(mkVar(y));
                argBinds.push_back({y, arg});
            }
            Path relOcc = relativize(inst.letrecPath, inst.position);
            ExprPtr L1 = replaceAt(L, relOcc, mkCon(con->name, freshVars));
            ExprPtr L2 = rebuildLetrec(L1, inst.bindingIndex, mkCon(con->name, freshVars),
                                       std::move(argBinds));
            return replaceAt(root, inst.letrecPath, L2);
        }
        case Rule::Abs: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr con = L->binds[inst.bindingIndex].rhs;
            std::vector<ExprPtr> freshVars;
            std::vector<Binding> argBinds;
            for (const auto& arg : con->kids) {
                NameId x = ns.fresh(intern("x"));
                freshVars.push_back(mkVar(x));
                argBinds.push_back({x, arg});
            }
            ExprPtr L1 = rebuildLetrec(L, inst.bindingIndex, mkCon(con->name, freshVars),
                                       std::move(argBinds));
            return replaceAt(root, inst.letrecPath, L1);
        }
        case Rule::Abse: {
            ExprPtr con = subtermAt(root, inst.position);
            std::vector<ExprPtr> freshVars;
            std::vector<Binding> argBinds;
            for (const auto& arg : con->kids) {
                NameId x = ns.fresh(intern("x"));
                freshVars.push_back(mkVar(x));
                argBinds.push_back({x, arg});
            }
            return replaceAt(root, inst.position,
                             mkLetrec(std::move(argBinds), mkCon(con->name, freshVars)));
        }
        case Rule::Xch: {
            ExprPtr L = subtermAt(root, inst.position);
            std::vector<Binding> binds = L->binds;
            NameId x = binds[inst.bindingIndex].var;
            NameId y = binds[inst.bindingIndex2].var;
            ExprPtr t = binds[inst.bindingIndex].rhs;
            binds[inst.bindingIndex] = {x, mkVar(y)};
            binds[inst.bindingIndex2] = {y, t};
            return replaceAt(root, inst.position, mkLetrec(std::move(binds), L->body));
        }
        case Rule::Ucp1:
        case Rule::Ucp2:
        case Rule::Ucp3: {
            ExprPtr L = subtermAt(root, inst.letrecPath);
            ExprPtr t = L->binds[inst.bindingIndex].rhs;
            Path relOcc = relativize(inst.letrecPath, inst.position);
            ExprPtr L1 = replaceAt(L, relOcc, t);
            if (inst.rule == Rule::Ucp3)
                return replaceAt(root, inst.letrecPath, L1->body);
            return replaceAt(root, inst.letrecPath,
                             dropBinding(L1, static_cast<std::size_t>(inst.bindingIndex)));
        }
        case Rule::GcEq: {
            ExprPtr L = subtermAt(root, inst.position);
            return replaceAt(root, inst.position,
                             dropBinding(L, static_cast<std::size_t>(inst.bindingIndex)));
        }
        case Rule::CaseId: {
            ExprPtr cs = subtermAt(root, inst.position);
            return replaceAt(root, inst.position, cs->kids[0]);
        }
        case Rule::Cse: {
            ExprPtr L = subtermAt(root, inst.position);
            NameId x = L->binds[inst.bindingIndex].var;
            NameId y = L->binds[inst.bindingIndex2].var;
            std::vector<Binding> binds;
            for (std::size_t i = 0; i < L->binds.size(); ++i) {
                if (i == static_cast<std::size_t>(inst.bindingIndex2)) continue;
                Binding b = L->binds[i];
                b.rhs = substVar(b.rhs, y, x);
                binds.push_back(std::move(b));
            }
            return replaceAt(root, inst.position,
                             mkLetrec(std::move(binds), substVar(L->body, y, x)));
        }
        default:
            throw TransformError(std::string("rule ") + ruleName(inst.rule) +
                                 " is not a positional rewrite");
    }
}

} // namespace

ExprPtr applyRule(const ExprPtr& e, const RuleInstance& inst, NameSupply& ns) {
    auto candidates = listRedexes(e, inst.rule);
    for (const auto& c : candidates) {
        if (sameInstance(c, inst)) return applyMatched(e, c, ns);
    }
    throw TransformError(std::string("no ") + ruleName(inst.rule) + " instance at " +
                         (inst.position.empty() ? std::string("<root>")
                                                : inst.position.toString()));
}

ExprPtr applyRule(const ExprPtr& e, const RuleInstance& inst) {
    NameSupply ns;
    ns.reserveAllNames(e);
    return applyRule(e, inst, ns);
}

// ---- seq insertion -----------------------------------------------------------

ExprPtr seqInsert(const ExprPtr& e, const Path& p, NameId demandedVar) {
    ExprPtr t = subtermAt(e, p);
    auto scope = bindersInScopeAt(e, p);
    bool ok = std::find(scope.begin(), scope.end(), demandedVar) != scope.end() ||
              freeIn(demandedVar, e);
    if (!ok)
        throw TransformError("variable " + nameText(demandedVar) +
                             " is not in scope at " + p.toString());
    return replaceAt(e, p, mkSeq(mkVar(demandedVar), t));
}

// ---- machine-expression translation --------------------------------------------

namespace {

ExprPtr psiRec(const ExprPtr& e, NameSupply& ns) {
    switch (e->tag) {
        case Tag::Var:
            return e;
        case Tag::App: {
            ExprPtr f = psiRec(e->kids[0], ns);
            ExprPtr a = psiRec(e->kids[1], ns);
            if (a->tag == Tag::Var) return mkApp(f, a);
            NameId y = ns.fresh(intern("y"));
            return mkLetrec({{y, a}}, mkApp(f, mkVar(y)));
        }
        case Tag::Lam:
            return mkLam(e->name, psiRec(e->kids[0], ns));
        case Tag::Seq:
            return mkSeq(psiRec(e->kids[0], ns), psiRec(e->kids[1], ns));
        case Tag::Con: {
            std::vector<ExprPtr> args;
            for (const auto& k : e->kids) args.push_back(psiRec(k, ns));
            std::vector<Binding> binds;
            for (auto& a : args) {
                if (a->tag == Tag::Var) continue;
                NameId y = ns.fresh(intern("y"));
                binds.push_back({y, a});
                a = mkVar(y);
            }
            ExprPtr con = mkCon(e->name, std::move(args));
            if (binds.empty()) return con;
            return mkLetrec(std::move(binds), con);
        }
        case Tag::Case: {
            std::vector<Alt> alts = e->alts;
            for (auto& a : alts) a.rhs = psiRec(a.rhs, ns);
            return mkCase(e->name, psiRec(e->kids[0], ns), std::move(alts));
        }
        case Tag::Letrec: {
            std::vector<Binding> binds = e->binds;
            for (auto& b : binds) b.rhs = psiRec(b.rhs, ns);
            return mkLetrec(std::move(binds), psiRec(e->body, ns));
        }
    }
    return e;
}

} // namespace

ExprPtr psiTranslate(const ExprPtr& e, NameSupply& ns) { return psiRec(e, ns); }

ExprPtr psiTranslate(const ExprPtr& e, std::uint64_t seed) {
    NameSupply ns(seed);
    ns.reserveAllNames(e);
    return psiTranslate(e, ns);
}

// ---- inlining -------------------------------------------------------------------

namespace {

// substitute an expression for the free occurrences of a variable;
// safe here because replacement terms never contain names captured by
// the freshened copy's binders
ExprPtr substExpr(const ExprPtr& e, NameId from, const ExprPtr& to) {
    if (!freeIn(from, e)) return e;
    switch (e->tag) {
        case Tag::Var:
            return e->name == from ? to : e;
        case Tag::App:
            return mkApp(substExpr(e->kids[0], from, to), substExpr(e->kids[1], from, to));
        case Tag::Seq:
            return mkSeq(substExpr(e->kids[0], from, to), substExpr(e->kids[1], from, to));
        case Tag::Lam:
            if (e->name == from) return e;
            return mkLam(e->name, substExpr(e->kids[0], from, to));
        case Tag::Con: {
            std::vector<ExprPtr> args;
            args.reserve(e->kids.size());
            for (const auto& k : e->kids) args.push_back(substExpr(k, from, to));
            return mkCon(e->name, std::move(args));
        }
        case Tag::Case: {
            std::vector<Alt> alts = e->alts;
            for (auto& a : alts) {
                if (std::find(a.vars.begin(), a.vars.end(), from) != a.vars.end())
                    continue;
                a.rhs = substExpr(a.rhs, from, to);
            }
            return mkCase(e->name, substExpr(e->kids[0], from, to), std::move(alts));
        }
        case Tag::Letrec: {
            for (const auto& b : e->binds)
                if (b.var == from) return e;
            std::vector<Binding> binds = e->binds;
            for (auto& b : binds) b.rhs = substExpr(b.rhs, from, to);
            return mkLetrec(std::move(binds), substExpr(e->body, from, to));
        }
    }
    return e;
}

// occurrences of x across a letrec's slots, with the path of each; the
// bool marks whether the occurrence crosses an abstraction
struct SlotOccurrence {
    Path path;
    bool underLam;
};

std::vector<SlotOccurrence> slotOccurrences(const ExprPtr& L, NameId x,
                                            std::size_t skipBinding) {
    std::vector<Occurrence> raw;
    std::set<NameId> t{x};
    for (std::size_t i = 0; i < L->binds.size(); ++i) {
        if (i == skipBinding) continue;
        occWalk(L->binds[i].rhs, Path{}.child(static_cast<int>(i)), t, raw);
    }
    occWalk(L->body, Path{}.child(static_cast<int>(L->binds.size())), t, raw);
    std::vector<SlotOccurrence> out;
    for (const auto& o : raw) {
        bool lam = false;
        ExprPtr cur = L;
        for (std::size_t d = 0; d < o.path.steps.size(); ++d) {
            if (d > 0 && cur->tag == Tag::Lam) lam = true;
            cur = childAt(cur, o.path.steps[d]);
        }
        out.push_back({o.path, lam});
    }
    return out;
}

// one (lbeta)/(lapp)/(llet-in) step along the application spine of the
// inlined call, innermost redex first
std::optional<ExprPtr> spineStep(const ExprPtr& e) {
    if (e->tag == Tag::App) {
        if (auto inner = spineStep(e->kids[0])) return mkApp(*inner, e->kids[1]);
        const ExprPtr& f = e->kids[0];
        if (f->tag == Tag::Lam)
            return mkLetrec({{f->name, e->kids[1]}}, f->kids[0]);
        if (f->tag == Tag::Letrec)
            return mkLetrec(f->binds, mkApp(f->body, e->kids[1]));
        return std::nullopt;
    }
    if (e->tag == Tag::Letrec) {
        if (e->body->tag == Tag::Letrec) {
            std::vector<Binding> binds = e->binds;
            binds.insert(binds.end(), e->body->binds.begin(), e->body->binds.end());
            return mkLetrec(std::move(binds), e->body->body);
        }
        if (auto nb = spineStep(e->body)) return mkLetrec(e->binds, *nb);
        return std::nullopt;
    }
    return std::nullopt;
}

// rewrite the inlined call region to a fixpoint: beta redexes from the
// copied abstraction, letrec lifting, then argument-binding cleanup
ExprPtr simplifyRegion(ExprPtr region) {
    while (auto next = spineStep(region)) region = *next;
    if (region->tag != Tag::Letrec) return region;

    // cleanup of the parameter bindings: dead ones are dropped, variable
    // arguments copied out (cpx), uniquely used arguments inlined (ucp)
    bool cleaned = true;
    while (cleaned && region->tag == Tag::Letrec) {
        cleaned = false;
        const auto& binds = region->binds;
        for (std::size_t i = 0; i < binds.size(); ++i) {
            NameId x = binds[i].var;
            const ExprPtr& rhs = binds[i].rhs;
            if (freeIn(x, rhs)) continue; // recursive, leave alone
            auto occs = slotOccurrences(region, x, i);
            if (occs.empty()) {
                if (binds.size() == 1) return region->body;
                region = dropBinding(region, i);
                cleaned = true;
                break;
            }
            bool copyOut = rhs->tag == Tag::Var ||
                           (occs.size() == 1 && !occs[0].underLam);
            if (!copyOut) continue;
            std::vector<Binding> rest;
            for (std::size_t j = 0; j < binds.size(); ++j) {
                if (j == i) continue;
                Binding b = binds[j];
                b.rhs = substExpr(b.rhs, x, rhs);
                rest.push_back(std::move(b));
            }
            ExprPtr body = substExpr(region->body, x, rhs);
            region = rest.empty() ? body : mkLetrec(std::move(rest), body);
            cleaned = true;
            break;
        }
    }
    return region;
}

} // namespace

ExprPtr inlineBinding(const ExprPtr& e, NameId binder, const Path& occurrence,
                      NameSupply& ns) {
    ExprPtr occ = subtermAt(e, occurrence);
    if (occ->tag != Tag::Var || occ->name != binder)
        throw TransformError("no occurrence of " + nameText(binder) + " at " +
                             occurrence.toString());
    if (occurrence.empty() || occurrence.steps.back() != 0)
        throw TransformError("occurrence of " + nameText(binder) + " is not applied");
    Path appPath = parentOf(occurrence);
    if (subtermAt(e, appPath)->tag != Tag::App)
        throw TransformError("occurrence of " + nameText(binder) + " is not applied");

    // innermost enclosing letrec that binds the name
    ExprPtr target;
    ExprPtr cur = e;
    for (std::size_t d = 0; d <= occurrence.steps.size(); ++d) {
        if (cur->tag == Tag::Letrec) {
            int i = bindingOf(cur->binds, binder);
            if (i >= 0) target = cur->binds[i].rhs;
        }
        if (d < occurrence.steps.size()) cur = childAt(cur, occurrence.steps[d]);
    }
    if (!target) throw TransformError(nameText(binder) + " is not letrec-bound here");
    if (target->tag != Tag::Lam)
        throw TransformError(nameText(binder) + " is not bound to an abstraction");

    // the whole application chain around the occurrence
    Path regionPath = appPath;
    ExprPtr copy = freshen(target, ns);
    int params = 0;
    for (ExprPtr l = copy; l->tag == Tag::Lam; l = l->kids[0]) ++params;
    for (int consumed = 1; consumed < params; ++consumed) {
        if (regionPath.empty() || regionPath.steps.back() != 0) break;
        Path up = parentOf(regionPath);
        if (subtermAt(e, up)->tag != Tag::App) break;
        regionPath = up;
    }

    ExprPtr withCopy = replaceAt(e, occurrence, copy);
    ExprPtr region = subtermAt(withCopy, regionPath);
    return replaceAt(withCopy, regionPath, simplifyRegion(region));
}

} // namespace lazylet
