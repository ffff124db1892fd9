#include "lazylet/ast.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace lazylet {

// ---- interner -------------------------------------------------------------

namespace {
struct Interner {
    std::unordered_map<std::string, NameId> ids;
    std::vector<std::string> texts;
};
Interner& interner() {
    static Interner s;
    return s;
}
} // namespace

NameId intern(const std::string& text) {
    auto& it = interner();
    auto f = it.ids.find(text);
    if (f != it.ids.end()) return f->second;
    NameId id = static_cast<NameId>(it.texts.size());
    it.texts.push_back(text);
    it.ids.emplace(text, id);
    return id;
}

const std::string& nameText(NameId id) {
    return interner().texts.at(id);
}

bool isInterned(const std::string& text) {
    auto& it = interner();
    return it.ids.count(text) > 0;
}

// ---- Path -----------------------------------------------------------------

bool Path::isPrefixOf(const Path& o) const {
    if (steps.size() > o.steps.size()) return false;
    return std::equal(steps.begin(), steps.end(), o.steps.begin());
}

std::string Path::toString() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) os << '.';
        os << steps[i];
    }
    return os.str();
}

Path Path::parse(const std::string& s) {
    Path p;
    if (s.empty()) return p;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find('.', i);
        if (j == std::string::npos) j = s.size();
        if (j == i) throw std::runtime_error("bad path syntax: '" + s + "'");
        p.steps.push_back(std::stoi(s.substr(i, j - i)));
        i = j + 1;
    }
    return p;
}

// ---- construction ----------------------------------------------------------

ExprPtr mkVar(NameId v) {
    auto e = std::make_shared<Expr>(Tag::Var);
    e->name = v;
    return e;
}
ExprPtr mkVar(const std::string& v) { return mkVar(intern(v)); }

ExprPtr mkApp(ExprPtr fun, ExprPtr arg) {
    auto e = std::make_shared<Expr>(Tag::App);
    e->kids = {std::move(fun), std::move(arg)};
    return e;
}

ExprPtr mkLam(NameId param, ExprPtr body) {
    auto e = std::make_shared<Expr>(Tag::Lam);
    e->name = param;
    e->kids = {std::move(body)};
    return e;
}
ExprPtr mkLam(const std::string& param, ExprPtr body) {
    return mkLam(intern(param), std::move(body));
}

ExprPtr mkSeq(ExprPtr fst, ExprPtr snd) {
    auto e = std::make_shared<Expr>(Tag::Seq);
    e->kids = {std::move(fst), std::move(snd)};
    return e;
}

ExprPtr mkCon(NameId con, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>(Tag::Con);
    e->name = con;
    e->kids = std::move(args);
    return e;
}
ExprPtr mkCon(const std::string& con, std::vector<ExprPtr> args) {
    return mkCon(intern(con), std::move(args));
}

ExprPtr mkCase(NameId tycon, ExprPtr scrut, std::vector<Alt> alts) {
    auto e = std::make_shared<Expr>(Tag::Case);
    e->name = tycon;
    e->kids = {std::move(scrut)};
    e->alts = std::move(alts);
    return e;
}

ExprPtr mkLetrec(std::vector<Binding> binds, ExprPtr body) {
    if (binds.empty()) throw std::runtime_error("letrec requires at least one binding");
    auto e = std::make_shared<Expr>(Tag::Letrec);
    e->binds = std::move(binds);
    e->body = std::move(body);
    return e;
}

ExprPtr mkApps(ExprPtr fun, const std::vector<ExprPtr>& args) {
    ExprPtr acc = std::move(fun);
    for (const auto& a : args) acc = mkApp(acc, a);
    return acc;
}

ExprPtr mkNumeral(std::uint64_t k) {
    ExprPtr acc = mkCon("Zero", {});
    for (std::uint64_t i = 0; i < k; ++i) acc = mkCon("Succ", {acc});
    return acc;
}

// ---- declarations -----------------------------------------------------------

const Declarations& Declarations::prelude() {
    static Declarations p = [] {
        Declarations d;
        d.add({"Bool", {{"True", 0}, {"False", 0}}});
        d.add({"List", {{"Nil", 0}, {"Cons", 2}}});
        d.add({"Nat", {{"Zero", 0}, {"Succ", 1}}});
        return d;
    }();
    return p;
}

Declarations::Declarations(const std::vector<DataDecl>& decls) {
    for (const auto& d : decls) add(d);
}

void Declarations::add(const DataDecl& d) {
    NameId t = intern(d.tycon);
    if (tycons_.count(t))
        throw std::runtime_error("duplicate data declaration for " + d.tycon);
    auto& list = tycons_[t];
    for (const auto& [cname, ar] : d.constructors) {
        if (ar < 0) throw std::runtime_error("negative constructor arity");
        NameId c = intern(cname);
        if (cons_.count(c))
            throw std::runtime_error("duplicate constructor " + cname);
        cons_[c] = {t, ar};
        list.push_back(c);
    }
    decls_.push_back(d);
}

bool Declarations::knownCon(NameId c) const { return cons_.count(c) > 0; }

int Declarations::arity(NameId c) const {
    auto f = cons_.find(c);
    if (f == cons_.end()) throw std::runtime_error("unknown constructor " + nameText(c));
    return f->second.arity;
}

NameId Declarations::tyconOf(NameId c) const {
    auto f = cons_.find(c);
    if (f == cons_.end()) throw std::runtime_error("unknown constructor " + nameText(c));
    return f->second.tycon;
}

bool Declarations::knownTycon(NameId t) const { return tycons_.count(t) > 0; }

const std::vector<NameId>& Declarations::constructorsOf(NameId tycon) const {
    auto f = tycons_.find(tycon);
    if (f == tycons_.end())
        throw std::runtime_error("unknown type constructor " + nameText(tycon));
    return f->second;
}

// ---- navigation --------------------------------------------------------------

int childCount(const Expr& e) {
    switch (e.tag) {
        case Tag::Var: return 0;
        case Tag::App: return 2;
        case Tag::Lam: return 1;
        case Tag::Seq: return 2;
        case Tag::Con: return static_cast<int>(e.kids.size());
        case Tag::Case: return 1 + static_cast<int>(e.alts.size());
        case Tag::Letrec: return static_cast<int>(e.binds.size()) + 1;
    }
    return 0;
}

ExprPtr childAt(const ExprPtr& e, int i) {
    if (i < 0 || i >= childCount(*e)) throw std::runtime_error("child index out of range");
    switch (e->tag) {
        case Tag::Case:
            return i == 0 ? e->kids[0] : e->alts[i - 1].rhs;
        case Tag::Letrec:
            return i < static_cast<int>(e->binds.size()) ? e->binds[i].rhs : e->body;
        default:
            return e->kids[i];
    }
}

ExprPtr replaceChild(const ExprPtr& e, int i, ExprPtr sub) {
    if (i < 0 || i >= childCount(*e)) throw std::runtime_error("child index out of range");
    auto n = std::make_shared<Expr>(e->tag);
    n->name = e->name;
    n->kids = e->kids;
    n->alts = e->alts;
    n->binds = e->binds;
    n->body = e->body;
    switch (e->tag) {
        case Tag::Case:
            if (i == 0)
                n->kids[0] = std::move(sub);
            else
                n->alts[i - 1].rhs = std::move(sub);
            break;
        case Tag::Letrec:
            if (i < static_cast<int>(e->binds.size()))
                n->binds[i].rhs = std::move(sub);
            else
                n->body = std::move(sub);
            break;
        default:
            n->kids[i] = std::move(sub);
            break;
    }
    return n;
}

ExprPtr subtermAt(const ExprPtr& e, const Path& p) {
    ExprPtr cur = e;
    for (int i : p.steps) cur = childAt(cur, i);
    return cur;
}

ExprPtr replaceAt(const ExprPtr& e, const Path& p, ExprPtr sub) {
    if (p.empty()) return sub;
    Path rest(std::vector<int>(p.steps.begin() + 1, p.steps.end()));
    return replaceChild(e, p.steps[0], replaceAt(childAt(e, p.steps[0]), rest, std::move(sub)));
}

// ---- queries -------------------------------------------------------------------

bool isValue(const Expr& e) { return e.tag == Tag::Lam || e.tag == Tag::Con; }

namespace {

std::vector<NameId> mergeSorted(const std::vector<const std::vector<NameId>*>& sets) {
    std::vector<NameId> out;
    for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void removeSorted(std::vector<NameId>& set, const std::vector<NameId>& drop) {
    if (drop.empty()) return;
    set.erase(std::remove_if(set.begin(), set.end(),
                             [&](NameId v) {
                                 return std::binary_search(drop.begin(), drop.end(), v);
                             }),
              set.end());
}

} // namespace

const std::vector<NameId>& freeVarsSorted(const ExprPtr& e) {
    if (e->fvCache) return *e->fvCache;
    std::vector<NameId> fv;
    switch (e->tag) {
        case Tag::Var:
            fv = {e->name};
            break;
        case Tag::App:
        case Tag::Seq: {
            fv = mergeSorted({&freeVarsSorted(e->kids[0]), &freeVarsSorted(e->kids[1])});
            break;
        }
        case Tag::Lam: {
            fv = freeVarsSorted(e->kids[0]);
            removeSorted(fv, {e->name});
            break;
        }
        case Tag::Con: {
            std::vector<const std::vector<NameId>*> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(&freeVarsSorted(k));
            fv = mergeSorted(parts);
            break;
        }
        case Tag::Case: {
            fv = freeVarsSorted(e->kids[0]);
            for (const auto& a : e->alts) {
                std::vector<NameId> part = freeVarsSorted(a.rhs);
                std::vector<NameId> pv = a.vars;
                std::sort(pv.begin(), pv.end());
                removeSorted(part, pv);
                fv = mergeSorted({&fv, &part});
            }
            break;
        }
        case Tag::Letrec: {
            std::vector<const std::vector<NameId>*> parts;
            parts.reserve(e->binds.size() + 1);
            for (const auto& b : e->binds) parts.push_back(&freeVarsSorted(b.rhs));
            parts.push_back(&freeVarsSorted(e->body));
            fv = mergeSorted(parts);
            std::vector<NameId> bs;
            bs.reserve(e->binds.size());
            for (const auto& b : e->binds) bs.push_back(b.var);
            std::sort(bs.begin(), bs.end());
            removeSorted(fv, bs);
            break;
        }
    }
    e->fvCache = std::make_shared<const std::vector<NameId>>(std::move(fv));
    return *e->fvCache;
}

std::set<std::string> freeVars(const ExprPtr& e) {
    std::set<std::string> out;
    for (NameId v : freeVarsSorted(e)) out.insert(nameText(v));
    return out;
}

bool isClosed(const ExprPtr& e) { return freeVarsSorted(e).empty(); }

bool freeIn(NameId v, const ExprPtr& e) {
    const auto& fv = freeVarsSorted(e);
    return std::binary_search(fv.begin(), fv.end(), v);
}

std::size_t countFreeOccurrences(NameId v, const ExprPtr& e) {
    switch (e->tag) {
        case Tag::Var:
            return e->name == v ? 1 : 0;
        case Tag::Lam:
            return e->name == v ? 0 : countFreeOccurrences(v, e->kids[0]);
        case Tag::Case: {
            std::size_t n = countFreeOccurrences(v, e->kids[0]);
            for (const auto& a : e->alts) {
                if (std::find(a.vars.begin(), a.vars.end(), v) != a.vars.end()) continue;
                n += countFreeOccurrences(v, a.rhs);
            }
            return n;
        }
        case Tag::Letrec: {
            for (const auto& b : e->binds)
                if (b.var == v) return 0;
            std::size_t n = countFreeOccurrences(v, e->body);
            for (const auto& b : e->binds) n += countFreeOccurrences(v, b.rhs);
            return n;
        }
        default: {
            std::size_t n = 0;
            for (const auto& k : e->kids) n += countFreeOccurrences(v, k);
            return n;
        }
    }
}

void collectAllNames(const ExprPtr& e, std::set<NameId>& out) {
    switch (e->tag) {
        case Tag::Var:
            out.insert(e->name);
            return;
        case Tag::Lam:
            out.insert(e->name);
            break;
        case Tag::Case:
            for (const auto& a : e->alts) out.insert(a.vars.begin(), a.vars.end());
            break;
        case Tag::Letrec:
            for (const auto& b : e->binds) out.insert(b.var);
            collectAllNames(e->body, out);
            break;
        default:
            break;
    }
    for (const auto& k : e->kids) collectAllNames(k, out);
    if (e->tag == Tag::Case)
        for (const auto& a : e->alts) collectAllNames(a.rhs, out);
    if (e->tag == Tag::Letrec)
        for (const auto& b : e->binds) collectAllNames(b.rhs, out);
}

void collectBinders(const ExprPtr& e, std::vector<NameId>& out) {
    switch (e->tag) {
        case Tag::Lam:
            out.push_back(e->name);
            break;
        case Tag::Case:
            for (const auto& a : e->alts) out.insert(out.end(), a.vars.begin(), a.vars.end());
            break;
        case Tag::Letrec:
            for (const auto& b : e->binds) out.push_back(b.var);
            break;
        default:
            break;
    }
    for (const auto& k : e->kids) collectBinders(k, out);
    if (e->tag == Tag::Case)
        for (const auto& a : e->alts) collectBinders(a.rhs, out);
    if (e->tag == Tag::Letrec) {
        for (const auto& b : e->binds) collectBinders(b.rhs, out);
        collectBinders(e->body, out);
    }
}

bool hasDistinctBinders(const ExprPtr& e) {
    std::vector<NameId> bs;
    collectBinders(e, bs);
    std::sort(bs.begin(), bs.end());
    if (std::adjacent_find(bs.begin(), bs.end()) != bs.end()) return false;
    for (NameId v : freeVarsSorted(e))
        if (std::binary_search(bs.begin(), bs.end(), v)) return false;
    return true;
}

// ---- alpha equality --------------------------------------------------------------

namespace {

struct AlphaEnv {
    // parallel rename stacks
    std::vector<std::pair<NameId, NameId>> pairs;

    bool sameVar(NameId a, NameId b) const {
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            if (it->first == a || it->second == b) return it->first == a && it->second == b;
        }
        return a == b; // both free
    }
};

bool alphaEq(const ExprPtr& a, const ExprPtr& b, AlphaEnv& env) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
        case Tag::Var:
            return env.sameVar(a->name, b->name);
        case Tag::App:
        case Tag::Seq:
            return alphaEq(a->kids[0], b->kids[0], env) && alphaEq(a->kids[1], b->kids[1], env);
        case Tag::Lam: {
            env.pairs.emplace_back(a->name, b->name);
            bool r = alphaEq(a->kids[0], b->kids[0], env);
            env.pairs.pop_back();
            return r;
        }
        case Tag::Con: {
            if (a->name != b->name || a->kids.size() != b->kids.size()) return false;
            for (std::size_t i = 0; i < a->kids.size(); ++i)
                if (!alphaEq(a->kids[i], b->kids[i], env)) return false;
            return true;
        }
        case Tag::Case: {
            if (a->name != b->name || a->alts.size() != b->alts.size()) return false;
            if (!alphaEq(a->kids[0], b->kids[0], env)) return false;
            for (std::size_t i = 0; i < a->alts.size(); ++i) {
                const Alt& x = a->alts[i];
                const Alt& y = b->alts[i];
                if (x.con != y.con || x.vars.size() != y.vars.size()) return false;
                for (std::size_t j = 0; j < x.vars.size(); ++j)
                    env.pairs.emplace_back(x.vars[j], y.vars[j]);
                bool r = alphaEq(x.rhs, y.rhs, env);
                for (std::size_t j = 0; j < x.vars.size(); ++j) env.pairs.pop_back();
                if (!r) return false;
            }
            return true;
        }
        case Tag::Letrec: {
            if (a->binds.size() != b->binds.size()) return false;
            // bindings are a multiset; match them by rhs order as written,
            // which suffices for terms produced by our own printer/rules
            for (std::size_t i = 0; i < a->binds.size(); ++i)
                env.pairs.emplace_back(a->binds[i].var, b->binds[i].var);
            bool r = true;
            for (std::size_t i = 0; i < a->binds.size() && r; ++i)
                r = alphaEq(a->binds[i].rhs, b->binds[i].rhs, env);
            if (r) r = alphaEq(a->body, b->body, env);
            for (std::size_t i = 0; i < a->binds.size(); ++i) env.pairs.pop_back();
            return r;
        }
    }
    return false;
}

} // namespace

bool alphaEqual(const ExprPtr& a, const ExprPtr& b) {
    AlphaEnv env;
    return alphaEq(a, b, env);
}

// ---- validation ---------------------------------------------------------------------

namespace {

void validateRec(const ExprPtr& e, const Declarations& decls) {
    switch (e->tag) {
        case Tag::Var:
            return;
        case Tag::Con: {
            if (!decls.knownCon(e->name))
                throw std::runtime_error("unknown constructor " + nameText(e->name));
            int ar = decls.arity(e->name);
            if (static_cast<int>(e->kids.size()) != ar)
                throw std::runtime_error("unsaturated constructor application of " +
                                         nameText(e->name) + ": expected " +
                                         std::to_string(ar) + " arguments, got " +
                                         std::to_string(e->kids.size()));
            break;
        }
        case Tag::Case: {
            if (!decls.knownTycon(e->name))
                throw std::runtime_error("unknown type constructor " + nameText(e->name));
            const auto& expected = decls.constructorsOf(e->name);
            if (e->alts.size() != expected.size())
                throw std::runtime_error("case over " + nameText(e->name) + " must have " +
                                         std::to_string(expected.size()) + " alternatives");
            for (std::size_t i = 0; i < expected.size(); ++i) {
                const Alt& a = e->alts[i];
                if (a.con != expected[i])
                    throw std::runtime_error("case alternative " + std::to_string(i) +
                                             " must match " + nameText(expected[i]));
                if (static_cast<int>(a.vars.size()) != decls.arity(a.con))
                    throw std::runtime_error("pattern for " + nameText(a.con) +
                                             " binds wrong number of variables");
                std::vector<NameId> pv = a.vars;
                std::sort(pv.begin(), pv.end());
                if (std::adjacent_find(pv.begin(), pv.end()) != pv.end())
                    throw std::runtime_error("pattern variables for " + nameText(a.con) +
                                             " are not distinct");
            }
            break;
        }
        case Tag::Letrec: {
            if (e->binds.empty()) throw std::runtime_error("empty letrec");
            std::vector<NameId> bs;
            for (const auto& b : e->binds) bs.push_back(b.var);
            std::sort(bs.begin(), bs.end());
            if (std::adjacent_find(bs.begin(), bs.end()) != bs.end())
                throw std::runtime_error("duplicate letrec binder");
            for (const auto& b : e->binds) validateRec(b.rhs, decls);
            validateRec(e->body, decls);
            break;
        }
        default:
            break;
    }
    for (const auto& k : e->kids) validateRec(k, decls);
    if (e->tag == Tag::Case)
        for (const auto& a : e->alts) validateRec(a.rhs, decls);
}

} // namespace

void validate(const ExprPtr& e, const Declarations& decls) { validateRec(e, decls); }

std::vector<NameId> bindersInScopeAt(const ExprPtr& e, const Path& p) {
    std::vector<NameId> scope;
    ExprPtr cur = e;
    for (std::size_t d = 0; d < p.steps.size(); ++d) {
        int i = p.steps[d];
        switch (cur->tag) {
            case Tag::Lam:
                scope.push_back(cur->name);
                break;
            case Tag::Case:
                if (i >= 1) {
                    const Alt& a = cur->alts[i - 1];
                    scope.insert(scope.end(), a.vars.begin(), a.vars.end());
                }
                break;
            case Tag::Letrec:
                for (const auto& b : cur->binds) scope.push_back(b.var);
                break;
            default:
                break;
        }
        cur = childAt(cur, i);
    }
    return scope;
}

} // namespace lazylet
