#include "lazylet/freshen.hpp"

#include <cctype>

namespace lazylet {

void NameSupply::reserveAllNames(const ExprPtr& e) {
    std::set<NameId> names;
    collectAllNames(e, names);
    used_.insert(names.begin(), names.end());
}

NameId NameSupply::fresh(NameId base) {
    std::string stem = nameText(base);
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
        stem.pop_back();
    if (stem.empty()) stem = "x";
    while (true) {
        NameId cand = intern(stem + std::to_string(counter_++));
        if (used_.insert(cand).second) return cand;
    }
}

namespace {

using Renaming = std::vector<std::pair<NameId, NameId>>;

NameId lookup(const Renaming& env, NameId v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == v) return it->second;
    return v;
}

ExprPtr freshenRec(const ExprPtr& e, Renaming& env, NameSupply& ns) {
    switch (e->tag) {
        case Tag::Var:
            return mkVar(lookup(env, e->name));
        case Tag::App:
            return mkApp(freshenRec(e->kids[0], env, ns), freshenRec(e->kids[1], env, ns));
        case Tag::Seq:
            return mkSeq(freshenRec(e->kids[0], env, ns), freshenRec(e->kids[1], env, ns));
        case Tag::Lam: {
            NameId p = ns.fresh(e->name);
            env.emplace_back(e->name, p);
            ExprPtr body = freshenRec(e->kids[0], env, ns);
            env.pop_back();
            return mkLam(p, body);
        }
        case Tag::Con: {
            std::vector<ExprPtr> args;
            args.reserve(e->kids.size());
            for (const auto& k : e->kids) args.push_back(freshenRec(k, env, ns));
            return mkCon(e->name, std::move(args));
        }
        case Tag::Case: {
            ExprPtr scrut = freshenRec(e->kids[0], env, ns);
            std::vector<Alt> alts;
            alts.reserve(e->alts.size());
            for (const Alt& a : e->alts) {
                Alt na;
                na.con = a.con;
                for (NameId v : a.vars) {
                    NameId nv = ns.fresh(v);
                    na.vars.push_back(nv);
                    env.emplace_back(v, nv);
                }
                na.rhs = freshenRec(a.rhs, env, ns);
                for (std::size_t i = 0; i < a.vars.size(); ++i) env.pop_back();
                alts.push_back(std::move(na));
            }
            return mkCase(e->name, std::move(scrut), std::move(alts));
        }
        case Tag::Letrec: {
            std::vector<Binding> binds(e->binds.size());
            for (std::size_t i = 0; i < e->binds.size(); ++i) {
                binds[i].var = ns.fresh(e->binds[i].var);
                env.emplace_back(e->binds[i].var, binds[i].var);
            }
            for (std::size_t i = 0; i < e->binds.size(); ++i)
                binds[i].rhs = freshenRec(e->binds[i].rhs, env, ns);
            ExprPtr body = freshenRec(e->body, env, ns);
            for (std::size_t i = 0; i < e->binds.size(); ++i) env.pop_back();
            return mkLetrec(std::move(binds), std::move(body));
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

ExprPtr freshen(const ExprPtr& e, NameSupply& supply) {
    Renaming env;
    return freshenRec(e, env, supply);
}

ExprPtr freshen(const ExprPtr& e, std::uint64_t counterSeed) {
    NameSupply ns(counterSeed);
    ns.reserveAllNames(e);
    return freshen(e, ns);
}

} // namespace lazylet
