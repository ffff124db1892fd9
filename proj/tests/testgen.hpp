#pragma once

// Deterministic closed-term generator for the property suites.

#include "lazylet/ast.hpp"

#include <random>
#include <string>
#include <vector>

namespace lazylet::testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    ExprPtr closedTerm(int maxDepth = 5) {
        std::vector<NameId> scope;
        return term(maxDepth, scope);
    }

private:
    std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

    NameId freshBinder() { return intern("g" + std::to_string(counter_++)); }

    ExprPtr leaf(const std::vector<NameId>& scope) {
        if (!scope.empty() && pick(2) == 0) return mkVar(scope[pick(scope.size())]);
        switch (pick(4)) {
            case 0: return mkCon("True", {});
            case 1: return mkCon("False", {});
            case 2: return mkCon("Nil", {});
            default: return mkCon("Zero", {});
        }
    }

    ExprPtr term(int depth, std::vector<NameId>& scope) {
        if (depth <= 0) return leaf(scope);
        switch (pick(8)) {
            case 0:
                return leaf(scope);
            case 1:
                return mkApp(term(depth - 1, scope), term(depth - 1, scope));
            case 2: {
                NameId p = freshBinder();
                scope.push_back(p);
                ExprPtr body = term(depth - 1, scope);
                scope.pop_back();
                return mkLam(p, body);
            }
            case 3:
                return mkSeq(term(depth - 1, scope), term(depth - 1, scope));
            case 4: {
                if (pick(2) == 0)
                    return mkCon("Cons", {term(depth - 1, scope), term(depth - 1, scope)});
                return mkCon("Succ", {term(depth - 1, scope)});
            }
            case 5: { // case over Bool
                std::vector<Alt> alts;
                alts.push_back({intern("True"), {}, term(depth - 1, scope)});
                alts.push_back({intern("False"), {}, term(depth - 1, scope)});
                return mkCase(intern("Bool"), term(depth - 1, scope), std::move(alts));
            }
            case 6: { // case over List
                std::vector<Alt> alts;
                alts.push_back({intern("Nil"), {}, term(depth - 1, scope)});
                NameId h = freshBinder();
                NameId t = freshBinder();
                scope.push_back(h);
                scope.push_back(t);
                ExprPtr rhs = term(depth - 1, scope);
                scope.pop_back();
                scope.pop_back();
                alts.push_back({intern("Cons"), {h, t}, rhs});
                return mkCase(intern("List"), term(depth - 1, scope), std::move(alts));
            }
            default: {
                std::size_t nb = 1 + pick(2);
                std::vector<NameId> vars;
                for (std::size_t i = 0; i < nb; ++i) vars.push_back(freshBinder());
                for (NameId v : vars) scope.push_back(v);
                std::vector<Binding> binds;
                for (NameId v : vars) binds.push_back({v, term(depth - 1, scope)});
                ExprPtr body = term(depth - 1, scope);
                for (std::size_t i = 0; i < nb; ++i) scope.pop_back();
                return mkLetrec(std::move(binds), std::move(body));
            }
        }
    }

    std::mt19937_64 rng_;
    std::uint64_t counter_ = 0;
};

} // namespace lazylet::testgen
