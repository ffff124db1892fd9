#pragma once

#include "lazylet/ast.hpp"

#include <unordered_set>

namespace lazylet {

// Deterministic fresh-name source: a single monotone counter per run.
// Candidates are base name (trailing digits stripped) plus the counter;
// names already in use are skipped.
class NameSupply {
public:
    explicit NameSupply(std::uint64_t counterSeed = 0) : counter_(counterSeed) {}

    void reserveAllNames(const ExprPtr& e);
    void reserve(NameId n) { used_.insert(n); }
    NameId fresh(NameId base);

private:
    std::unordered_set<NameId> used_;
    std::uint64_t counter_;
};

// Alpha-rename every binder (pre-order) to a fresh name. The result has
// globally distinct binders, disjoint from the term's free variables.
ExprPtr freshen(const ExprPtr& e, NameSupply& supply);
ExprPtr freshen(const ExprPtr& e, std::uint64_t counterSeed = 0);

} // namespace lazylet
