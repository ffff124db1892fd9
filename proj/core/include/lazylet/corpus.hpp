#pragma once

#include "lazylet/check.hpp"
#include "lazylet/parser.hpp"

namespace lazylet::corpus {

// fold corpus; the same text ships as data/fold.let
const std::string& foldText();
enum class FoldVariant { Foldl, FoldlStrict, Foldr };
const char* foldVariantName(FoldVariant v);
// <variant> xor False (take k lst) over the corpus definitions
ExprPtr foldProgram(FoldVariant v, bool inlined, std::uint64_t k);

// shared list/boolean consumers (andB, and2, lastB, forceB, headB, eqB, upto)
const std::string& consumersText();

// duplicate-computation demo (shared binding versus recomputation)
ExprPtr cseDemoBefore(std::uint64_t n);
ExprPtr cseDemoAfter(std::uint64_t n);

// closed append chain over three lists of length n, both associations;
// consumers are applied by the caller
ExprPtr appendExpr(bool leftAssociated, std::uint64_t n);

// closed lambda pairs exhibiting space growth
InstancePair cseLeakPair();
InstancePair soecLeakPair();
InstancePair cpLeakPair();

// one pair per classification row of the table
struct TableRowSpec {
    std::string name;
    Expectation expectation;
    FamilyKind family;
    std::vector<InstancePair> pairs;
    // equivalence rows additionally keep size(C[s]) == size(C[t]) per
    // context, except the constructor-copy variant which adds one unit
    bool requireSizeEqual = true;
};
const std::vector<TableRowSpec>& tableRows();

// converging closed programs used for the property suites
const std::vector<std::pair<std::string, ExprPtr>>& convergingPrograms();

} // namespace lazylet::corpus
