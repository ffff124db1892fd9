#pragma once

#include "lazylet/transform.hpp"

#include <map>

namespace lazylet {

struct ContextTemplate {
    ExprPtr body;            // hole marked by a reserved variable occurrence
    Path holePath;
    std::string name;
    std::uint64_t param = 0; // family parameter this template was built for
};

// capture-permitting: the hole subterm is replaced as-is
ExprPtr fillHole(const ContextTemplate& t, const ExprPtr& s);

enum class FamilyKind { ReductionGrammar, ListDriver, SeqDominator };

struct ContextFamily {
    std::string name;
    FamilyKind kind = FamilyKind::ReductionGrammar;
    ContextClass guaranteedClass = ContextClass::Top;
};

ContextFamily reductionFamily();    // grammar enumeration, depth-bounded
ContextFamily listDriverFamily();   // call lists and growing arguments
ContextFamily seqDominatorFamily(); // consumer followed by a dominating tail

// family (a): all grammar wraps up to depth d (n ignored);
// family (b): list/argument drivers at size n (d ignored);
// family (c): one consumer template whose tail peaks at order n.
std::vector<ContextTemplate> generateContexts(const ContextFamily& family,
                                              std::uint64_t n, std::uint64_t d);

enum class Classification {
    ImprovementConsistent,
    EquivalenceConsistent,
    SafeUpTo,
    LeakEvidence,
    Violation,
};
const char* classificationName(Classification c);

struct Growth {
    enum Kind { Constant, Linear, Superlinear } kind = Constant;
    double value = 0; // level for Constant, slope per unit n for Linear
};
std::string growthToString(const Growth& g);

struct CheckParams {
    std::uint64_t depth = 3;
    std::vector<std::uint64_t> ns = {5, 10, 20};
    std::uint64_t fuel = 1'000'000;
    std::uint64_t seed = 0;
};

struct Verdict {
    std::string rule;
    std::size_t instancesTested = 0;
    std::size_t contextsTested = 0;
    std::int64_t maxDelta = 0;
    std::int64_t minDelta = 0;
    Growth growth;
    Classification classification = Classification::EquivalenceConsistent;
    std::int64_t safeBound = 0; // observed bound for SafeUpTo
    std::optional<std::pair<std::string, std::int64_t>> counterexample;
    std::size_t warnings = 0;          // contexts excluded (fuel, stuck demand)
    std::size_t violations = 0;        // convergence-status mismatches
    std::size_t sideConditionWarnings = 0;
    std::vector<std::pair<std::uint64_t, std::int64_t>> maxDeltaByN;
    bool sizeEqualEverywhere = true;   // size(C[s]) == size(C[t]) per context
};

// rule TAB classification TAB maxDelta TAB minDelta TAB growth TAB contexts TAB warnings
std::string verdictTsv(const Verdict& v);

struct InstancePair {
    ExprPtr before;
    ExprPtr after;
    std::string note;
    std::uint64_t sizeOfCopied = 0; // size(v) for cp-shaped rows
};

// delta = spmax(C[after]) - spmax(C[before]) over every generated context
Verdict checkPair(const ExprPtr& before, const ExprPtr& after,
                  const ContextFamily& family, const CheckParams& params,
                  const std::string& ruleLabel = "pair");
Verdict checkPairs(const std::vector<InstancePair>& pairs, const ContextFamily& family,
                   const CheckParams& params, const std::string& ruleLabel);

struct CpBoundReport {
    bool converged = true;
    bool generalBoundHolds = false; // spmax(t) <= (rln(s)+2)*size(v) + spmax(s)
    bool surfaceBoundHolds = true;  // spmax(t) <= size(v) + spmax(s), surface targets
    bool isSurfaceInstance = false;
    std::uint64_t spmaxBefore = 0;
    std::uint64_t spmaxAfter = 0;
    std::uint64_t rlnBefore = 0;
    std::uint64_t sizeV = 0;
};
CpBoundReport checkCpBound(const ExprPtr& s, const RuleInstance& inst,
                           std::uint64_t fuel);

enum class Expectation {
    Improvement,
    Equivalence,
    SafeUpToOne,
    SafeUpToSizeV,
    Leak,
    Informational,
};
const char* expectationName(Expectation e);

struct TableRowResult {
    std::string row;
    Expectation expectation = Expectation::Informational;
    Verdict verdict;
    bool pass = false;
};

// The full classification run over the built-in instance corpus:
// improvement/equivalence/safety rows against the reduction-grammar
// family, leak rows against the list-driver family.
std::vector<TableRowResult> checkTheoremTable(const CheckParams& params);

} // namespace lazylet
