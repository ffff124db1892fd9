#pragma once

#include "lazylet/ast.hpp"
#include "lazylet/freshen.hpp"
#include "lazylet/size.hpp"

#include <optional>

namespace lazylet {

enum class Rule {
    // normal-order reduction rules
    Lbeta,
    CpIn,
    CpE,
    LletIn,
    LletE,
    Lapp,
    Lcase,
    Lseq,
    SeqC,
    SeqIn,
    SeqE,
    CaseC,
    CaseIn,
    CaseE,
    Gc1,
    Gc2,
    // transformations
    CpxIn,
    CpxE,
    CpcxIn,
    CpcxE,
    Abs,
    Abse,
    Xch,
    Ucp1,
    Ucp2,
    Ucp3,
    CaseCx,
    CaseStar,
    GcEq,
    CaseId,
    Cse,
    CpS,
    CpcxT,
    SeqInsert,
    Psi,
};

// token used on the command line and in reports
const char* ruleName(Rule r);
std::optional<Rule> ruleFromName(const std::string& name);
// usable by the evaluator (as opposed to transformation-only rules)
bool isReductionRule(Rule r);

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// a free variable was demanded
struct OpenTermError : EvalError {
    explicit OpenTermError(const std::string& var)
        : EvalError("demanded free variable: " + var) {}
};
// demand reached a shape no rule covers (ill-typed program)
struct StuckError : EvalError {
    using EvalError::EvalError;
};

enum class LabelOutcome { Redex, Whnf, Blackhole, Stuck, Open };

// source of the demand at the occurrence that starts an indirection chain
enum class DemandKind { TopBody, AppFun, SeqFirst, CaseScrut };

struct Labeling {
    LabelOutcome outcome = LabelOutcome::Whnf;
    Rule rule = Rule::Lbeta;                      // valid for Redex
    Path focusPath;                               // the sub-labeled subterm
    Path targetPath;                              // the vis-marked occurrence, if any
    DemandKind targetKind = DemandKind::TopBody;  // how the target was demanded
    std::vector<std::pair<NameId, Path>> chain;   // visited indirection chain, outermost first
    std::vector<Path> trail;                      // all demand-spine positions
    std::string message;                          // for Stuck / Open
};

// Locate the unique normal-order redex of a closed term, or report
// WHNF / Blackhole (cyclic demand). Throws OpenTermError / StuckError.
Labeling label(const ExprPtr& e);
// Same search, but ill-typed demand and demanded free variables are
// reported as Stuck / Open outcomes with the trail walked so far.
Labeling labelNoThrow(const ExprPtr& e);
// wantTrail=false skips trail and chain bookkeeping (hot evaluation loop)
Labeling labelNoThrow(const ExprPtr& e, bool wantTrail);

// Remove the maximal collectible binding set of the top letrec.
struct GcResult {
    ExprPtr expr;
    bool changed = false;
    Rule rule = Rule::Gc1; // Gc1 or Gc2 when changed
};
GcResult gcMax(const ExprPtr& e);

bool isWHNF(const ExprPtr& e);
bool isLRPgcWHNF(const ExprPtr& e);

enum class EvalStatus { Whnf, FuelExhausted, Blackhole };
const char* statusName(EvalStatus s);

struct Measures {
    std::uint64_t rln = 0;     // lbeta + case + seq steps
    std::uint64_t rlnLCSC = 0; // rln plus cp steps
    std::uint64_t rlnall = 0;  // every non-gc step
    std::optional<std::uint64_t> spmax; // nullopt = unbounded
};

struct TraceStep {
    Rule rule;
    std::uint64_t sizeBefore;
};

struct EvalResult {
    std::vector<TraceStep> steps;
    ExprPtr final;
    EvalStatus status = EvalStatus::Whnf;
    Measures measures;
};

struct StepResult {
    ExprPtr expr;
    Rule rule;
};

// One LRPgc step: maximal top-letrec gc when possible, otherwise the
// labeled normal-order rule. nullopt when the term is an irreducible
// WHNF or a blackhole (see doneStatus).
struct StepOutcome {
    std::optional<StepResult> next;
    EvalStatus doneStatus = EvalStatus::Whnf;
};
StepOutcome step(const ExprPtr& e, NameSupply& ns);

// Iterated stepping with trace and measures. fuel bounds the non-gc
// steps; gc steps are free. spmax samples the states whose outgoing
// step is not a gc, plus the final gc-irreducible WHNF.
EvalResult evaluate(const ExprPtr& e, std::uint64_t fuel,
                    const SizeOptions& opts = {}, std::uint64_t seed = 0);

// status TAB rln TAB rlnall TAB rlnLCSC TAB spmax ("inf" when unbounded)
std::string formatSummary(const EvalResult& r);
// index TAB rule TAB sizeBefore
std::string formatTraceLine(std::size_t index, const TraceStep& s);

} // namespace lazylet
