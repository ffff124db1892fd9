#pragma once

#include "lazylet/reduce.hpp"

namespace lazylet {

enum class ContextClass { General, Surface, Top, Reduction };

const char* contextClassName(ContextClass c);
// General < Surface < Top < Reduction as position sets
int contextRank(ContextClass c);

// Class of the hole position p in e: General under an abstraction,
// Surface otherwise; Top when additionally not inside a case
// alternative; Reduction when the position lies on the demand spine
// found by the labeling pass.
ContextClass classifyContext(const ExprPtr& e, const Path& p);

struct RuleInstance {
    Rule rule = Rule::Lbeta;
    Path position;             // occurrence for copy rules, redex node otherwise
    ContextClass contextClass = ContextClass::General;
    Path letrecPath;           // anchor letrec for environment-anchored rules
    int bindingIndex = -1;     // source binding
    int bindingIndex2 = -1;    // partner binding (xch, gcEq, cse)
    int altIndex = -1;         // selected case alternative
};

struct TransformError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All positions where the rule's left-hand side matches, in
// pre-order of the anchoring node.
std::vector<RuleInstance> listRedexes(const ExprPtr& e, Rule rule);

// Apply one instance. Fresh variables are drawn from the supply.
// Throws TransformError when the instance no longer matches or a side
// condition fails (cpS/cpcxT context restriction, ucp uniqueness).
ExprPtr applyRule(const ExprPtr& e, const RuleInstance& inst, NameSupply& ns);
ExprPtr applyRule(const ExprPtr& e, const RuleInstance& inst);

// Replace the subterm t at p by (seq demandedVar t). The variable must
// be in scope at p; whether it is really demanded is the caller's
// assertion.
ExprPtr seqInsert(const ExprPtr& e, const Path& p, NameId demandedVar);

// Machine-expression form: application arguments and constructor
// arguments that are not variables are shared through fresh bindings.
ExprPtr psiTranslate(const ExprPtr& e, NameSupply& ns);
ExprPtr psiTranslate(const ExprPtr& e, std::uint64_t seed = 0);

// Copy the abstraction bound to `binder` to the applied occurrence at
// `occurrence`, reduce the created beta redexes, and clean up the
// residual argument bindings (variable bindings are copied out, uniquely
// used bindings are inlined, dead ones dropped). Only bindings created
// by this inline step are touched.
ExprPtr inlineBinding(const ExprPtr& e, NameId binder, const Path& occurrence,
                      NameSupply& ns);

} // namespace lazylet
