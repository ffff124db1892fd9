#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Core term representation for a call-by-need lambda calculus with
// recursive letrec environments, saturated constructor applications,
// complete case expressions and seq. Terms are immutable and shared;
// every "mutation" builds a new spine over shared subtrees.

namespace lazylet {

using NameId = std::uint32_t;

// Global string interner. Ids are stable for the lifetime of the process.
NameId intern(const std::string& text);
const std::string& nameText(NameId id);
bool isInterned(const std::string& text);

struct Path {
    std::vector<int> steps;

    Path() = default;
    explicit Path(std::vector<int> s) : steps(std::move(s)) {}

    Path child(int i) const {
        Path p = *this;
        p.steps.push_back(i);
        return p;
    }
    bool empty() const { return steps.empty(); }
    std::size_t depth() const { return steps.size(); }
    bool operator==(const Path& o) const { return steps == o.steps; }
    bool operator<(const Path& o) const { return steps < o.steps; }
    bool isPrefixOf(const Path& o) const;

    std::string toString() const;            // "2.0.1", "" for the root
    static Path parse(const std::string& s); // inverse of toString
};

enum class Tag { Var, App, Lam, Seq, Con, Case, Letrec };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Alt {
    NameId con = 0;
    std::vector<NameId> vars;
    ExprPtr rhs;
};

struct Binding {
    NameId var = 0;
    ExprPtr rhs;
};

struct Expr {
    Tag tag;
    NameId name = 0;            // Var/Lam/Con: name; Case: type constructor
    std::vector<ExprPtr> kids;  // App: fun,arg; Lam: body; Seq: fst,snd; Con: args; Case: scrutinee
    std::vector<Alt> alts;      // Case only
    std::vector<Binding> binds; // Letrec only
    ExprPtr body;               // Letrec only

    explicit Expr(Tag t) : tag(t) {}
    Expr(const Expr&) = delete;
    Expr& operator=(const Expr&) = delete;

    // lazily computed measures, idempotent writes
    mutable std::atomic<std::int64_t> sizePlain{-1};
    mutable std::atomic<std::int64_t> sizePeano{-1};
    mutable std::atomic<std::int8_t> numeralFlag{-1};
    // free variables, sorted; built on first use (single-threaded construction)
    mutable std::shared_ptr<const std::vector<NameId>> fvCache;
};

// ---- construction -------------------------------------------------------

ExprPtr mkVar(NameId v);
ExprPtr mkVar(const std::string& v);
ExprPtr mkApp(ExprPtr fun, ExprPtr arg);
ExprPtr mkLam(NameId param, ExprPtr body);
ExprPtr mkLam(const std::string& param, ExprPtr body);
ExprPtr mkSeq(ExprPtr fst, ExprPtr snd);
ExprPtr mkCon(NameId con, std::vector<ExprPtr> args);
ExprPtr mkCon(const std::string& con, std::vector<ExprPtr> args = {});
ExprPtr mkCase(NameId tycon, ExprPtr scrut, std::vector<Alt> alts);
ExprPtr mkLetrec(std::vector<Binding> binds, ExprPtr body);

// apply fun to each argument in turn
ExprPtr mkApps(ExprPtr fun, const std::vector<ExprPtr>& args);
// Succ^k Zero
ExprPtr mkNumeral(std::uint64_t k);

// ---- data declarations ---------------------------------------------------

struct DataDecl {
    std::string tycon;
    std::vector<std::pair<std::string, int>> constructors; // name, arity
};

// Constructor signatures in scope for parsing/validation.
class Declarations {
public:
    static const Declarations& prelude(); // Bool, List, Nat

    Declarations() = default;
    explicit Declarations(const std::vector<DataDecl>& decls);

    void add(const DataDecl& d); // throws on duplicate constructor names

    bool knownCon(NameId c) const;
    int arity(NameId c) const;
    NameId tyconOf(NameId c) const;
    bool knownTycon(NameId t) const;
    // constructors of a tycon in declaration order
    const std::vector<NameId>& constructorsOf(NameId tycon) const;

    std::vector<DataDecl> decls() const { return decls_; }

private:
    struct ConInfo {
        NameId tycon;
        int arity;
    };
    std::map<NameId, ConInfo> cons_;
    std::map<NameId, std::vector<NameId>> tycons_;
    std::vector<DataDecl> decls_;
};

// ---- navigation ----------------------------------------------------------

// Children are indexed as follows:
//   App: 0 fun, 1 arg; Lam: 0 body; Seq: 0 fst, 1 snd; Con: 0..n-1 args;
//   Case: 0 scrutinee, 1..n alternative bodies;
//   Letrec: 0..n-1 binding right-hand sides, n body.
int childCount(const Expr& e);
ExprPtr childAt(const ExprPtr& e, int i);
ExprPtr replaceChild(const ExprPtr& e, int i, ExprPtr sub);

ExprPtr subtermAt(const ExprPtr& e, const Path& p); // throws on bad path
ExprPtr replaceAt(const ExprPtr& e, const Path& p, ExprPtr sub);

// ---- queries -------------------------------------------------------------

bool isValue(const Expr& e); // abstraction or constructor application

const std::vector<NameId>& freeVarsSorted(const ExprPtr& e);
std::set<std::string> freeVars(const ExprPtr& e);
bool isClosed(const ExprPtr& e);
bool freeIn(NameId v, const ExprPtr& e);
std::size_t countFreeOccurrences(NameId v, const ExprPtr& e);

// every name that occurs anywhere (free, bound, binder position)
void collectAllNames(const ExprPtr& e, std::set<NameId>& out);
// binder names in binding position (lambda params, letrec binders, pattern vars)
void collectBinders(const ExprPtr& e, std::vector<NameId>& out);
// true when all binders are pairwise distinct and disjoint from free variables
bool hasDistinctBinders(const ExprPtr& e);

bool alphaEqual(const ExprPtr& a, const ExprPtr& b);

// structural well-formedness: letrec arity/duplicates, constructor
// saturation and case completeness against the declarations.
// Throws std::runtime_error with a description on the first violation.
void validate(const ExprPtr& e, const Declarations& decls);

// names of variables bound by enclosing binders at path p (innermost last)
std::vector<NameId> bindersInScopeAt(const ExprPtr& e, const Path& p);

} // namespace lazylet
