#include "lazylet/bench.hpp"

#include "lazylet/parser.hpp"

#include <sstream>

namespace lazylet {

std::string benchRowTsv(const BenchRow& r) {
    std::ostringstream os;
    os << r.variant << '\t' << (r.inlined ? "true" : "false") << '\t' << r.k << '\t'
       << r.rln << '\t' << r.spmax;
    return os.str();
}

BenchRow foldExperiment(corpus::FoldVariant v, bool inlined, std::uint64_t k,
                        std::uint64_t fuel) {
    ExprPtr prog = corpus::foldProgram(v, inlined, k);
    SizeOptions opts;
    opts.peanoAsUnit = true;
    EvalResult r = evaluate(prog, fuel, opts);
    BenchRow row;
    row.variant = corpus::foldVariantName(v);
    row.inlined = inlined;
    row.k = k;
    row.status = r.status;
    row.rln = r.measures.rln;
    row.spmax = r.measures.spmax.value_or(0);
    if (r.status != EvalStatus::Whnf)
        throw EvalError("fold experiment did not converge within fuel");
    return row;
}

std::vector<BenchRow> foldTable(const std::vector<std::uint64_t>& ks,
                                std::uint64_t fuel) {
    std::vector<BenchRow> rows;
    for (auto v : {corpus::FoldVariant::Foldl, corpus::FoldVariant::FoldlStrict,
                   corpus::FoldVariant::Foldr}) {
        for (bool inlined : {false, true}) {
            for (std::uint64_t k : ks) rows.push_back(foldExperiment(v, inlined, k, fuel));
        }
    }
    return rows;
}

CseDemoRow cseDemo(std::uint64_t n, std::uint64_t fuel) {
    SizeOptions opts;
    opts.peanoAsUnit = true;
    EvalResult before = evaluate(corpus::cseDemoBefore(n), fuel, opts);
    EvalResult after = evaluate(corpus::cseDemoAfter(n), fuel, opts);
    if (before.status != EvalStatus::Whnf || after.status != EvalStatus::Whnf)
        throw EvalError("cse demo did not converge within fuel");
    return {n, *before.measures.spmax, *after.measures.spmax};
}

namespace {

// lastB [.] around a filled term
ExprPtr lastContext(const ExprPtr& inner) {
    static const ExprPtr tmpl = parseExpr(R"(
letrec
  lastB = \l -> case l of { Nil -> False ; Cons b bs -> case bs of { Nil -> b ; Cons c cs -> lastB bs } }
in lastB hole0
)");
    return replaceAt(tmpl, Path{{1, 1}}, inner);
}

} // namespace

AppendRow appendAssoc(std::uint64_t n, std::uint64_t fuel) {
    SizeOptions opts;
    opts.peanoAsUnit = true;
    AppendRow row;
    row.n = n;

    ExprPtr appLeft = corpus::appendExpr(true, n);
    ExprPtr appRight = corpus::appendExpr(false, n);

    EvalResult left = evaluate(lastContext(appLeft), fuel, opts);
    EvalResult right = evaluate(lastContext(appRight), fuel, opts);
    if (left.status != EvalStatus::Whnf || right.status != EvalStatus::Whnf)
        throw EvalError("append experiment did not converge within fuel");
    row.deltaLastContext = static_cast<std::int64_t>(*left.measures.spmax) -
                           static_cast<std::int64_t>(*right.measures.spmax);

    // the same re-association under a context whose tail dominates the peak
    ContextTemplate dom = generateContexts(seqDominatorFamily(), 20 * n + 40, 0)[0];
    EvalResult dl = evaluate(fillHole(dom, appLeft), fuel, opts);
    EvalResult dr = evaluate(fillHole(dom, appRight), fuel, opts);
    if (dl.status != EvalStatus::Whnf || dr.status != EvalStatus::Whnf)
        throw EvalError("append dominator experiment did not converge within fuel");
    row.deltaSeqDominator = static_cast<std::int64_t>(*dl.measures.spmax) -
                            static_cast<std::int64_t>(*dr.measures.spmax);
    return row;
}

} // namespace lazylet
