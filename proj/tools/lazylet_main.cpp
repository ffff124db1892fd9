// Command-line front end: evaluation, tracing, redex listing, rule
// application, space-behavior checking and the experiment tables.

#include "lazylet/bench.hpp"
#include "lazylet/corpus.hpp"
#include "lazylet/parser.hpp"
#include "lazylet/printer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace lazylet;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitFuel = 2;
constexpr int kExitBlackhole = 3;

std::uint64_t defaultFuel() {
    if (const char* env = std::getenv("LAZYLET_FUEL")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring invalid LAZYLET_FUEL\n";
        }
    }
    return 1'000'000;
}

ParseResult loadFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

int statusExitCode(EvalStatus s) {
    switch (s) {
        case EvalStatus::Whnf: return kExitOk;
        case EvalStatus::FuelExhausted: return kExitFuel;
        case EvalStatus::Blackhole: return kExitBlackhole;
    }
    return kExitOk;
}

std::vector<std::uint64_t> parseRange(const std::string& spec) {
    // "100..1000:100" or comma list "5,10,20"
    std::vector<std::uint64_t> out;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        std::uint64_t lo = std::stoull(spec.substr(0, dots));
        std::string rest = spec.substr(dots + 2);
        std::uint64_t step = 0;
        auto colon = rest.find(':');
        std::uint64_t hi;
        if (colon != std::string::npos) {
            hi = std::stoull(rest.substr(0, colon));
            step = std::stoull(rest.substr(colon + 1));
        } else {
            hi = std::stoull(rest);
            step = lo;
        }
        if (step == 0) throw std::runtime_error("zero step in range");
        for (std::uint64_t k = lo; k <= hi; k += step) out.push_back(k);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"call-by-need letrec calculus workbench"};
    app.require_subcommand(1);

    std::string file;
    std::uint64_t fuel = defaultFuel();
    std::uint64_t seed = 0;
    bool peanoUnit = false;

    auto addCommon = [&](CLI::App* cmd, bool wantsFile = true) {
        if (wantsFile) cmd->add_option("file", file, "program file")->required();
        cmd->add_option("--fuel", fuel, "non-gc step budget");
        cmd->add_option("--seed", seed, "fresh-name counter seed");
        cmd->add_flag("--peano-unit", peanoUnit, "count closed numerals as size 1");
    };

    auto* evalCmd = app.add_subcommand("eval", "evaluate and print the summary line");
    addCommon(evalCmd);
    auto* measureCmd = app.add_subcommand("measure", "alias of eval");
    addCommon(measureCmd);
    auto* traceCmd = app.add_subcommand("trace", "per-step rule and size records");
    addCommon(traceCmd);

    auto* redexCmd = app.add_subcommand("redexes", "list rule instances");
    addCommon(redexCmd);
    std::string ruleToken;
    redexCmd->add_option("--rule", ruleToken, "rule token")->required();

    auto* transformCmd = app.add_subcommand("transform", "apply a rule instance");
    addCommon(transformCmd);
    std::string pos;
    bool applyAll = false;
    bool assumeTyped = false;
    std::string seqVar;
    transformCmd->add_option("--rule", ruleToken, "rule token")->required();
    transformCmd->add_option("--pos", pos, "dot-separated position (empty = root)");
    transformCmd->add_flag("--all", applyAll, "apply every instance, first to last");
    transformCmd->add_flag("--assume-typed", assumeTyped,
                           "allow rules that are only correct on typed programs");
    transformCmd->add_option("--var", seqVar, "demanded variable for seqInsert");

    auto* psiCmd = app.add_subcommand("psi", "translate to machine-expression form");
    addCommon(psiCmd);

    auto* checkCmd = app.add_subcommand("check", "space-behavior checks");
    checkCmd->require_subcommand(1);
    std::uint64_t depth = 3;
    std::string nsSpec = "5,10,20";
    auto* tableCmd = checkCmd->add_subcommand("table", "full classification table");
    tableCmd->add_option("--depth", depth, "context depth for the grammar family");
    tableCmd->add_option("--ns", nsSpec, "sizes for the driver family");
    tableCmd->add_option("--fuel", fuel, "non-gc step budget");

    auto* pairCmd = checkCmd->add_subcommand("pair", "check one transformation");
    std::string familyName = "a";
    pairCmd->add_option("file", file, "program file")->required();
    pairCmd->add_option("--rule", ruleToken, "rule token")->required();
    pairCmd->add_option("--pos", pos, "instance position")->required();
    pairCmd->add_option("--family", familyName, "context family: a, b or c");
    pairCmd->add_option("--depth", depth, "context depth for family a");
    pairCmd->add_option("--ns", nsSpec, "sizes for families b and c");
    pairCmd->add_option("--fuel", fuel, "non-gc step budget");
    pairCmd->add_flag("--assume-typed", assumeTyped,
                      "allow rules that are only correct on typed programs");

    auto* cpBoundCmd = checkCmd->add_subcommand("cp-bound", "copy-rule space bounds");
    std::uint64_t samples = 100;
    cpBoundCmd->add_option("--samples", samples, "random instances to test");
    cpBoundCmd->add_option("--seed", seed, "sampling seed");
    cpBoundCmd->add_option("--fuel", fuel, "non-gc step budget");

    auto* benchCmd = app.add_subcommand("bench", "experiment tables");
    benchCmd->require_subcommand(1);
    auto* foldCmd = benchCmd->add_subcommand("fold", "fold/xor table");
    std::string variantName = "foldl";
    bool inlined = false;
    std::string ksSpec = "100..1000:100";
    std::uint64_t singleK = 0;
    foldCmd->add_option("--variant", variantName, "foldl, foldl' or foldr");
    foldCmd->add_flag("--inlined", inlined, "use the inlined definition");
    foldCmd->add_option("--k", singleK, "single list length");
    foldCmd->add_option("--ks", ksSpec, "list lengths, range or comma list");
    foldCmd->add_flag("--full", applyAll, "all variants, plain and inlined");
    foldCmd->add_option("--fuel", fuel, "non-gc step budget");

    auto* cseCmd = benchCmd->add_subcommand("cse", "shared-generator demo");
    cseCmd->add_option("--ns", nsSpec, "list lengths");
    cseCmd->add_option("--fuel", fuel, "non-gc step budget");

    auto* appendCmd = benchCmd->add_subcommand("append", "append re-association demo");
    appendCmd->add_option("--ns", nsSpec, "list lengths");
    appendCmd->add_option("--fuel", fuel, "non-gc step budget");

    CLI11_PARSE(app, argc, argv);

    try {
        SizeOptions sizeOpts;
        sizeOpts.peanoAsUnit = peanoUnit;

        if (evalCmd->parsed() || measureCmd->parsed()) {
            EvalResult r = evaluate(loadFile(file).expr, fuel, sizeOpts, seed);
            std::cout << formatSummary(r) << '\n';
            return statusExitCode(r.status);
        }

        if (traceCmd->parsed()) {
            EvalResult r = evaluate(loadFile(file).expr, fuel, sizeOpts, seed);
            for (std::size_t i = 0; i < r.steps.size(); ++i)
                std::cout << formatTraceLine(i, r.steps[i]) << '\n';
            std::cout << formatSummary(r) << '\n';
            return statusExitCode(r.status);
        }

        if (redexCmd->parsed()) {
            auto rule = ruleFromName(ruleToken);
            if (!rule) {
                std::cerr << "unknown rule '" << ruleToken << "'\n";
                return kExitUserError;
            }
            ExprPtr e = loadFile(file).expr;
            for (const auto& inst : listRedexes(e, *rule)) {
                std::cout << inst.position.toString() << '\t' << ruleName(inst.rule)
                          << '\t' << contextClassName(inst.contextClass) << '\n';
            }
            return kExitOk;
        }

        if (transformCmd->parsed()) {
            auto rule = ruleFromName(ruleToken);
            if (!rule) {
                std::cerr << "unknown rule '" << ruleToken << "'\n";
                return kExitUserError;
            }
            if (*rule == Rule::CaseId && !assumeTyped) {
                std::cerr << "caseId is only correct on typed programs; pass "
                             "--assume-typed to apply it\n";
                return kExitUserError;
            }
            ParseResult pr = loadFile(file);
            ExprPtr e = pr.expr;
            NameSupply ns(seed);
            ns.reserveAllNames(e);
            if (*rule == Rule::SeqInsert) {
                if (seqVar.empty()) {
                    std::cerr << "seqInsert requires --var\n";
                    return kExitUserError;
                }
                e = seqInsert(e, Path::parse(pos), intern(seqVar));
            } else if (*rule == Rule::Psi) {
                e = psiTranslate(e, ns);
            } else if (applyAll) {
                auto insts = listRedexes(e, *rule);
                for (const auto& inst : insts) {
                    try {
                        e = applyRule(e, inst, ns);
                    } catch (const TransformError&) {
                        // instances invalidated by earlier rewrites are skipped
                    }
                }
            } else {
                Path want = Path::parse(pos);
                auto insts = listRedexes(e, *rule);
                const RuleInstance* found = nullptr;
                for (const auto& inst : insts)
                    if (inst.position == want) found = &inst;
                if (!found) {
                    std::cerr << "no " << ruleToken << " instance at '" << pos << "'\n";
                    return kExitUserError;
                }
                e = applyRule(e, *found, ns);
            }
            std::cout << printDecls(pr.decls);
            PrintOptions po;
            po.multiline = true;
            std::cout << print(e, po) << '\n';
            return kExitOk;
        }

        if (psiCmd->parsed()) {
            ParseResult pr = loadFile(file);
            PrintOptions po;
            po.multiline = true;
            std::cout << printDecls(pr.decls);
            std::cout << print(psiTranslate(pr.expr, seed), po) << '\n';
            return kExitOk;
        }

        if (tableCmd->parsed()) {
            CheckParams params;
            params.depth = depth;
            params.ns = parseRange(nsSpec);
            params.fuel = fuel;
            bool allPass = true;
            for (const auto& row : checkTheoremTable(params)) {
                std::cout << verdictTsv(row.verdict) << '\t'
                          << expectationName(row.expectation) << '\t'
                          << (row.pass ? "pass" : "FAIL") << '\n';
                if (!row.pass) allPass = false;
            }
            return allPass ? kExitOk : kExitUserError;
        }

        if (pairCmd->parsed()) {
            auto rule = ruleFromName(ruleToken);
            if (!rule) {
                std::cerr << "unknown rule '" << ruleToken << "'\n";
                return kExitUserError;
            }
            if (*rule == Rule::CaseId && !assumeTyped) {
                std::cerr << "caseId is only correct on typed programs; pass "
                             "--assume-typed to apply it\n";
                return kExitUserError;
            }
            ExprPtr e = loadFile(file).expr;
            Path want = Path::parse(pos);
            const auto insts = listRedexes(e, *rule);
            const RuleInstance* found = nullptr;
            for (const auto& inst : insts)
                if (inst.position == want) found = &inst;
            if (!found) {
                std::cerr << "no " << ruleToken << " instance at '" << pos << "'\n";
                return kExitUserError;
            }
            ExprPtr after = applyRule(e, *found);
            ContextFamily family = reductionFamily();
            if (familyName == "b")
                family = listDriverFamily();
            else if (familyName == "c")
                family = seqDominatorFamily();
            else if (familyName != "a") {
                std::cerr << "unknown family '" << familyName << "'\n";
                return kExitUserError;
            }
            CheckParams params;
            params.depth = depth;
            params.ns = parseRange(nsSpec);
            params.fuel = fuel;
            std::cout << verdictTsv(checkPair(e, after, family, params, ruleToken))
                      << '\n';
            return kExitOk;
        }

        if (cpBoundCmd->parsed()) {
            // deterministic linear-congruential pick over corpus instances
            std::vector<std::pair<ExprPtr, RuleInstance>> all;
            for (const auto& [name, prog] : corpus::convergingPrograms()) {
                for (Rule r : {Rule::CpIn, Rule::CpE})
                    for (const auto& inst : listRedexes(prog, r))
                        all.emplace_back(prog, inst);
            }
            if (all.empty()) {
                std::cerr << "no cp instances in the corpus\n";
                return kExitUserError;
            }
            std::uint64_t state = seed * 6364136223846793005ull + 1442695040888963407ull;
            std::size_t violations = 0;
            std::size_t tested = 0;
            for (std::size_t i = 0; i < samples; ++i) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                const auto& [prog, inst] = all[state % all.size()];
                CpBoundReport rep = checkCpBound(prog, inst, fuel);
                if (!rep.converged) continue;
                ++tested;
                if (!rep.generalBoundHolds || !rep.surfaceBoundHolds) ++violations;
            }
            std::cout << "cp-bound\ttested\t" << tested << "\tviolations\t" << violations
                      << '\n';
            return violations == 0 ? kExitOk : kExitUserError;
        }

        if (foldCmd->parsed()) {
            SizeOptions unused = sizeOpts;
            (void)unused;
            auto printRow = [](const BenchRow& r) {
                std::cout << benchRowTsv(r) << '\n';
            };
            if (applyAll) {
                for (const auto& r : foldTable(parseRange(ksSpec), fuel)) printRow(r);
                return kExitOk;
            }
            corpus::FoldVariant v;
            if (variantName == "foldl")
                v = corpus::FoldVariant::Foldl;
            else if (variantName == "foldl'" || variantName == "foldl-strict")
                v = corpus::FoldVariant::FoldlStrict;
            else if (variantName == "foldr")
                v = corpus::FoldVariant::Foldr;
            else {
                std::cerr << "unknown variant '" << variantName << "'\n";
                return kExitUserError;
            }
            if (singleK > 0) {
                printRow(foldExperiment(v, inlined, singleK, fuel));
            } else {
                for (std::uint64_t k : parseRange(ksSpec))
                    printRow(foldExperiment(v, inlined, k, fuel));
            }
            return kExitOk;
        }

        if (cseCmd->parsed()) {
            for (std::uint64_t n : parseRange(nsSpec)) {
                CseDemoRow r = cseDemo(n, fuel);
                std::cout << n << '\t' << r.spmaxBefore << '\t' << r.spmaxAfter << '\n';
            }
            return kExitOk;
        }

        if (appendCmd->parsed()) {
            for (std::uint64_t n : parseRange(nsSpec)) {
                AppendRow r = appendAssoc(n, fuel);
                std::cout << n << '\t' << r.deltaLastContext << '\t'
                          << r.deltaSeqDominator << '\n';
            }
            return kExitOk;
        }
    } catch (const ParseError& ex) {
        std::cerr << file << ":" << ex.what() << '\n';
        return kExitUserError;
    } catch (const OpenTermError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUserError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUserError;
    }
    return kExitUserError;
}
