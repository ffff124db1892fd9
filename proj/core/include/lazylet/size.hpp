#pragma once

#include "lazylet/ast.hpp"

namespace lazylet {

struct SizeOptions {
    // count every closed Succ^k Zero constructor tree as one unit
    bool peanoAsUnit = false;
};

// Term size: variables cost 0; applications, abstractions, seqs,
// constructor applications, case expressions and case alternatives cost
// 1 plus their children; a letrec costs only the sum of its right-hand
// sides plus its body.
std::uint64_t size(const ExprPtr& e, const SizeOptions& opts = {});

// closed Peano numeral in constructor form
bool isNumeral(const ExprPtr& e);

} // namespace lazylet
