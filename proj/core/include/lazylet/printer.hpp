#pragma once

#include "lazylet/ast.hpp"

namespace lazylet {

struct PrintOptions {
    // break top-level letrec bindings onto separate lines
    bool multiline = false;
};

// Concrete syntax; reparsing yields an alpha-equal term.
std::string print(const ExprPtr& e, const PrintOptions& opts = {});

// "data T = C n | ... ;" lines for the given declarations
std::string printDecls(const std::vector<DataDecl>& decls);

} // namespace lazylet
