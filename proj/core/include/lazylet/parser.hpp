#pragma once

#include "lazylet/ast.hpp"

namespace lazylet {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

struct ParseResult {
    std::vector<DataDecl> decls; // declarations from this text only
    Declarations scope;          // base declarations plus the new ones
    ExprPtr expr;
};

// Parses "datadecl* expr". Alternatives are reordered to declaration
// order; saturation, case completeness and letrec binder distinctness
// are enforced here.
ParseResult parse(const std::string& text,
                  const Declarations& base = Declarations::prelude());

// Convenience for tests and corpus text without declarations.
ExprPtr parseExpr(const std::string& text,
                  const Declarations& decls = Declarations::prelude());

} // namespace lazylet
