#include "lazylet/parser.hpp"

#include <algorithm>
#include <cctype>

namespace lazylet {

namespace {

enum class Tok {
    Lower,   // variable
    Upper,   // constructor / type constructor
    Nat,
    Lambda,  // '\'
    Arrow,   // ->
    Equals,
    Bar,
    Semi,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    KwLetrec,
    KwIn,
    KwCase,
    KwOf,
    KwSeq,
    KwData,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool identChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skipSpace();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (c == '\\') {
            take(1, Tok::Lambda);
        } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            take(2, Tok::Arrow);
        } else if (c == '=') {
            take(1, Tok::Equals);
        } else if (c == '|') {
            take(1, Tok::Bar);
        } else if (c == ';') {
            take(1, Tok::Semi);
        } else if (c == ',') {
            take(1, Tok::Comma);
        } else if (c == '(') {
            take(1, Tok::LParen);
        } else if (c == ')') {
            take(1, Tok::RParen);
        } else if (c == '{') {
            take(1, Tok::LBrace);
        } else if (c == '}') {
            take(1, Tok::RBrace);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = pos_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            emit(Tok::Nat, j);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = pos_;
            while (j < src_.size() && identChar(src_[j])) ++j;
            std::string word = src_.substr(pos_, j - pos_);
            Tok k;
            if (word == "letrec")
                k = Tok::KwLetrec;
            else if (word == "in")
                k = Tok::KwIn;
            else if (word == "case")
                k = Tok::KwCase;
            else if (word == "of")
                k = Tok::KwOf;
            else if (word == "seq")
                k = Tok::KwSeq;
            else if (word == "data")
                k = Tok::KwData;
            else if (std::isupper(static_cast<unsigned char>(word[0])))
                k = Tok::Upper;
            else
                k = Tok::Lower;
            emit(k, j);
        } else {
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
    }

    void take(std::size_t n, Tok k) { emit(k, pos_ + n); }

    void emit(Tok k, std::size_t end) {
        tok_.kind = k;
        tok_.text = src_.substr(pos_, end - pos_);
        bump(end);
    }

    void bump(std::size_t end) {
        while (pos_ < end) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skipSpace() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump(pos_ + 1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump(pos_ + 1);
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{};
};

class Parser {
public:
    Parser(const std::string& text, const Declarations& base) : lex_(text), scope_(base) {}

    ParseResult run() {
        while (lex_.peek().kind == Tok::KwData) parseDataDecl();
        ExprPtr e = parseExpr();
        expect(Tok::End, "end of input");
        validate(e, scope_);
        return {newDecls_, scope_, e};
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    Token expect(Tok k, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != k) fail(t, "expected " + what + ", found '" + t.text + "'");
        return t;
    }

    void parseDataDecl() {
        expect(Tok::KwData, "'data'");
        Token name = expect(Tok::Upper, "type constructor name");
        expect(Tok::Equals, "'='");
        DataDecl d;
        d.tycon = name.text;
        while (true) {
            Token con = expect(Tok::Upper, "constructor name");
            int ar = 0;
            if (lex_.peek().kind == Tok::Nat) ar = std::stoi(lex_.next().text);
            d.constructors.emplace_back(con.text, ar);
            if (lex_.peek().kind != Tok::Bar) break;
            lex_.next();
        }
        expect(Tok::Semi, "';'");
        try {
            scope_.add(d);
        } catch (const std::runtime_error& ex) {
            fail(name, ex.what());
        }
        newDecls_.push_back(d);
    }

    ExprPtr parseExpr() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::KwLetrec:
                return parseLetrec();
            case Tok::Lambda:
                return parseLambda();
            case Tok::KwCase:
                return parseCase();
            case Tok::KwSeq: {
                lex_.next();
                ExprPtr a = parseAtom();
                ExprPtr b = parseAtom();
                return mkSeq(a, b);
            }
            default:
                return parseAppExpr();
        }
    }

    ExprPtr parseLetrec() {
        Token kw = lex_.next();
        std::vector<Binding> binds;
        while (true) {
            Token v = expect(Tok::Lower, "binder name");
            expect(Tok::Equals, "'='");
            binds.push_back({intern(v.text), parseExpr()});
            if (lex_.peek().kind != Tok::Comma) break;
            lex_.next();
        }
        expect(Tok::KwIn, "'in'");
        ExprPtr body = parseExpr();
        std::vector<NameId> names;
        for (const auto& b : binds) names.push_back(b.var);
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            fail(kw, "duplicate letrec binder");
        return mkLetrec(std::move(binds), std::move(body));
    }

    ExprPtr parseLambda() {
        lex_.next();
        std::vector<NameId> params;
        while (lex_.peek().kind == Tok::Lower) params.push_back(intern(lex_.next().text));
        if (params.empty()) fail(lex_.peek(), "expected parameter name after '\\'");
        expect(Tok::Arrow, "'->'");
        ExprPtr body = parseExpr();
        for (auto it = params.rbegin(); it != params.rend(); ++it) body = mkLam(*it, body);
        return body;
    }

    ExprPtr parseCase() {
        Token kw = lex_.next();
        ExprPtr scrut = parseExpr();
        expect(Tok::KwOf, "'of'");
        expect(Tok::LBrace, "'{'");
        std::vector<Alt> given;
        while (true) {
            Token con = expect(Tok::Upper, "constructor pattern");
            NameId c = intern(con.text);
            if (!scope_.knownCon(c)) fail(con, "unknown constructor " + con.text);
            Alt a;
            a.con = c;
            while (lex_.peek().kind == Tok::Lower) a.vars.push_back(intern(lex_.next().text));
            if (static_cast<int>(a.vars.size()) != scope_.arity(c))
                fail(con, "pattern for " + con.text + " must bind " +
                              std::to_string(scope_.arity(c)) + " variables");
            expect(Tok::Arrow, "'->'");
            a.rhs = parseExpr();
            given.push_back(std::move(a));
            if (lex_.peek().kind != Tok::Semi) break;
            lex_.next();
        }
        expect(Tok::RBrace, "'}'");

        NameId tycon = scope_.tyconOf(given[0].con);
        const auto& order = scope_.constructorsOf(tycon);
        std::vector<Alt> alts(order.size());
        std::vector<bool> seen(order.size(), false);
        for (auto& a : given) {
            if (scope_.tyconOf(a.con) != tycon)
                fail(kw, "case alternatives mix constructors of different types");
            std::size_t ix =
                std::find(order.begin(), order.end(), a.con) - order.begin();
            if (seen[ix]) fail(kw, "duplicate case alternative for " + nameText(a.con));
            seen[ix] = true;
            alts[ix] = std::move(a);
        }
        for (std::size_t i = 0; i < order.size(); ++i)
            if (!seen[i])
                fail(kw, "incomplete case: missing alternative for " + nameText(order[i]));
        return mkCase(tycon, std::move(scrut), std::move(alts));
    }

    ExprPtr parseAppExpr() {
        ExprPtr head = parseHead();
        std::vector<ExprPtr> args;
        while (startsAtom(lex_.peek().kind)) args.push_back(parseAtom());
        return mkApps(head, args);
    }

    static bool startsAtom(Tok k) {
        return k == Tok::Lower || k == Tok::Upper || k == Tok::LParen;
    }

    // an atom, except that an upper-case head absorbs arity-many atoms
    ExprPtr parseHead() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Upper) return parseConApp();
        return parseAtom();
    }

    ExprPtr parseConApp() {
        Token con = expect(Tok::Upper, "constructor");
        NameId c = intern(con.text);
        if (!scope_.knownCon(c)) fail(con, "unknown constructor " + con.text);
        int ar = scope_.arity(c);
        std::vector<ExprPtr> args;
        for (int i = 0; i < ar; ++i) {
            if (!startsAtom(lex_.peek().kind))
                fail(con, "unsaturated constructor application of " + con.text +
                              ": expected " + std::to_string(ar) + " arguments");
            args.push_back(parseAtom());
        }
        return mkCon(c, std::move(args));
    }

    ExprPtr parseAtom() {
        Token t = lex_.next();
        switch (t.kind) {
            case Tok::Lower:
                return mkVar(intern(t.text));
            case Tok::Upper: {
                NameId c = intern(t.text);
                if (!scope_.knownCon(c)) fail(t, "unknown constructor " + t.text);
                if (scope_.arity(c) != 0)
                    fail(t, "unsaturated constructor application of " + t.text);
                return mkCon(c, {});
            }
            case Tok::LParen: {
                ExprPtr e = parseExpr();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                fail(t, "expected an expression, found '" + t.text + "'");
        }
    }

    Lexer lex_;
    Declarations scope_;
    std::vector<DataDecl> newDecls_;
};

} // namespace

ParseResult parse(const std::string& text, const Declarations& base) {
    Parser p(text, base);
    return p.run();
}

ExprPtr parseExpr(const std::string& text, const Declarations& decls) {
    ParseResult r = parse(text, decls);
    if (!r.decls.empty())
        throw std::runtime_error("unexpected data declarations in expression text");
    return r.expr;
}

} // namespace lazylet
