#include "lazylet/printer.hpp"

#include <sstream>

namespace lazylet {

namespace {

bool isAtom(const Expr& e) {
    return e.tag == Tag::Var || (e.tag == Tag::Con && e.kids.empty());
}

class Printer {
public:
    explicit Printer(const PrintOptions& opts) : opts_(opts) {}

    std::string run(const ExprPtr& e) {
        emit(e, 0);
        return os_.str();
    }

private:
    void atom(const ExprPtr& e, int depth) {
        if (isAtom(*e)) {
            emit(e, depth);
        } else {
            os_ << '(';
            emit(e, depth);
            os_ << ')';
        }
    }

    // a function-position operand: applications chain without parens
    void head(const ExprPtr& e, int depth) {
        if (e->tag == Tag::App || e->tag == Tag::Con) {
            emit(e, depth);
        } else {
            atom(e, depth);
        }
    }

    void emit(const ExprPtr& e, int depth) {
        switch (e->tag) {
            case Tag::Var:
                os_ << nameText(e->name);
                break;
            case Tag::App:
                head(e->kids[0], depth);
                os_ << ' ';
                atom(e->kids[1], depth);
                break;
            case Tag::Lam: {
                os_ << '\\' << nameText(e->name);
                ExprPtr body = e->kids[0];
                while (body->tag == Tag::Lam) {
                    os_ << ' ' << nameText(body->name);
                    body = body->kids[0];
                }
                os_ << " -> ";
                emit(body, depth + 1);
                break;
            }
            case Tag::Seq:
                os_ << "seq ";
                atom(e->kids[0], depth);
                os_ << ' ';
                atom(e->kids[1], depth);
                break;
            case Tag::Con:
                os_ << nameText(e->name);
                for (const auto& a : e->kids) {
                    os_ << ' ';
                    atom(a, depth);
                }
                break;
            case Tag::Case: {
                os_ << "case ";
                emit(e->kids[0], depth + 1);
                os_ << " of {";
                for (std::size_t i = 0; i < e->alts.size(); ++i) {
                    const Alt& a = e->alts[i];
                    if (i) os_ << ';';
                    os_ << ' ' << nameText(a.con);
                    for (NameId v : a.vars) os_ << ' ' << nameText(v);
                    os_ << " -> ";
                    emit(a.rhs, depth + 1);
                }
                os_ << " }";
                break;
            }
            case Tag::Letrec: {
                bool lines = opts_.multiline && depth == 0;
                os_ << "letrec";
                for (std::size_t i = 0; i < e->binds.size(); ++i) {
                    if (i) os_ << ',';
                    os_ << (lines ? "\n  " : " ");
                    os_ << nameText(e->binds[i].var) << " = ";
                    emit(e->binds[i].rhs, depth + 1);
                }
                os_ << (lines ? "\nin " : " in ");
                emit(e->body, lines ? depth : depth + 1);
                break;
            }
        }
    }

    PrintOptions opts_;
    std::ostringstream os_;
};

} // namespace

std::string print(const ExprPtr& e, const PrintOptions& opts) {
    return Printer(opts).run(e);
}

std::string printDecls(const std::vector<DataDecl>& decls) {
    std::ostringstream os;
    for (const auto& d : decls) {
        os << "data " << d.tycon << " = ";
        for (std::size_t i = 0; i < d.constructors.size(); ++i) {
            if (i) os << " | ";
            os << d.constructors[i].first;
            if (d.constructors[i].second != 0) os << ' ' << d.constructors[i].second;
        }
        os << ";\n";
    }
    return os.str();
}

} // namespace lazylet
