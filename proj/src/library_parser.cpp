#include <set>
#include <stdexcept>

#include "resolute/ast.hpp"
#include "resolute/lexer.hpp"

namespace resolute {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "forall", "exists", "let", "and", "or", "not", "if", "then", "else", "for", "in", "true", "false", "const",
    "external",
};

constexpr int kOrPrec = 1;
constexpr int kAndPrec = 2;
constexpr int kCmpPrec = 3;

struct OpInfo {
    BinaryOp op;
    int prec;
};

std::optional<OpInfo> binary_op(const Token& t) {
    if (t.kind == TokenKind::Ident) {
        if (t.text == "or") return OpInfo{BinaryOp::Or, kOrPrec};
        if (t.text == "and") return OpInfo{BinaryOp::And, kAndPrec};
        return std::nullopt;
    }
    if (t.kind != TokenKind::Punct) return std::nullopt;
    if (t.text == "=") return OpInfo{BinaryOp::Eq, kCmpPrec};
    if (t.text == "<>") return OpInfo{BinaryOp::Ne, kCmpPrec};
    if (t.text == "<") return OpInfo{BinaryOp::Lt, kCmpPrec};
    if (t.text == "<=") return OpInfo{BinaryOp::Le, kCmpPrec};
    if (t.text == ">") return OpInfo{BinaryOp::Gt, kCmpPrec};
    if (t.text == ">=") return OpInfo{BinaryOp::Ge, kCmpPrec};
    if (t.text == "+") return OpInfo{BinaryOp::Add, 4};
    if (t.text == "-") return OpInfo{BinaryOp::Sub, 4};
    if (t.text == "*") return OpInfo{BinaryOp::Mul, 5};
    if (t.text == "/") return OpInfo{BinaryOp::Div, 5};
    return std::nullopt;
}

class LibraryParser {
public:
    explicit LibraryParser(TokenStream& ts) : ts_(ts) {}

    Library parse_library() {
        Library lib;
        while (!ts_.at_end()) parse_definition(lib);
        return lib;
    }

    ExprPtr parse_standalone_expr() {
        ExprPtr e = parse_expr();
        if (!ts_.at_end()) ts_.fail("unexpected " + describe(ts_.peek()) + " after expression");
        return e;
    }

private:
    TokenStream& ts_;

    std::string expect_identifier(std::string_view what) {
        const Token& t = ts_.expect_kind(TokenKind::Ident, what);
        if (kReserved.count(t.text)) ts_.fail_at(t, "reserved word '" + t.text + "' cannot be used as an identifier");
        return t.text;
    }

    Type parse_type() {
        const Token& t = ts_.peek();
        if (ts_.accept_punct("{")) {
            Type element = parse_type();
            ts_.expect_punct("}");
            return Type::set_of(std::move(element));
        }
        if (t.kind == TokenKind::Ident) {
            if (auto type = Type::from_name(t.text)) {
                ts_.next();
                return *type;
            }
        }
        ts_.fail("expected a type but found " + describe(t));
    }

    std::vector<Param> parse_params() {
        std::vector<Param> params;
        ts_.expect_punct("(");
        if (!ts_.peek().is_punct(")")) {
            do {
                Param p;
                p.loc = ts_.peek().loc;
                p.name = expect_identifier("parameter name");
                ts_.expect_punct(":");
                p.type = parse_type();
                params.push_back(std::move(p));
            } while (ts_.accept_punct(","));
        }
        ts_.expect_punct(")");
        return params;
    }

    void parse_definition(Library& lib) {
        const Token& start = ts_.peek();
        if (ts_.accept_ident("const")) {
            ConstDef c;
            c.loc = ts_.peek().loc;
            c.name = expect_identifier("constant name");
            ts_.expect_punct(":");
            c.type = parse_type();
            ts_.expect_punct("=");
            c.value = parse_expr();
            lib.constants.push_back(std::move(c));
            return;
        }
        if (ts_.accept_ident("external")) {
            ExternalDef e;
            if (ts_.peek().is_ident("stateless") && ts_.peek(1).kind == TokenKind::Ident) {
                ts_.next();
                e.stateless = true;
            }
            e.loc = ts_.peek().loc;
            e.name = expect_identifier("external name");
            e.params = parse_params();
            ts_.expect_punct(":");
            e.return_type = parse_type();
            ts_.expect_punct("=");
            e.command = ts_.expect_kind(TokenKind::String, "a command string").text;
            lib.externals.push_back(std::move(e));
            return;
        }
        if (start.kind != TokenKind::Ident) ts_.fail("expected a definition but found " + describe(start));
        SourceLocation loc = start.loc;
        std::string name = expect_identifier("definition name");
        std::vector<Param> params = parse_params();
        if (ts_.accept_punct("<=")) {
            RuleClause clause;
            clause.claim = std::move(name);
            clause.params = std::move(params);
            clause.loc = loc;
            ts_.expect_punct("**");
            while (!ts_.accept_punct("**")) {
                if (ts_.at_end()) ts_.fail("unterminated claim description");
                DescriptionSegment seg;
                if (ts_.peek().kind == TokenKind::String) {
                    seg.text = ts_.next().text;
                } else {
                    seg.expr = parse_expr();
                }
                clause.description.push_back(std::move(seg));
            }
            clause.body = parse_formula();
            lib.clauses.push_back(std::move(clause));
            return;
        }
        if (ts_.accept_punct(":")) {
            FunDef f;
            f.name = std::move(name);
            f.params = std::move(params);
            f.loc = loc;
            f.return_type = parse_type();
            ts_.expect_punct("=");
            f.body = parse_expr();
            lib.functions.push_back(std::move(f));
            return;
        }
        ts_.fail("expected '<=' (claim rule) or ':' (function definition) but found " + describe(ts_.peek()));
    }

    // -- formulas ----------------------------------------------------------

    FormulaPtr parse_formula() {
        FormulaPtr lhs = parse_disjunction();
        if (ts_.peek().is_punct("=>")) {
            SourceLocation loc = ts_.next().loc;
            ExprPtr antecedent = to_expr(std::move(lhs));
            FormulaPtr rhs = parse_formula();
            return make_formula(formula::Implies{std::move(antecedent), std::move(rhs)}, loc);
        }
        return lhs;
    }

    FormulaPtr parse_disjunction() {
        FormulaPtr lhs = parse_conjunction();
        while (ts_.peek().is_ident("or")) {
            SourceLocation loc = ts_.next().loc;
            FormulaPtr rhs = parse_conjunction();
            lhs = make_formula(formula::Or{std::move(lhs), std::move(rhs)}, loc);
        }
        return lhs;
    }

    FormulaPtr parse_conjunction() {
        FormulaPtr lhs = parse_unit();
        while (ts_.peek().is_ident("and")) {
            SourceLocation loc = ts_.next().loc;
            FormulaPtr rhs = parse_unit();
            lhs = make_formula(formula::And{std::move(lhs), std::move(rhs)}, loc);
        }
        return lhs;
    }

    FormulaPtr parse_unit() {
        const Token& t = ts_.peek();
        SourceLocation loc = t.loc;
        if (t.is_ident("forall") || t.is_ident("exists")) {
            Quantifier q = t.text == "forall" ? Quantifier::Forall : Quantifier::Exists;
            ts_.next();
            std::vector<std::pair<std::string, Domain>> bindings;
            do {
                bindings.push_back(parse_binding());
            } while (ts_.peek().is_punct("("));
            ts_.expect_punct(".");
            FormulaPtr body = parse_formula();
            for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
                body = make_formula(formula::Quantified{q, it->first, std::move(it->second), std::move(body)}, loc);
            }
            return body;
        }
        if (t.is_ident("let")) {
            ts_.next();
            std::string var = expect_identifier("variable name");
            ts_.expect_punct(":");
            Type type = parse_type();
            ts_.expect_punct("=");
            ExprPtr value = parse_expr();
            ts_.expect_punct(";");
            FormulaPtr body = parse_formula();
            return make_formula(formula::Let{std::move(var), std::move(type), std::move(value), std::move(body)}, loc);
        }
        if (t.is_punct("(")) {
            ts_.next();
            FormulaPtr inner = parse_formula();
            ts_.expect_punct(")");
            auto op = binary_op(ts_.peek());
            if (op && op->prec >= kCmpPrec) {
                ExprPtr e = parse_binary_rest(to_expr(std::move(inner)), kCmpPrec);
                return make_formula(formula::EvalAtom{std::move(e)}, loc);
            }
            return inner;
        }
        ExprPtr e = parse_binary_rest(parse_unary(), kCmpPrec);
        if (auto call = std::get_if<expr::Call>(&e->node)) {
            // Tentatively a claim; typecheck turns calls of computations into
            // evaluation atoms.
            return make_formula(formula::ClaimApp{call->callee, std::move(call->args)}, e->loc);
        }
        return make_formula(formula::EvalAtom{std::move(e)}, loc);
    }

    ExprPtr to_expr(FormulaPtr f) {
        SourceLocation loc = f->loc;
        return std::visit(
            [&](auto& x) -> ExprPtr {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, formula::ClaimApp>) {
                    return make_expr(expr::Call{x.claim, std::move(x.args)}, loc);
                } else if constexpr (std::is_same_v<T, formula::EvalAtom>) {
                    return std::move(x.expr);
                } else if constexpr (std::is_same_v<T, formula::And>) {
                    return make_expr(expr::Binary{BinaryOp::And, to_expr(std::move(x.lhs)), to_expr(std::move(x.rhs))},
                                     loc);
                } else if constexpr (std::is_same_v<T, formula::Or>) {
                    return make_expr(expr::Binary{BinaryOp::Or, to_expr(std::move(x.lhs)), to_expr(std::move(x.rhs))},
                                     loc);
                } else {
                    throw ParseError(loc, "expected a computation here; quantifiers, 'let' and '=>' "
                                          "cannot be used as values");
                }
            },
            f->node);
    }

    std::pair<std::string, Domain> parse_binding() {
        ts_.expect_punct("(");
        std::string var = expect_identifier("variable name");
        Domain d;
        if (ts_.accept_ident("in")) {
            d.set = parse_expr();
        } else {
            ts_.expect_punct(":");
            const Token& t = ts_.peek();
            if (t.kind == TokenKind::Ident && Type::from_name(t.text) && !ts_.peek(1).is_punct("(")) {
                d.type = parse_type();
            } else if (t.is_punct("{")) {
                ts_.fail("expected a model type; use '(" + var + " in <set>)' to range over a set");
            } else {
                ts_.fail("expected a model type but found " + describe(t) + "; use '(" + var +
                         " in <set>)' to range over a set");
            }
        }
        ts_.expect_punct(")");
        return {std::move(var), std::move(d)};
    }

    // -- expressions -------------------------------------------------------

    ExprPtr parse_expr() { return parse_binary_rest(parse_unary(), kOrPrec); }

    ExprPtr parse_binary_rest(ExprPtr lhs, int min_prec) {
        while (true) {
            auto op = binary_op(ts_.peek());
            if (!op || op->prec < min_prec) return lhs;
            SourceLocation loc = ts_.next().loc;
            ExprPtr rhs = parse_binary_rest(parse_unary(), op->prec + 1);
            lhs = make_expr(expr::Binary{op->op, std::move(lhs), std::move(rhs)}, loc);
        }
    }

    ExprPtr parse_unary() {
        const Token& t = ts_.peek();
        SourceLocation loc = t.loc;
        if (t.is_ident("not")) {
            ts_.next();
            ExprPtr operand = parse_binary_rest(parse_unary(), kCmpPrec);
            return make_expr(expr::Unary{UnaryOp::Not, std::move(operand)}, loc);
        }
        if (t.is_punct("-")) {
            ts_.next();
            return make_expr(expr::Unary{UnaryOp::Negate, parse_unary()}, loc);
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = ts_.peek();
        SourceLocation loc = t.loc;
        switch (t.kind) {
            case TokenKind::Int: {
                ts_.next();
                try {
                    return make_expr(expr::Literal{static_cast<std::int64_t>(std::stoll(t.text))}, loc);
                } catch (const std::out_of_range&) {
                    ts_.fail_at(t, "integer literal out of range: " + t.text);
                }
            }
            case TokenKind::Real: ts_.next(); return make_expr(expr::Literal{std::stod(t.text)}, loc);
            case TokenKind::String: ts_.next(); return make_expr(expr::Literal{t.text}, loc);
            case TokenKind::Punct:
                if (t.text == "(") {
                    ts_.next();
                    ExprPtr e = parse_expr();
                    ts_.expect_punct(")");
                    return e;
                }
                if (t.text == "{") return parse_set();
                break;
            case TokenKind::Ident: {
                if (t.text == "true" || t.text == "false") {
                    ts_.next();
                    return make_expr(expr::Literal{t.text == "true"}, loc);
                }
                if (t.text == "if") {
                    ts_.next();
                    ExprPtr c = parse_expr();
                    ts_.expect_ident_word("then");
                    ExprPtr a = parse_expr();
                    ts_.expect_ident_word("else");
                    ExprPtr b = parse_expr();
                    return make_expr(expr::Conditional{std::move(c), std::move(a), std::move(b)}, loc);
                }
                if (kReserved.count(t.text)) {
                    ts_.fail("unexpected reserved word '" + t.text + "' in expression");
                }
                std::string name = ts_.next().text;
                if (ts_.peek().is_punct("::")) {
                    // Qualified property names denote their own spelling.
                    while (ts_.accept_punct("::")) {
                        name += "::" + ts_.expect_kind(TokenKind::Ident, "name").text;
                    }
                    return make_expr(expr::Literal{std::move(name)}, loc);
                }
                if (ts_.accept_punct("(")) {
                    std::vector<ExprPtr> args;
                    if (!ts_.peek().is_punct(")")) {
                        do {
                            args.push_back(parse_expr());
                        } while (ts_.accept_punct(","));
                    }
                    ts_.expect_punct(")");
                    return make_expr(expr::Call{std::move(name), std::move(args)}, loc);
                }
                return make_expr(expr::Variable{std::move(name)}, loc);
            }
            default: break;
        }
        ts_.fail("expected an expression but found " + describe(t));
    }

    ExprPtr parse_set() {
        SourceLocation loc = ts_.expect_punct("{").loc;
        if (ts_.accept_punct("}")) return make_expr(expr::SetLiteral{}, loc);
        ExprPtr first = parse_expr();
        if (ts_.accept_ident("for")) {
            auto [var, domain] = parse_binding();
            ExprPtr filter;
            if (ts_.accept_ident("if")) filter = parse_expr();
            ts_.expect_punct("}");
            return make_expr(expr::Comprehension{std::move(first), std::move(var), std::move(domain), std::move(filter)},
                             loc);
        }
        std::vector<ExprPtr> elements;
        elements.push_back(std::move(first));
        while (ts_.accept_punct(",")) elements.push_back(parse_expr());
        ts_.expect_punct("}");
        return make_expr(expr::SetLiteral{std::move(elements)}, loc);
    }
};

}  // namespace

Library parse_library(std::string_view source, const std::string& file_name) {
    TokenStream ts(tokenize(source, file_name));
    return LibraryParser(ts).parse_library();
}

ExprPtr parse_expression(std::string_view source, const std::string& file_name) {
    TokenStream ts(tokenize(source, file_name));
    return LibraryParser(ts).parse_standalone_expr();
}

}  // namespace resolute
