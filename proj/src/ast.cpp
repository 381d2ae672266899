#include "resolute/ast.hpp"

#include <array>

#include "resolute/value.hpp"

namespace resolute {

namespace {

constexpr std::array<std::string_view, 12> kBuiltinNames = {
    "parent", "source", "destination", "name", "property", "has_property",
    "member", "union",  "sum",         "size", "is_empty", "debug",
};

std::string literal_str(const expr::Literal& lit) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
            if constexpr (std::is_same_v<T, double>) return format_real(x);
            if constexpr (std::is_same_v<T, std::string>) return "\"" + x + "\"";
        },
        lit.value);
}

std::string domain_str(const std::string& var, const Domain& d) {
    if (d.type) return "(" + var + " : " + d.type->str() + ")";
    return "(" + var + " in " + d.set->str() + ")";
}

}  // namespace

std::string_view to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return "or";
        case BinaryOp::And: return "and";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "<>";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
    }
    return "?";
}

std::optional<Builtin> parse_builtin(std::string_view name) {
    for (std::size_t i = 0; i < kBuiltinNames.size(); ++i) {
        if (kBuiltinNames[i] == name) return static_cast<Builtin>(i);
    }
    return std::nullopt;
}

std::string_view to_string(Builtin b) { return kBuiltinNames[static_cast<std::size_t>(b)]; }

Domain Domain::clone() const {
    Domain d;
    d.type = type;
    if (set) d.set = set->clone();
    return d;
}

ExprPtr Expr::clone() const {
    auto copy_args = [](const std::vector<ExprPtr>& v) {
        std::vector<ExprPtr> out;
        out.reserve(v.size());
        for (const auto& e : v) out.push_back(e->clone());
        return out;
    };
    Node n = std::visit(
        [&](const auto& x) -> Node {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, expr::Literal> || std::is_same_v<T, expr::Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, expr::Call>) {
                return expr::Call{x.callee, copy_args(x.args), x.target, x.builtin};
            } else if constexpr (std::is_same_v<T, expr::Unary>) {
                return expr::Unary{x.op, x.operand->clone()};
            } else if constexpr (std::is_same_v<T, expr::Binary>) {
                return expr::Binary{x.op, x.lhs->clone(), x.rhs->clone()};
            } else if constexpr (std::is_same_v<T, expr::SetLiteral>) {
                return expr::SetLiteral{copy_args(x.elements)};
            } else if constexpr (std::is_same_v<T, expr::Comprehension>) {
                return expr::Comprehension{x.element->clone(), x.var, x.domain.clone(),
                                           x.filter ? x.filter->clone() : nullptr};
            } else {
                return expr::Conditional{x.cond->clone(), x.then_branch->clone(), x.else_branch->clone()};
            }
        },
        node);
    return std::make_unique<Expr>(Expr{std::move(n), loc, type});
}

std::string Expr::str() const {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, expr::Literal>) {
                return literal_str(x);
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, expr::Call>) {
                std::string out = x.callee + "(";
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    if (i) out += ", ";
                    out += x.args[i]->str();
                }
                return out + ")";
            } else if constexpr (std::is_same_v<T, expr::Unary>) {
                return (x.op == UnaryOp::Not ? "not " : "-") + x.operand->str();
            } else if constexpr (std::is_same_v<T, expr::Binary>) {
                return "(" + x.lhs->str() + " " + std::string(to_string(x.op)) + " " + x.rhs->str() + ")";
            } else if constexpr (std::is_same_v<T, expr::SetLiteral>) {
                std::string out = "{";
                for (std::size_t i = 0; i < x.elements.size(); ++i) {
                    if (i) out += ", ";
                    out += x.elements[i]->str();
                }
                return out + "}";
            } else if constexpr (std::is_same_v<T, expr::Comprehension>) {
                std::string out = "{" + x.element->str() + " for " + domain_str(x.var, x.domain);
                if (x.filter) out += " if " + x.filter->str();
                return out + "}";
            } else {
                return "if " + x.cond->str() + " then " + x.then_branch->str() + " else " + x.else_branch->str();
            }
        },
        node);
}

FormulaPtr Formula::clone() const {
    Node n = std::visit(
        [](const auto& x) -> Node {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, formula::ClaimApp>) {
                std::vector<ExprPtr> args;
                for (const auto& a : x.args) args.push_back(a->clone());
                return formula::ClaimApp{x.claim, std::move(args)};
            } else if constexpr (std::is_same_v<T, formula::And>) {
                return formula::And{x.lhs->clone(), x.rhs->clone()};
            } else if constexpr (std::is_same_v<T, formula::Or>) {
                return formula::Or{x.lhs->clone(), x.rhs->clone()};
            } else if constexpr (std::is_same_v<T, formula::Implies>) {
                return formula::Implies{x.antecedent->clone(), x.consequent->clone()};
            } else if constexpr (std::is_same_v<T, formula::Quantified>) {
                return formula::Quantified{x.quantifier, x.var, x.domain.clone(), x.body->clone()};
            } else if constexpr (std::is_same_v<T, formula::Let>) {
                return formula::Let{x.var, x.type, x.value->clone(), x.body->clone()};
            } else {
                return formula::EvalAtom{x.expr->clone()};
            }
        },
        node);
    return std::make_unique<Formula>(Formula{std::move(n), loc});
}

std::string Formula::str() const {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, formula::ClaimApp>) {
                std::string out = x.claim + "(";
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    if (i) out += ", ";
                    out += x.args[i]->str();
                }
                return out + ")";
            } else if constexpr (std::is_same_v<T, formula::And>) {
                return "(" + x.lhs->str() + " and " + x.rhs->str() + ")";
            } else if constexpr (std::is_same_v<T, formula::Or>) {
                return "(" + x.lhs->str() + " or " + x.rhs->str() + ")";
            } else if constexpr (std::is_same_v<T, formula::Implies>) {
                return "(" + x.antecedent->str() + " => " + x.consequent->str() + ")";
            } else if constexpr (std::is_same_v<T, formula::Quantified>) {
                return std::string(x.quantifier == Quantifier::Forall ? "forall " : "exists ") +
                       domain_str(x.var, x.domain) + ". " + x.body->str();
            } else if constexpr (std::is_same_v<T, formula::Let>) {
                return "let " + x.var + " : " + x.type.str() + " = " + x.value->str() + "; " + x.body->str();
            } else {
                return "<" + x.expr->str() + ">";
            }
        },
        node);
}

void Library::append(Library&& other) {
    for (auto& c : other.clauses) clauses.push_back(std::move(c));
    for (auto& f : other.functions) functions.push_back(std::move(f));
    for (auto& c : other.constants) constants.push_back(std::move(c));
    for (auto& e : other.externals) externals.push_back(std::move(e));
    other = Library{};
}

}  // namespace resolute
