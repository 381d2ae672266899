#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resolute/diagnostics.hpp"
#include "resolute/types.hpp"

namespace resolute {

struct Expr;
struct Formula;
using ExprPtr = std::unique_ptr<Expr>;
using FormulaPtr = std::unique_ptr<Formula>;

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul, Div };

std::string_view to_string(BinaryOp op);

/// Closed catalog of built-in computations.
enum class Builtin { Parent, Source, Destination, Name, Property, HasProperty, Member, Union, Sum, Size, IsEmpty, Debug };

std::optional<Builtin> parse_builtin(std::string_view name);
std::string_view to_string(Builtin b);

/// A quantifier or comprehension domain: every instance of a model type, or
/// the elements of a computed set.
struct Domain {
    std::optional<Type> type;
    ExprPtr set;

    Domain clone() const;
};

namespace expr {

struct Literal {
    std::variant<bool, std::int64_t, double, std::string> value;
};
struct Variable {
    std::string name;
    bool is_constant = false;  // set by typecheck
};
struct Call {
    enum class Target { Unresolved, Builtin, Function, External, Claim };
    std::string callee;
    std::vector<ExprPtr> args;
    Target target = Target::Unresolved;  // set by typecheck
    Builtin builtin = Builtin::Parent;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct SetLiteral {
    std::vector<ExprPtr> elements;
};
struct Comprehension {
    ExprPtr element;
    std::string var;
    Domain domain;
    ExprPtr filter;  // may be null
};
struct Conditional {
    ExprPtr cond;
    ExprPtr then_branch;
    ExprPtr else_branch;
};

}  // namespace expr

struct Expr {
    using Node = std::variant<expr::Literal, expr::Variable, expr::Call, expr::Unary, expr::Binary, expr::SetLiteral,
                              expr::Comprehension, expr::Conditional>;
    Node node;
    SourceLocation loc;
    Type type;  // assigned by typecheck

    ExprPtr clone() const;
    std::string str() const;  // source-like rendering for diagnostics
};

template <class T>
ExprPtr make_expr(T node, SourceLocation loc) {
    return std::make_unique<Expr>(Expr{Expr::Node(std::move(node)), std::move(loc), Type()});
}

enum class Quantifier { Forall, Exists };

namespace formula {

struct ClaimApp {
    std::string claim;
    std::vector<ExprPtr> args;
};
struct And {
    FormulaPtr lhs;
    FormulaPtr rhs;
};
struct Or {
    FormulaPtr lhs;
    FormulaPtr rhs;
};
/// Antecedents are bool-valued computations.
struct Implies {
    ExprPtr antecedent;
    FormulaPtr consequent;
};
struct Quantified {
    Quantifier quantifier;
    std::string var;
    Domain domain;
    FormulaPtr body;
};
struct Let {
    std::string var;
    Type type;
    ExprPtr value;
    FormulaPtr body;
};
/// A bool computation injected into the logic.
struct EvalAtom {
    ExprPtr expr;
};

}  // namespace formula

/// Logic-level formula. There is no negation connective: negation exists
/// only inside computations.
struct Formula {
    using Node = std::variant<formula::ClaimApp, formula::And, formula::Or, formula::Implies, formula::Quantified,
                              formula::Let, formula::EvalAtom>;
    Node node;
    SourceLocation loc;

    FormulaPtr clone() const;
    std::string str() const;
};

template <class T>
FormulaPtr make_formula(T node, SourceLocation loc) {
    return std::make_unique<Formula>(Formula{Formula::Node(std::move(node)), std::move(loc)});
}

struct Param {
    std::string name;
    Type type;
    SourceLocation loc;
};

/// Piece of a claim description: literal text, or an expression whose value
/// is displayed.
struct DescriptionSegment {
    std::string text;
    ExprPtr expr;  // null for literal text
};

struct RuleClause {
    std::string claim;
    std::vector<Param> params;
    std::vector<DescriptionSegment> description;
    FormulaPtr body;
    SourceLocation loc;
};

struct FunDef {
    std::string name;
    std::vector<Param> params;
    Type return_type;
    ExprPtr body;
    SourceLocation loc;
};

struct ConstDef {
    std::string name;
    Type type;
    ExprPtr value;
    SourceLocation loc;
};

struct ExternalDef {
    std::string name;
    std::vector<Param> params;
    Type return_type;
    std::string command;
    bool stateless = false;
    SourceLocation loc;
};

/// Parsed library. Definitions keep source order; later files append.
struct Library {
    std::vector<RuleClause> clauses;
    std::vector<FunDef> functions;
    std::vector<ConstDef> constants;
    std::vector<ExternalDef> externals;

    void append(Library&& other);
};

/// Parse one library file.
Library parse_library(std::string_view source, const std::string& file_name = "<library>");

/// Parse a single computation expression (used by tests and tools).
ExprPtr parse_expression(std::string_view source, const std::string& file_name = "<expr>");

}  // namespace resolute
