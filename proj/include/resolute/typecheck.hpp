#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "resolute/ast.hpp"
#include "resolute/model.hpp"
#include "resolute/value.hpp"

namespace resolute {

/// A library that passed typechecking: every expression carries its type,
/// every call is resolved, and no computation mentions a claim.
class TypedLibrary {
public:
    const Library& library() const { return lib_; }

    const FunDef* function(std::string_view name) const;
    const ConstDef* constant(std::string_view name) const;
    const ExternalDef* external(std::string_view name) const;

    bool is_claim(std::string_view name) const;
    /// Clauses for a claim in declaration order (empty if unknown).
    const std::vector<const RuleClause*>& clauses(std::string_view claim) const;
    /// Parameter list shared by every clause of the claim.
    const std::vector<Param>& claim_params(std::string_view claim) const;

private:
    friend TypedLibrary typecheck(Library lib);
    friend class Checker;

    Library lib_;
    std::map<std::string, std::size_t, std::less<>> functions_;
    std::map<std::string, std::size_t, std::less<>> constants_;
    std::map<std::string, std::size_t, std::less<>> externals_;
    std::map<std::string, std::vector<const RuleClause*>, std::less<>> claims_;
};

/// Typecheck a merged library. Throws TypeError listing every violation.
TypedLibrary typecheck(Library lib);

/// A ground proof obligation: a formula plus bindings for its free variables.
struct Goal {
    std::shared_ptr<const Formula> formula;
    Env env;
    std::string claim;
    std::vector<Value> args;
    std::string component;    // qualified path of the component holding the prove statement
    std::string application;  // claim application as written
};

/// Goal for a claim applied to ground values; arguments must already
/// conform to the claim's parameter types.
Goal make_goal(const TypedLibrary& lib, const std::string& claim, std::vector<Value> args,
               std::string component = {}, std::string application = {});

/// Resolve every prove directive of the model against its enclosing
/// component and check it against the claim's signature. Throws
/// ResolveError for names that do not resolve and TypeError for unknown
/// claims, arity mismatches and wrong kinds.
std::vector<Goal> attach_prove_directives(const TypedLibrary& lib, const ModelInstance& model);

}  // namespace resolute
