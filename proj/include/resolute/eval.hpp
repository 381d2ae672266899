#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "resolute/ast.hpp"
#include "resolute/model.hpp"
#include "resolute/typecheck.hpp"
#include "resolute/value.hpp"

namespace resolute {

/// Timeout from RESOLUTE_EXTERNAL_TIMEOUT_SECS, or 30 seconds.
std::chrono::milliseconds default_external_timeout();

struct EvalOptions {
    std::chrono::milliseconds external_timeout = default_external_timeout();
    /// Receives one line per `debug` call. Defaults to standard error.
    std::function<void(const std::string&)> debug_sink;
    /// Nesting limit for user function calls; exceeding it is an EvalError
    /// rather than a stack overflow.
    int max_call_depth = 1000;
};

/// Evaluates typechecked computations against a fixed model. Reentrant.
class Evaluator {
public:
    Evaluator(const ModelInstance& model, const TypedLibrary& lib, EvalOptions options = {});

    Value evaluate(const Expr& e, const Env& env) const;
    /// Evaluate and require a bool result.
    bool evaluate_bool(const Expr& e, const Env& env) const;

    /// Elements of a quantifier or comprehension domain, in document order.
    std::vector<Value> enumerate(const Domain& d, const Env& env, const SourceLocation& loc) const;

    /// Bind ground values to a claim's parameters.
    Env bind_params(const std::vector<Param>& params, const std::vector<Value>& args) const;

    const ModelInstance& model() const { return model_; }
    const TypedLibrary& library() const { return lib_; }
    const EvalOptions& options() const { return options_; }

private:
    Value eval(const Expr& e, const Env& env, int depth) const;
    std::vector<Value> enumerate(const Domain& d, const Env& env, const SourceLocation& loc, int depth) const;
    Value call(const expr::Call& c, const Expr& e, const Env& env, int depth) const;
    Value builtin(Builtin b, const std::vector<Value>& args, const Expr& e) const;
    Value binary(const expr::Binary& b, const Expr& e, const Env& env, int depth) const;
    const Value& check_slot(const Value& v, const Type& t, const SourceLocation& loc, const std::string& what) const;

    const ModelInstance& model_;
    const TypedLibrary& lib_;
    EvalOptions options_;
};

}  // namespace resolute
