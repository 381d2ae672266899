#include "resolute/eval.hpp"

#include <cstdlib>
#include <iostream>
#include <limits>

#include "resolute/external.hpp"

namespace resolute {

std::chrono::milliseconds default_external_timeout() {
    if (const char* s = std::getenv("RESOLUTE_EXTERNAL_TIMEOUT_SECS")) {
        char* end = nullptr;
        double secs = std::strtod(s, &end);
        if (end != s && secs > 0) return std::chrono::milliseconds(static_cast<long long>(secs * 1000));
    }
    return std::chrono::seconds(30);
}

namespace {

bool is_number(const Value& v) { return v.holds<std::int64_t>() || v.holds<double>(); }

double as_double(const Value& v) {
    return v.holds<double>() ? v.as<double>() : static_cast<double>(v.as<std::int64_t>());
}

const PropertyMap* properties_of(const Value& v, const ModelInstance& model) {
    if (v.holds<ComponentRef>()) return &model.component(v.as<ComponentRef>()).properties;
    if (v.holds<ConnectionRef>()) return &model.connection(v.as<ConnectionRef>()).properties;
    return nullptr;
}

}  // namespace

Evaluator::Evaluator(const ModelInstance& model, const TypedLibrary& lib, EvalOptions options)
    : model_(model), lib_(lib), options_(std::move(options)) {}

Value Evaluator::evaluate(const Expr& e, const Env& env) const { return eval(e, env, 0); }

bool Evaluator::evaluate_bool(const Expr& e, const Env& env) const {
    Value v = eval(e, env, 0);
    if (!v.holds<bool>()) throw EvalError(e.loc, "expected bool but '" + e.str() + "' is a " + v.tag_name(model_));
    return v.as<bool>();
}

std::vector<Value> Evaluator::enumerate(const Domain& d, const Env& env, const SourceLocation& loc) const {
    return enumerate(d, env, loc, 0);
}

std::vector<Value> Evaluator::enumerate(const Domain& d, const Env& env, const SourceLocation& loc, int depth) const {
    std::vector<Value> out;
    if (d.type) {
        if (d.type->is(Type::Tag::Connection)) {
            for (auto c : model_.connections()) out.emplace_back(c);
        } else {
            for (auto c : model_.components_of(d.type->kind())) out.emplace_back(c);
        }
        return out;
    }
    Value s = eval(*d.set, env, depth);
    if (!s.holds<SetValue>()) {
        throw EvalError(loc, "cannot range over '" + d.set->str() + "', which is a " + s.tag_name(model_));
    }
    return s.as<SetValue>().items();
}

Env Evaluator::bind_params(const std::vector<Param>& params, const std::vector<Value>& args) const {
    Env env;
    for (std::size_t i = 0; i < params.size() && i < args.size(); ++i) {
        check_slot(args[i], params[i].type, params[i].loc, "parameter '" + params[i].name + "'");
        env = env.bind(params[i].name, args[i]);
    }
    return env;
}

const Value& Evaluator::check_slot(const Value& v, const Type& t, const SourceLocation& loc,
                                   const std::string& what) const {
    if (!v.conforms_to(t, model_)) {
        throw EvalError(loc, what + " requires " + t.str() + " but got " + v.tag_name(model_) + " " +
                                 display(v, model_));
    }
    return v;
}

Value Evaluator::eval(const Expr& e, const Env& env, int depth) const {
    return std::visit(
        [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, expr::Literal>) {
                return std::visit([](const auto& v) { return Value(v); }, x.value);
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                if (x.is_constant) {
                    if (depth >= options_.max_call_depth) {
                        throw EvalError(e.loc, "evaluation depth limit exceeded in constant '" + x.name + "'");
                    }
                    const ConstDef* c = lib_.constant(x.name);
                    Value v = eval(*c->value, Env{}, depth + 1);
                    return check_slot(v, c->type, c->loc, "constant '" + x.name + "'");
                }
                const Value* v = env.lookup(x.name);
                if (!v) throw EvalError(e.loc, "unbound variable '" + x.name + "'");
                return *v;
            } else if constexpr (std::is_same_v<T, expr::Call>) {
                return call(x, e, env, depth);
            } else if constexpr (std::is_same_v<T, expr::Unary>) {
                Value v = eval(*x.operand, env, depth);
                if (x.op == UnaryOp::Not) {
                    if (!v.holds<bool>()) throw EvalError(e.loc, "'not' applied to a " + v.tag_name(model_));
                    return !v.as<bool>();
                }
                if (v.holds<double>()) return -v.as<double>();
                if (!v.holds<std::int64_t>()) throw EvalError(e.loc, "'-' applied to a " + v.tag_name(model_));
                if (v.as<std::int64_t>() == std::numeric_limits<std::int64_t>::min()) {
                    throw EvalError(e.loc, "integer overflow in '" + e.str() + "'");
                }
                return -v.as<std::int64_t>();
            } else if constexpr (std::is_same_v<T, expr::Binary>) {
                return binary(x, e, env, depth);
            } else if constexpr (std::is_same_v<T, expr::SetLiteral>) {
                std::vector<Value> items;
                items.reserve(x.elements.size());
                for (const auto& el : x.elements) items.push_back(eval(*el, env, depth));
                return SetValue(std::move(items));
            } else if constexpr (std::is_same_v<T, expr::Comprehension>) {
                std::vector<Value> items;
                for (auto& v : enumerate(x.domain, env, e.loc, depth)) {
                    Env inner = env.bind(x.var, std::move(v));
                    if (x.filter) {
                        Value keep = eval(*x.filter, inner, depth);
                        if (!keep.holds<bool>()) throw EvalError(x.filter->loc, "comprehension filter is not a bool");
                        if (!keep.as<bool>()) continue;
                    }
                    items.push_back(eval(*x.element, inner, depth));
                }
                return SetValue(std::move(items));
            } else {
                Value c = eval(*x.cond, env, depth);
                if (!c.holds<bool>()) throw EvalError(x.cond->loc, "'if' condition is a " + c.tag_name(model_));
                return eval(c.as<bool>() ? *x.then_branch : *x.else_branch, env, depth);
            }
        },
        e.node);
}

Value Evaluator::binary(const expr::Binary& b, const Expr& e, const Env& env, int depth) const {
    std::string op(to_string(b.op));
    if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
        Value l = eval(*b.lhs, env, depth);
        if (!l.holds<bool>()) throw EvalError(b.lhs->loc, "'" + op + "' operand is a " + l.tag_name(model_));
        if (b.op == BinaryOp::And && !l.as<bool>()) return false;
        if (b.op == BinaryOp::Or && l.as<bool>()) return true;
        Value r = eval(*b.rhs, env, depth);
        if (!r.holds<bool>()) throw EvalError(b.rhs->loc, "'" + op + "' operand is a " + r.tag_name(model_));
        return r;
    }
    Value l = eval(*b.lhs, env, depth);
    Value r = eval(*b.rhs, env, depth);
    bool numeric = is_number(l) && is_number(r);
    bool both_int = l.holds<std::int64_t>() && r.holds<std::int64_t>();
    auto type_error = [&]() -> EvalError {
        return EvalError(e.loc, "'" + op + "' cannot combine " + l.tag_name(model_) + " and " + r.tag_name(model_));
    };

    switch (b.op) {
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
            bool eq = (numeric && !both_int) ? Value(as_double(l)) == Value(as_double(r)) : l == r;
            return b.op == BinaryOp::Eq ? eq : !eq;
        }
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: {
            std::partial_ordering c = std::partial_ordering::unordered;
            if (both_int) {
                c = l.as<std::int64_t>() <=> r.as<std::int64_t>();
            } else if (numeric) {
                c = as_double(l) <=> as_double(r);
            } else if (l.holds<std::string>() && r.holds<std::string>()) {
                c = l.as<std::string>() <=> r.as<std::string>();
            } else {
                throw type_error();
            }
            switch (b.op) {
                case BinaryOp::Lt: return c < 0;
                case BinaryOp::Le: return c <= 0;
                case BinaryOp::Gt: return c > 0;
                default: return c >= 0;
            }
        }
        default:
            break;
    }

    if (!numeric) throw type_error();
    if (both_int) {
        std::int64_t x = l.as<std::int64_t>(), y = r.as<std::int64_t>(), out = 0;
        bool overflow = false;
        switch (b.op) {
            case BinaryOp::Add: overflow = __builtin_add_overflow(x, y, &out); break;
            case BinaryOp::Sub: overflow = __builtin_sub_overflow(x, y, &out); break;
            case BinaryOp::Mul: overflow = __builtin_mul_overflow(x, y, &out); break;
            default:
                if (y == 0) throw EvalError(e.loc, "division by zero in '" + e.str() + "'");
                if (x == std::numeric_limits<std::int64_t>::min() && y == -1) {
                    overflow = true;
                } else {
                    out = x / y;
                }
        }
        if (overflow) throw EvalError(e.loc, "integer overflow in '" + e.str() + "'");
        return out;
    }
    double x = as_double(l), y = as_double(r);
    switch (b.op) {
        case BinaryOp::Add: return x + y;
        case BinaryOp::Sub: return x - y;
        case BinaryOp::Mul: return x * y;
        default:
            if (y == 0.0) throw EvalError(e.loc, "division by zero in '" + e.str() + "'");
            return x / y;
    }
}

Value Evaluator::call(const expr::Call& c, const Expr& e, const Env& env, int depth) const {
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (const auto& a : c.args) args.push_back(eval(*a, env, depth));

    switch (c.target) {
        case expr::Call::Target::Builtin:
            return builtin(c.builtin, args, e);
        case expr::Call::Target::Function: {
            const FunDef* f = lib_.function(c.callee);
            if (depth >= options_.max_call_depth) {
                throw EvalError(e.loc, "call depth limit of " + std::to_string(options_.max_call_depth) +
                                           " exceeded calling '" + c.callee + "'");
            }
            Env frame;
            for (std::size_t i = 0; i < f->params.size(); ++i) {
                check_slot(args[i], f->params[i].type, c.args[i]->loc,
                           "parameter '" + f->params[i].name + "' of '" + f->name + "'");
                frame = frame.bind(f->params[i].name, std::move(args[i]));
            }
            Value result = eval(*f->body, frame, depth + 1);
            return check_slot(result, f->return_type, e.loc, "result of '" + f->name + "'");
        }
        case expr::Call::Target::External: {
            const ExternalDef* x = lib_.external(c.callee);
            for (std::size_t i = 0; i < x->params.size(); ++i) {
                check_slot(args[i], x->params[i].type, c.args[i]->loc,
                           "parameter '" + x->params[i].name + "' of '" + x->name + "'");
            }
            return run_external(*x, args, model_, options_.external_timeout, e.loc);
        }
        default:
            throw EvalError(e.loc, "'" + c.callee + "' cannot be evaluated");
    }
}

Value Evaluator::builtin(Builtin b, const std::vector<Value>& args, const Expr& e) const {
    std::string name(to_string(b));
    auto bad = [&](std::size_t i, const std::string& expected) -> EvalError {
        return EvalError(e.loc, "argument " + std::to_string(i + 1) + " of '" + name + "' must be " + expected +
                                    ", got " + args[i].tag_name(model_));
    };
    auto set_arg = [&](std::size_t i) -> const SetValue& {
        if (!args[i].holds<SetValue>()) throw bad(i, "a set");
        return args[i].as<SetValue>();
    };

    switch (b) {
        case Builtin::Parent:
            if (args[0].holds<FeatureRef>()) return model_.feature(args[0].as<FeatureRef>()).owner;
            if (args[0].holds<ComponentRef>()) {
                const Component& comp = model_.component(args[0].as<ComponentRef>());
                if (!comp.parent) {
                    throw EvalError(e.loc, "'" + comp.qualified_name + "' is the root component and has no parent");
                }
                return *comp.parent;
            }
            throw bad(0, "a component or feature");
        case Builtin::Source:
        case Builtin::Destination: {
            if (!args[0].holds<ConnectionRef>()) throw bad(0, "a connection");
            const Connection& conn = model_.connection(args[0].as<ConnectionRef>());
            return b == Builtin::Source ? conn.source : conn.destination;
        }
        case Builtin::Name: {
            auto ref = args[0].element();
            if (!ref) throw bad(0, "a model element");
            return std::visit(
                [&](auto r) -> Value {
                    using R = decltype(r);
                    if constexpr (std::is_same_v<R, ComponentRef>) return model_.component(r).name;
                    if constexpr (std::is_same_v<R, FeatureRef>) return model_.feature(r).name;
                    if constexpr (std::is_same_v<R, ConnectionRef>) return model_.connection(r).name;
                },
                *ref);
        }
        case Builtin::Property:
        case Builtin::HasProperty: {
            const PropertyMap* props = properties_of(args[0], model_);
            if (!props) throw bad(0, "a component or connection");
            if (!args[1].holds<std::string>()) throw bad(1, "a string");
            auto it = props->find(args[1].as<std::string>());
            if (b == Builtin::HasProperty) return it != props->end();
            if (it == props->end()) {
                throw EvalError(e.loc, "'" + display(args[0], model_) + "' has no property '" + args[1].as<std::string>() +
                                           "'; use has_property first");
            }
            return from_property(it->second);
        }
        case Builtin::Member:
            return set_arg(1).contains(args[0]);
        case Builtin::Union: {
            std::vector<Value> items = set_arg(0).items();
            const auto& rhs = set_arg(1).items();
            items.insert(items.end(), rhs.begin(), rhs.end());
            return SetValue(std::move(items));
        }
        case Builtin::Sum: {
            const SetValue& s = set_arg(0);
            bool any_real = false;
            for (const auto& v : s.items()) {
                if (!is_number(v)) {
                    throw EvalError(e.loc, "sum over a non-numeric set: element " + display(v, model_) + " is a " +
                                               v.tag_name(model_));
                }
                any_real = any_real || v.holds<double>();
            }
            if (any_real || (s.empty() && e.type.is(Type::Tag::Real))) {
                double total = 0;
                for (const auto& v : s.items()) total += as_double(v);
                return total;
            }
            std::int64_t total = 0;
            for (const auto& v : s.items()) {
                if (__builtin_add_overflow(total, v.as<std::int64_t>(), &total)) {
                    throw EvalError(e.loc, "integer overflow in '" + e.str() + "'");
                }
            }
            return total;
        }
        case Builtin::Size:
            return static_cast<std::int64_t>(set_arg(0).size());
        case Builtin::IsEmpty:
            return set_arg(0).empty();
        case Builtin::Debug: {
            std::string label = args[0].holds<std::string>() ? args[0].as<std::string>() : display(args[0], model_);
            std::string line = label + ": " + display(args[1], model_);
            if (options_.debug_sink) {
                options_.debug_sink(line);
            } else {
                std::cerr << "debug: " << line << '\n';
            }
            return args[1];
        }
    }
    throw EvalError(e.loc, "unknown builtin '" + name + "'");
}

}  // namespace resolute
