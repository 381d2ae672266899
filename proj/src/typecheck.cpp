#include "resolute/typecheck.hpp"

#include <set>

namespace resolute {

const FunDef* TypedLibrary::function(std::string_view name) const {
    auto it = functions_.find(name);
    return it == functions_.end() ? nullptr : &lib_.functions[it->second];
}

const ConstDef* TypedLibrary::constant(std::string_view name) const {
    auto it = constants_.find(name);
    return it == constants_.end() ? nullptr : &lib_.constants[it->second];
}

const ExternalDef* TypedLibrary::external(std::string_view name) const {
    auto it = externals_.find(name);
    return it == externals_.end() ? nullptr : &lib_.externals[it->second];
}

bool TypedLibrary::is_claim(std::string_view name) const { return claims_.find(name) != claims_.end(); }

const std::vector<const RuleClause*>& TypedLibrary::clauses(std::string_view claim) const {
    static const std::vector<const RuleClause*> kNone;
    auto it = claims_.find(claim);
    return it == claims_.end() ? kNone : it->second;
}

const std::vector<Param>& TypedLibrary::claim_params(std::string_view claim) const {
    static const std::vector<Param> kNone;
    const auto& cs = clauses(claim);
    return cs.empty() ? kNone : cs.front()->params;
}

class Checker {
public:
    explicit Checker(TypedLibrary& lib) : lib_(lib), library_(lib.lib_) {}

    void run() {
        index_names();
        for (auto& c : library_.constants) check_constant(c);
        for (auto& f : library_.functions) check_function(f);
        for (auto& e : library_.externals) check_external(e);
        for (auto& c : library_.clauses) check_clause(c);
        if (!errors_.empty()) throw TypeError(std::move(errors_));
    }

private:
    struct ScopeEntry {
        std::string name;
        Type type;
        bool is_param = false;
        bool used = false;
        SourceLocation loc;
    };

    TypedLibrary& lib_;
    Library& library_;
    std::vector<Diagnostic> errors_;
    std::vector<ScopeEntry> scope_;
    int negation_depth_ = 0;

    void error(const SourceLocation& loc, std::string message) { errors_.push_back({loc, std::move(message)}); }

    // -- names ---------------------------------------------------------------

    void index_names() {
        std::map<std::string, std::string, std::less<>> kinds;  // name -> what it is
        auto claim_name = [&](const std::string& name, const std::string& what, const SourceLocation& loc) {
            if (parse_builtin(name)) {
                error(loc, "'" + name + "' is a built-in function and cannot be redefined");
                return false;
            }
            auto [it, inserted] = kinds.emplace(name, what);
            if (!inserted) {
                error(loc, "'" + name + "' is already defined as a " + it->second);
                return false;
            }
            return true;
        };
        for (std::size_t i = 0; i < library_.functions.size(); ++i) {
            const auto& f = library_.functions[i];
            if (claim_name(f.name, "function", f.loc)) lib_.functions_.emplace(f.name, i);
        }
        for (std::size_t i = 0; i < library_.constants.size(); ++i) {
            const auto& c = library_.constants[i];
            if (claim_name(c.name, "constant", c.loc)) lib_.constants_.emplace(c.name, i);
        }
        for (std::size_t i = 0; i < library_.externals.size(); ++i) {
            const auto& e = library_.externals[i];
            if (claim_name(e.name, "external", e.loc)) lib_.externals_.emplace(e.name, i);
        }
        for (const auto& c : library_.clauses) {
            auto it = kinds.find(c.claim);
            if (it != kinds.end() && it->second != "claim") {
                error(c.loc, "'" + c.claim + "' is already defined as a " + it->second);
                continue;
            }
            if (it == kinds.end() && !claim_name(c.claim, "claim", c.loc)) continue;
            auto& group = lib_.claims_[c.claim];
            if (!group.empty()) {
                const auto& first = group.front()->params;
                bool same = first.size() == c.params.size();
                for (std::size_t i = 0; same && i < first.size(); ++i) same = first[i].type == c.params[i].type;
                if (!same) {
                    error(c.loc, "rule for claim '" + c.claim + "' has parameter types " + signature(c.params) +
                                     " but earlier rules use " + signature(first));
                    continue;
                }
            }
            group.push_back(&c);
        }
    }

    static std::string signature(const std::vector<Param>& params) {
        std::string out = "(";
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) out += ", ";
            out += params[i].type.str();
        }
        return out + ")";
    }

    // -- scope ---------------------------------------------------------------

    void push_params(const std::vector<Param>& params) {
        std::set<std::string> seen;
        for (const auto& p : params) {
            if (!seen.insert(p.name).second) error(p.loc, "duplicate parameter '" + p.name + "'");
            scope_.push_back(ScopeEntry{p.name, p.type, true, false, p.loc});
        }
    }

    ScopeEntry* lookup(std::string_view name) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->name == name) return &*it;
        }
        return nullptr;
    }

    struct ScopeGuard {
        std::vector<ScopeEntry>& scope;
        std::size_t size;
        ~ScopeGuard() { scope.resize(size); }
    };
    ScopeGuard mark() { return ScopeGuard{scope_, scope_.size()}; }

    // -- definitions ---------------------------------------------------------

    void check_constant(ConstDef& c) {
        auto guard = mark();
        Type t = check(*c.value);
        if (!is_subtype(t, c.type)) {
            error(c.value->loc, "constant '" + c.name + "' is declared " + c.type.str() + " but its value has type " +
                                    t.str());
        }
    }

    void check_function(FunDef& f) {
        auto guard = mark();
        push_params(f.params);
        Type t = check(*f.body);
        if (!is_subtype(t, f.return_type)) {
            error(f.body->loc, "function '" + f.name + "' returns " + f.return_type.str() + " but its body has type " +
                                   t.str());
        }
    }

    void check_external(ExternalDef& e) {
        std::set<std::string> seen;
        for (const auto& p : e.params) {
            if (!seen.insert(p.name).second) error(p.loc, "duplicate parameter '" + p.name + "'");
        }
        if (e.return_type.is(Type::Tag::Empty) || e.return_type.is_dynamic()) {
            error(e.loc, "external '" + e.name + "' needs a concrete return type");
        }
    }

    void check_clause(RuleClause& c) {
        auto guard = mark();
        push_params(c.params);
        for (auto& seg : c.description) {
            if (!seg.expr) continue;
            Type t = check(*seg.expr);
            if (!t.is_displayable()) {
                error(seg.expr->loc, "claim text cannot display a value of type " + t.str());
            }
        }
        check_formula(c.body);
        for (std::size_t i = 0; i < c.params.size(); ++i) {
            const auto& entry = scope_[guard.size + i];
            if (!entry.used && !entry.name.starts_with("_")) {
                error(entry.loc, "parameter '" + entry.name + "' of claim '" + c.claim +
                                     "' is never used (prefix it with '_' to ignore it)");
            }
        }
    }

    // -- formulas ------------------------------------------------------------

    void check_formula(FormulaPtr& f) {
        SourceLocation loc = f->loc;
        if (auto app = std::get_if<formula::ClaimApp>(&f->node)) {
            if (!lib_.is_claim(app->claim)) {
                // A bare call of a computation in formula position: evaluate it.
                ExprPtr call = make_expr(expr::Call{app->claim, std::move(app->args)}, loc);
                f->node = formula::EvalAtom{std::move(call)};
            } else {
                check_claim_args(app->claim, app->args, loc);
                return;
            }
        }
        std::visit(
            [&](auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, formula::And> || std::is_same_v<T, formula::Or>) {
                    check_formula(x.lhs);
                    check_formula(x.rhs);
                } else if constexpr (std::is_same_v<T, formula::Implies>) {
                    expect_bool(*x.antecedent, "the antecedent of '=>'");
                    check_formula(x.consequent);
                } else if constexpr (std::is_same_v<T, formula::Quantified>) {
                    Type element = check_domain(x.domain, loc);
                    auto guard = mark();
                    scope_.push_back(ScopeEntry{x.var, element, false, false, loc});
                    check_formula(x.body);
                } else if constexpr (std::is_same_v<T, formula::Let>) {
                    Type t = check(*x.value);
                    if (!is_subtype(t, x.type)) {
                        error(x.value->loc, "'" + x.var + "' is declared " + x.type.str() + " but bound to a value of type " +
                                                t.str());
                    }
                    auto guard = mark();
                    scope_.push_back(ScopeEntry{x.var, x.type, false, false, loc});
                    check_formula(x.body);
                } else if constexpr (std::is_same_v<T, formula::EvalAtom>) {
                    expect_bool(*x.expr, "a formula");
                }
            },
            f->node);
    }

    void check_claim_args(const std::string& claim, std::vector<ExprPtr>& args, const SourceLocation& loc) {
        const auto& params = lib_.claim_params(claim);
        if (params.size() != args.size()) {
            error(loc, "claim '" + claim + "' expects " + std::to_string(params.size()) + " argument(s) but is given " +
                           std::to_string(args.size()));
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            Type t = check(*args[i]);
            if (i < params.size() && !is_subtype(t, params[i].type)) {
                error(args[i]->loc, "argument " + std::to_string(i + 1) + " of claim '" + claim + "' must be " +
                                        params[i].type.str() + " but has type " + t.str());
            }
        }
    }

    void expect_bool(Expr& e, const std::string& what) {
        Type t = check(e);
        if (!is_subtype(t, Type::boolean())) error(e.loc, what + " must be a bool computation, found " + t.str());
    }

    Type check_domain(Domain& d, const SourceLocation& loc) {
        if (d.type) {
            if (d.type->is(Type::Tag::Component) || d.type->is(Type::Tag::Connection)) return *d.type;
            error(loc, "cannot enumerate type " + d.type->str() + "; quantifiers range over model types or sets");
            return Type::dynamic();
        }
        Type t = check(*d.set);
        if (t.is(Type::Tag::Set)) return t.element();
        if (t.is_dynamic()) return Type::dynamic();
        error(d.set->loc, "expected a set to range over, found " + t.str());
        return Type::dynamic();
    }

    // -- expressions ---------------------------------------------------------

    Type check(Expr& e) {
        Type t = std::visit([&](auto& x) { return check_node(x, e); }, e.node);
        e.type = t;
        return t;
    }

    Type check_node(expr::Literal& lit, Expr&) {
        return std::visit(
            [](const auto& x) -> Type {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, bool>) return Type::boolean();
                if constexpr (std::is_same_v<T, std::int64_t>) return Type::integer();
                if constexpr (std::is_same_v<T, double>) return Type::real();
                if constexpr (std::is_same_v<T, std::string>) return Type::string();
            },
            lit.value);
    }

    Type check_node(expr::Variable& v, Expr& e) {
        if (auto* entry = lookup(v.name)) {
            entry->used = true;
            return entry->type;
        }
        if (const ConstDef* c = lib_.constant(v.name)) {
            v.is_constant = true;
            return c->type;
        }
        if (lib_.is_claim(v.name) || lib_.function(v.name) || lib_.external(v.name) || parse_builtin(v.name)) {
            error(e.loc, "'" + v.name + "' must be applied to arguments");
        } else {
            error(e.loc, "unknown name '" + v.name + "'");
        }
        return Type::dynamic();
    }

    Type check_node(expr::Unary& u, Expr& e) {
        if (u.op == UnaryOp::Not) {
            ++negation_depth_;
            Type t = check(*u.operand);
            --negation_depth_;
            if (!is_subtype(t, Type::boolean())) error(e.loc, "'not' expects bool, found " + t.str());
            return Type::boolean();
        }
        Type t = check(*u.operand);
        if (!t.is_numeric() && !t.is_dynamic()) error(e.loc, "unary '-' expects a number, found " + t.str());
        return t;
    }

    Type check_node(expr::Binary& b, Expr& e) {
        Type l = check(*b.lhs);
        Type r = check(*b.rhs);
        std::string op(to_string(b.op));
        switch (b.op) {
            case BinaryOp::And:
            case BinaryOp::Or:
                if (!is_subtype(l, Type::boolean()) || !is_subtype(r, Type::boolean())) {
                    error(e.loc, "'" + op + "' expects bool operands, found " + l.str() + " and " + r.str());
                }
                return Type::boolean();
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                if (!(l.is_numeric() && r.is_numeric()) && !join(l, r)) {
                    error(e.loc, "cannot compare " + l.str() + " with " + r.str());
                }
                return Type::boolean();
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: {
                auto orderable = [](const Type& t) { return t.is_numeric() || t.is(Type::Tag::String) || t.is_dynamic(); };
                bool ok = orderable(l) && orderable(r) &&
                          (l.is_dynamic() || r.is_dynamic() || (l.is_numeric() == r.is_numeric()));
                if (!ok) error(e.loc, "'" + op + "' cannot order " + l.str() + " and " + r.str());
                return Type::boolean();
            }
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div: {
                auto numeric = [](const Type& t) { return t.is_numeric() || t.is_dynamic(); };
                if (!numeric(l) || !numeric(r)) {
                    error(e.loc, "arithmetic '" + op + "' expects numbers, found " + l.str() + " and " + r.str());
                    return Type::dynamic();
                }
                if (l.is_dynamic() || r.is_dynamic()) return Type::dynamic();
                if (l.is(Type::Tag::Real) || r.is(Type::Tag::Real)) return Type::real();
                return Type::integer();
            }
        }
        return Type::dynamic();
    }

    Type check_node(expr::SetLiteral& s, Expr& e) {
        Type element = Type::empty();
        for (auto& item : s.elements) {
            Type t = check(*item);
            auto j = join(element, t);
            if (!j) {
                error(item->loc, "set elements of type " + element.str() + " and " + t.str() + " cannot be mixed");
            } else {
                element = *j;
            }
        }
        (void)e;
        return Type::set_of(element);
    }

    Type check_node(expr::Comprehension& c, Expr& e) {
        Type element = check_domain(c.domain, e.loc);
        auto guard = mark();
        scope_.push_back(ScopeEntry{c.var, element, false, false, e.loc});
        if (c.filter) expect_bool(*c.filter, "a comprehension filter");
        Type result = check(*c.element);
        return Type::set_of(result);
    }

    Type check_node(expr::Conditional& c, Expr& e) {
        expect_bool(*c.cond, "an 'if' condition");
        Type a = check(*c.then_branch);
        Type b = check(*c.else_branch);
        auto j = join(a, b);
        if (!j) {
            error(e.loc, "'if' branches have incompatible types " + a.str() + " and " + b.str());
            return Type::dynamic();
        }
        return *j;
    }

    Type check_node(expr::Call& call, Expr& e) {
        std::vector<Type> args;
        args.reserve(call.args.size());
        for (auto& a : call.args) args.push_back(check(*a));

        if (lib_.is_claim(call.callee)) {
            call.target = expr::Call::Target::Claim;
            if (negation_depth_ > 0) {
                error(e.loc, "claim used under negation: '" + call.callee + "' can only be used positively");
            } else {
                error(e.loc, "claim used inside a computation: '" + call.callee + "'");
            }
            return Type::boolean();
        }
        if (auto b = parse_builtin(call.callee)) {
            call.target = expr::Call::Target::Builtin;
            call.builtin = *b;
            return check_builtin(*b, args, e);
        }
        const std::vector<Param>* params = nullptr;
        Type result;
        if (const FunDef* f = lib_.function(call.callee)) {
            call.target = expr::Call::Target::Function;
            params = &f->params;
            result = f->return_type;
        } else if (const ExternalDef* x = lib_.external(call.callee)) {
            call.target = expr::Call::Target::External;
            params = &x->params;
            result = x->return_type;
        } else {
            error(e.loc, "unknown function '" + call.callee + "'");
            return Type::dynamic();
        }
        if (params->size() != args.size()) {
            error(e.loc, "'" + call.callee + "' expects " + std::to_string(params->size()) + " argument(s) but is given " +
                             std::to_string(args.size()));
        }
        for (std::size_t i = 0; i < args.size() && i < params->size(); ++i) {
            if (!is_subtype(args[i], (*params)[i].type)) {
                error(call.args[i]->loc, "argument " + std::to_string(i + 1) + " of '" + call.callee + "' must be " +
                                             (*params)[i].type.str() + " but has type " + args[i].str());
            }
        }
        return result;
    }

    Type check_builtin(Builtin b, const std::vector<Type>& args, Expr& e) {
        std::string name(to_string(b));
        auto arity = [&](std::size_t n) {
            if (args.size() != n) {
                error(e.loc, "'" + name + "' expects " + std::to_string(n) + " argument(s) but is given " +
                                 std::to_string(args.size()));
                return false;
            }
            return true;
        };
        auto expect = [&](std::size_t i, bool ok, const std::string& what) {
            if (!ok && !args[i].is_dynamic()) {
                error(e.loc, "argument " + std::to_string(i + 1) + " of '" + name + "' must be " + what + ", found " +
                                 args[i].str());
            }
        };
        auto is_set = [](const Type& t) { return t.is(Type::Tag::Set); };
        auto element = [](const Type& t) { return t.is(Type::Tag::Set) ? t.element() : Type::dynamic(); };

        switch (b) {
            case Builtin::Parent:
                if (!arity(1)) return Type::component();
                if (args[0].is(Type::Tag::Connection)) {
                    error(e.loc, "'parent' is not defined for connections; use parent(source(c)) or "
                                 "parent(destination(c))");
                } else {
                    expect(0, args[0].is(Type::Tag::Component) || args[0].is(Type::Tag::Feature), "a component or feature");
                }
                return Type::component();
            case Builtin::Source:
            case Builtin::Destination:
                if (arity(1)) expect(0, args[0].is(Type::Tag::Connection), "a connection");
                return Type::feature();
            case Builtin::Name:
                if (arity(1)) expect(0, args[0].is_reference(), "a model element");
                return Type::string();
            case Builtin::Property:
            case Builtin::HasProperty:
                if (arity(2)) {
                    expect(0, args[0].is(Type::Tag::Component) || args[0].is(Type::Tag::Connection),
                           "a component or connection");
                    expect(1, args[1].is(Type::Tag::String), "a string");
                }
                return b == Builtin::Property ? Type::dynamic() : Type::boolean();
            case Builtin::Member:
                if (arity(2)) {
                    expect(1, is_set(args[1]), "a set");
                    if (is_set(args[1]) && !join(args[0], args[1].element())) {
                        error(e.loc, "'member' cannot look for " + args[0].str() + " in a set of " +
                                         args[1].element().str());
                    }
                }
                return Type::boolean();
            case Builtin::Union: {
                if (!arity(2)) return Type::set_of(Type::dynamic());
                expect(0, is_set(args[0]), "a set");
                expect(1, is_set(args[1]), "a set");
                auto j = join(element(args[0]), element(args[1]));
                if (!j) {
                    error(e.loc, "'union' of sets of " + element(args[0]).str() + " and " + element(args[1]).str());
                    return Type::set_of(Type::dynamic());
                }
                return Type::set_of(*j);
            }
            case Builtin::Sum: {
                if (!arity(1)) return Type::dynamic();
                if (args[0].is_dynamic()) return Type::dynamic();
                expect(0, is_set(args[0]), "a set of numbers");
                Type el = element(args[0]);
                if (el.is(Type::Tag::Empty) || el.is(Type::Tag::Int)) return Type::integer();
                if (el.is(Type::Tag::Real)) return Type::real();
                if (el.is_dynamic()) return Type::dynamic();
                if (is_set(args[0])) error(e.loc, "'sum' expects a set of numbers, found a set of " + el.str());
                return Type::dynamic();
            }
            case Builtin::Size:
                if (arity(1)) expect(0, is_set(args[0]), "a set");
                return Type::integer();
            case Builtin::IsEmpty:
                if (arity(1)) expect(0, is_set(args[0]), "a set");
                return Type::boolean();
            case Builtin::Debug:
                if (!arity(2)) return Type::dynamic();
                expect(0, args[0].is(Type::Tag::String), "a string");
                return args[1];
        }
        return Type::dynamic();
    }
};

TypedLibrary typecheck(Library lib) {
    TypedLibrary typed;
    typed.lib_ = std::move(lib);
    Checker(typed).run();
    return typed;
}

Goal make_goal(const TypedLibrary& lib, const std::string& claim, std::vector<Value> args, std::string component,
               std::string application) {
    const auto& params = lib.claim_params(claim);
    formula::ClaimApp app;
    app.claim = claim;
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string var = "$" + std::to_string(i);
        auto e = make_expr(expr::Variable{var}, SourceLocation{});
        if (i < params.size()) e->type = params[i].type;
        app.args.push_back(std::move(e));
        env = env.bind(var, args[i]);
    }
    Goal g;
    g.formula = std::shared_ptr<const Formula>(make_formula(std::move(app), SourceLocation{}));
    g.env = std::move(env);
    g.claim = claim;
    g.args = std::move(args);
    g.component = std::move(component);
    g.application = std::move(application);
    return g;
}

std::vector<Goal> attach_prove_directives(const TypedLibrary& lib, const ModelInstance& model) {
    std::vector<Goal> goals;
    std::vector<Diagnostic> errors;
    for (const auto& d : model.prove_directives()) {
        const std::string& where = model.component(d.component).qualified_name;
        if (!lib.is_claim(d.claim)) {
            errors.push_back({d.loc, "prove statement in '" + where + "' names unknown claim '" + d.claim + "'"});
            continue;
        }
        const auto& params = lib.claim_params(d.claim);
        if (params.size() != d.args.size()) {
            errors.push_back({d.loc, "claim '" + d.claim + "' expects " + std::to_string(params.size()) +
                                         " argument(s) but the prove statement in '" + where + "' gives " +
                                         std::to_string(d.args.size())});
            continue;
        }
        std::vector<Value> args;
        bool ok = true;
        for (std::size_t i = 0; i < d.args.size(); ++i) {
            const auto& a = d.args[i];
            Value v = a.literal ? from_property(*a.literal)
                                : Value::from_element(resolve_reference(model, d.component, a.path, a.loc));
            if (!v.conforms_to(params[i].type, model)) {
                errors.push_back({a.loc, "argument '" + a.text + "' of '" + d.claim + "' is a " + v.tag_name(model) +
                                             " but parameter '" + params[i].name + "' requires " +
                                             params[i].type.str()});
                ok = false;
            }
            args.push_back(std::move(v));
        }
        if (ok) goals.push_back(make_goal(lib, d.claim, std::move(args), where, d.application_text()));
    }
    if (!errors.empty()) throw TypeError(std::move(errors));
    return goals;
}

}  // namespace resolute
