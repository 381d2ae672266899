#include "resolute/logic.hpp"

#include <algorithm>
#include <set>

namespace resolute {

std::string_view to_string(ProofKind kind) {
    switch (kind) {
        case ProofKind::Claim: return "claim";
        case ProofKind::And: return "and";
        case ProofKind::Or: return "or";
        case ProofKind::Forall: return "forall";
        case ProofKind::Exists: return "exists";
        case ProofKind::Implies: return "implies";
        case ProofKind::Let: return "let";
        case ProofKind::Eval: return "eval";
    }
    return "?";
}

std::string claim_instance(const std::string& claim, const std::vector<Value>& args, const ModelInstance& model) {
    std::string out = claim + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += display(args[i], model);
    }
    return out + ")";
}

ProofContext::ProofContext(const ModelInstance& model, const TypedLibrary& lib, EvalOptions options)
    : eval_(model, lib, std::move(options)) {}

std::size_t ProofContext::settled_claims() const {
    return static_cast<std::size_t>(std::count_if(memo_.begin(), memo_.end(), [](const auto& kv) {
        return kv.second.state == State::Proven || kv.second.state == State::Failed;
    }));
}

namespace {

using Deps = std::vector<int>;  // sorted, unique

Deps merge(const Deps& a, const Deps& b) {
    Deps out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::shared_ptr<ProofNode> make_node(ProofKind kind, const Formula* f, const Env& env) {
    auto n = std::make_shared<ProofNode>();
    n->kind = kind;
    n->formula = f;
    n->env = env;
    return n;
}

}  // namespace

// Tabled backchaining. A failure may rest on the assumption that claims
// still in progress (identified by stack depth) fail; such results are kept
// as conditional until the frames they depend on complete.
class Prover {
public:
    explicit Prover(ProofContext& ctx) : ctx_(ctx), eval_(ctx.eval_) {}

    ProofPtr run(const Goal& goal) {
        try {
            return prove(*goal.formula, goal.env).node;
        } catch (...) {
            std::erase_if(ctx_.memo_, [](const auto& kv) {
                return kv.second.state == ProofContext::State::InProgress ||
                       kv.second.state == ProofContext::State::ConditionallyFailed;
            });
            throw;
        }
    }

private:
    using Key = ProofContext::Key;
    using State = ProofContext::State;

    struct Result {
        ProofPtr node;
        Deps deps;
    };
    struct Frame {
        std::vector<Key> pending;
    };

    ProofContext& ctx_;
    const Evaluator& eval_;
    std::vector<Frame> stack_;

    Result prove(const Formula& f, const Env& env) {
        return std::visit([&](const auto& x) { return step(x, f, env); }, f.node);
    }

    Result step(const formula::EvalAtom& x, const Formula& f, const Env& env) {
        auto n = make_node(ProofKind::Eval, &f, env);
        bool v = eval_.evaluate_bool(*x.expr, env);
        n->values.push_back(v);
        n->proven = v;
        return {n, {}};
    }

    Result step(const formula::Implies& x, const Formula& f, const Env& env) {
        auto n = make_node(ProofKind::Implies, &f, env);
        bool a = eval_.evaluate_bool(*x.antecedent, env);
        n->values.push_back(a);
        if (!a) {
            n->proven = true;
            return {n, {}};
        }
        Result r = prove(*x.consequent, env);
        n->proven = r.node->proven;
        n->children.push_back(r.node);
        return {n, std::move(r.deps)};
    }

    Result step(const formula::And& x, const Formula& f, const Env& env) {
        auto n = make_node(ProofKind::And, &f, env);
        Result l = prove(*x.lhs, env);
        n->children.push_back(l.node);
        if (!l.node->proven) return {n, std::move(l.deps)};
        Result r = prove(*x.rhs, env);
        n->children.push_back(r.node);
        n->proven = r.node->proven;
        return {n, std::move(r.deps)};
    }

    Result step(const formula::Or& x, const Formula& f, const Env& env) {
        auto n = make_node(ProofKind::Or, &f, env);
        Result l = prove(*x.lhs, env);
        if (l.node->proven) {
            n->proven = true;
            n->branch = 0;
            n->children.push_back(l.node);
            return {n, {}};
        }
        Result r = prove(*x.rhs, env);
        if (r.node->proven) {
            n->proven = true;
            n->branch = 1;
            n->children.push_back(r.node);
            return {n, {}};
        }
        n->children = {l.node, r.node};
        return {n, merge(l.deps, r.deps)};
    }

    Result step(const formula::Quantified& x, const Formula& f, const Env& env) {
        bool forall = x.quantifier == Quantifier::Forall;
        auto n = make_node(forall ? ProofKind::Forall : ProofKind::Exists, &f, env);
        std::vector<Value> domain = eval_.enumerate(x.domain, env, f.loc);
        Deps deps;
        bool have_failure = false;
        for (auto& v : domain) {
            Result r = prove(*x.body, env.bind(x.var, v));
            if (forall) {
                if (r.node->proven) {
                    if (!have_failure) {
                        n->values.push_back(v);
                        n->children.push_back(r.node);
                    }
                    continue;
                }
                if (!have_failure) {
                    n->values.clear();
                    n->children.clear();
                    deps = r.deps;
                } else if (!deps.empty() && (r.deps.empty() || r.deps.back() < deps.back())) {
                    deps = r.deps;
                }
                have_failure = true;
                n->values.push_back(v);
                n->children.push_back(r.node);
            } else {
                if (r.node->proven) {
                    n->proven = true;
                    n->values = {v};
                    n->children = {r.node};
                    return {n, {}};
                }
                n->values.push_back(v);
                n->children.push_back(r.node);
                deps = merge(deps, r.deps);
            }
        }
        if (forall) n->proven = !have_failure;
        return {n, n->proven ? Deps{} : deps};
    }

    Result step(const formula::Let& x, const Formula& f, const Env& env) {
        auto n = make_node(ProofKind::Let, &f, env);
        Value v = eval_.evaluate(*x.value, env);
        if (!v.conforms_to(x.type, ctx_.model())) {
            throw EvalError(x.value->loc, "'" + x.var + "' requires " + x.type.str() + " but got " +
                                              v.tag_name(ctx_.model()) + " " + display(v, ctx_.model()));
        }
        n->values.push_back(v);
        Result r = prove(*x.body, env.bind(x.var, v));
        n->proven = r.node->proven;
        n->children.push_back(r.node);
        return {n, std::move(r.deps)};
    }

    Result step(const formula::ClaimApp& x, const Formula&, const Env& env) {
        std::vector<Value> args;
        args.reserve(x.args.size());
        for (const auto& a : x.args) args.push_back(eval_.evaluate(*a, env));
        return solve(Key{x.claim, std::move(args)});
    }

    Result solve(Key key) {
        auto& memo = ctx_.memo_;
        if (auto it = memo.find(key); it != memo.end()) {
            const auto& entry = it->second;
            switch (entry.state) {
                case State::Proven:
                case State::Failed:
                    return {entry.node, {}};
                case State::ConditionallyFailed:
                    return {entry.node, entry.deps};
                case State::InProgress: {
                    auto leaf = make_node(ProofKind::Claim, nullptr, Env{});
                    leaf->claim = key.claim;
                    leaf->args = key.args;
                    leaf->cycle = true;
                    return {leaf, {entry.depth}};
                }
            }
        }

        const int depth = static_cast<int>(stack_.size());
        memo[key] = ProofContext::Entry{State::InProgress, depth, {}, nullptr};
        stack_.emplace_back();

        auto n = make_node(ProofKind::Claim, nullptr, Env{});
        n->claim = key.claim;
        n->args = key.args;
        Deps deps;
        const auto& clauses = ctx_.library().clauses(key.claim);
        try {
            for (std::size_t i = 0; i < clauses.size(); ++i) {
                Env env = eval_.bind_params(clauses[i]->params, key.args);
                Result r = prove(*clauses[i]->body, env);
                if (r.node->proven) {
                    n->proven = true;
                    n->clause = static_cast<int>(i);
                    n->children = {r.node};
                    break;
                }
                n->children.push_back(r.node);
                deps = merge(deps, r.deps);
            }
        } catch (EvalError& e) {
            if (e.claim_context().empty()) e.set_claim_context(claim_instance(key.claim, key.args, ctx_.model()));
            throw;
        }

        Frame frame = std::move(stack_.back());
        stack_.pop_back();

        if (n->proven) {
            // Anything that failed assuming this claim fails must be redone.
            for (const auto& p : frame.pending) memo.erase(p);
            memo[key] = ProofContext::Entry{State::Proven, 0, {}, n};
            return {n, {}};
        }

        deps.erase(std::remove(deps.begin(), deps.end(), depth), deps.end());
        for (const auto& p : frame.pending) {
            auto& entry = memo.at(p);
            Deps d = entry.deps;
            d.erase(std::remove(d.begin(), d.end(), depth), d.end());
            settle(p, entry, merge(d, deps));
        }
        settle(key, memo[key] = ProofContext::Entry{State::Failed, 0, {}, n}, deps);
        return {n, deps};
    }

    void settle(const Key& key, ProofContext::Entry& entry, Deps deps) {
        if (deps.empty()) {
            entry.state = State::Failed;
            entry.deps.clear();
            return;
        }
        entry.state = State::ConditionallyFailed;
        stack_.at(static_cast<std::size_t>(deps.back())).pending.push_back(key);
        entry.deps = std::move(deps);
    }
};

ProofPtr prove(const Goal& goal, ProofContext& ctx) { return Prover(ctx).run(goal); }

namespace {

class Replayer {
public:
    explicit Replayer(const ProofContext& ctx) : ctx_(ctx), eval_(ctx.evaluator()), model_(ctx.model()) {}

    ReplayResult run(const ProofNode& root, const Goal& goal) {
        try {
            check(root, *goal.formula, goal.env, "goal");
        } catch (const Invalid& bad) {
            return ReplayResult{false, bad.path, bad.reason};
        }
        return {};
    }

private:
    struct Invalid {
        std::string path;
        std::string reason;
    };

    const ProofContext& ctx_;
    const Evaluator& eval_;
    const ModelInstance& model_;
    std::set<const ProofNode*> visited_claims_;

    [[noreturn]] static void fail(const std::string& path, const std::string& reason) { throw Invalid{path, reason}; }

    static void require(bool cond, const std::string& path, const std::string& reason) {
        if (!cond) fail(path, reason);
    }

    Value eval(const Expr& e, const Env& env, const std::string& path) {
        try {
            return eval_.evaluate(e, env);
        } catch (const EvalError& err) {
            fail(path, std::string("evaluation error: ") + err.message());
        }
    }

    bool eval_bool(const Expr& e, const Env& env, const std::string& path) {
        Value v = eval(e, env, path);
        require(v.holds<bool>(), path, "'" + e.str() + "' is not a bool");
        return v.as<bool>();
    }

    std::vector<Value> domain(const Domain& d, const Env& env, const SourceLocation& loc, const std::string& path) {
        try {
            return eval_.enumerate(d, env, loc);
        } catch (const EvalError& err) {
            fail(path, std::string("evaluation error: ") + err.message());
        }
    }

    void child(const ProofNode& n, std::size_t i, const Formula& f, const Env& env, const std::string& path) {
        check(*n.children[i], f, env, path + "/" + std::string(to_string(n.kind)) + "[" + std::to_string(i) + "]");
    }

    void check(const ProofNode& n, const Formula& f, const Env& env, const std::string& path) {
        if (auto app = std::get_if<formula::ClaimApp>(&f.node)) {
            require(n.kind == ProofKind::Claim, path, "expected a claim step");
            require(n.claim == app->claim, path, "claim is " + n.claim + ", formula names " + app->claim);
            require(n.args.size() == app->args.size(), path, "wrong number of claim arguments");
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                require(eval(*app->args[i], env, path) == n.args[i], path,
                        "argument " + std::to_string(i + 1) + " does not match the formula");
            }
            check_claim(n, path + ":" + claim_instance(n.claim, n.args, model_));
            return;
        }
        require(n.kind != ProofKind::Claim, path, "unexpected claim step");
        // Leaves are re-evaluated from their own recorded formula first, so a
        // tampered node is reported as an evaluation mismatch.
        if (n.kind == ProofKind::Eval && n.formula) {
            if (auto atom = std::get_if<formula::EvalAtom>(&n.formula->node)) {
                bool v = eval_bool(*atom->expr, env, path);
                require(v == n.proven, path,
                        "'" + atom->expr->str() + "' evaluates to " + (v ? "true" : "false") + " but the node is " +
                            (n.proven ? "proven" : "failed"));
            }
        }
        require(n.formula == &f, path, "node does not correspond to formula " + f.str());
        std::visit([&](const auto& x) { check_step(x, n, f, env, path); }, f.node);
    }

    void check_step(const formula::ClaimApp&, const ProofNode&, const Formula&, const Env&, const std::string&) {}

    void check_step(const formula::EvalAtom& x, const ProofNode& n, const Formula&, const Env& env,
                    const std::string& path) {
        require(n.kind == ProofKind::Eval, path, "expected an eval step");
        require(n.children.empty(), path, "eval step has children");
        bool v = eval_bool(*x.expr, env, path);
        require(v == n.proven, path, "evaluation disagrees with status");
    }

    void check_step(const formula::Implies& x, const ProofNode& n, const Formula&, const Env& env,
                    const std::string& path) {
        require(n.kind == ProofKind::Implies, path, "expected an implication step");
        bool a = eval_bool(*x.antecedent, env, path);
        if (!a) {
            require(n.proven && n.children.empty(), path, "false antecedent must be proven with no child");
            return;
        }
        require(n.children.size() == 1, path, "true antecedent needs exactly one child");
        require(n.children[0]->proven == n.proven, path, "status differs from the consequent");
        child(n, 0, *x.consequent, env, path);
    }

    void check_step(const formula::And& x, const ProofNode& n, const Formula&, const Env& env,
                    const std::string& path) {
        require(n.kind == ProofKind::And, path, "expected a conjunction step");
        require(!n.children.empty() && n.children.size() <= 2, path, "conjunction needs one or two children");
        if (n.proven) {
            require(n.children.size() == 2 && n.children[0]->proven && n.children[1]->proven, path,
                    "proven conjunction needs both conjuncts proven");
        } else if (n.children.size() == 1) {
            require(!n.children[0]->proven, path, "conjunction stopped after a proven conjunct");
        } else {
            require(n.children[0]->proven && !n.children[1]->proven, path, "failed conjunction has no failed conjunct");
        }
        child(n, 0, *x.lhs, env, path);
        if (n.children.size() == 2) child(n, 1, *x.rhs, env, path);
    }

    void check_step(const formula::Or& x, const ProofNode& n, const Formula&, const Env& env,
                    const std::string& path) {
        require(n.kind == ProofKind::Or, path, "expected a disjunction step");
        if (n.proven) {
            require(n.children.size() == 1 && n.children[0]->proven && (n.branch == 0 || n.branch == 1), path,
                    "proven disjunction needs one proven branch");
            child(n, 0, n.branch == 0 ? *x.lhs : *x.rhs, env, path);
            return;
        }
        require(n.children.size() == 2 && !n.children[0]->proven && !n.children[1]->proven, path,
                "failed disjunction must record both failed branches");
        child(n, 0, *x.lhs, env, path);
        child(n, 1, *x.rhs, env, path);
    }

    void check_step(const formula::Quantified& x, const ProofNode& n, const Formula& f, const Env& env,
                    const std::string& path) {
        bool forall = x.quantifier == Quantifier::Forall;
        require(n.kind == (forall ? ProofKind::Forall : ProofKind::Exists), path, "expected a quantifier step");
        require(n.values.size() == n.children.size(), path, "instances and children differ in number");
        std::vector<Value> dom = domain(x.domain, env, f.loc, path);
        bool all_instances = n.values == dom;
        bool subsequence = std::includes(dom.begin(), dom.end(), n.values.begin(), n.values.end(),
                                         [&](const Value& a, const Value& b) { return index(dom, a) < index(dom, b); });
        if (forall && n.proven) {
            require(all_instances, path, "proven forall must cover every instance");
        } else if (forall) {
            require(!n.values.empty() && subsequence, path, "failed forall must list failing instances");
        } else if (n.proven) {
            require(n.values.size() == 1 && std::find(dom.begin(), dom.end(), n.values[0]) != dom.end(), path,
                    "proven exists needs one witness from the domain");
        } else {
            require(all_instances, path, "failed exists must try every instance");
        }
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            require(n.children[i]->proven == n.proven, path, "instance status inconsistent");
            child(n, i, *x.body, env.bind(x.var, n.values[i]), path);
        }
    }

    void check_step(const formula::Let& x, const ProofNode& n, const Formula&, const Env& env,
                    const std::string& path) {
        require(n.kind == ProofKind::Let, path, "expected a let step");
        Value v = eval(*x.value, env, path);
        require(n.values.size() == 1 && n.values[0] == v, path, "bound value differs");
        require(v.conforms_to(x.type, model_), path, "bound value has the wrong type");
        require(n.children.size() == 1 && n.children[0]->proven == n.proven, path, "let needs one child");
        child(n, 0, *x.body, env.bind(x.var, v), path);
    }

    void check_claim(const ProofNode& n, const std::string& path) {
        if (!visited_claims_.insert(&n).second) return;
        if (n.cycle) {
            require(!n.proven && n.children.empty(), path, "cycle leaf must be failed with no children");
            return;
        }
        const auto& clauses = ctx_.library().clauses(n.claim);
        require(!clauses.empty(), path, "unknown claim");
        auto env_for = [&](std::size_t i) {
            try {
                return eval_.bind_params(clauses[i]->params, n.args);
            } catch (const EvalError& err) {
                fail(path, err.message());
            }
        };
        if (n.proven) {
            require(n.clause >= 0 && static_cast<std::size_t>(n.clause) < clauses.size(), path,
                    "chosen clause does not exist");
            require(n.children.size() == 1 && n.children[0]->proven, path, "proven claim needs one proven body");
            check(*n.children[0], *clauses[static_cast<std::size_t>(n.clause)]->body, env_for(n.clause),
                  path + "/clause[" + std::to_string(n.clause) + "]");
            return;
        }
        require(n.children.size() == clauses.size(), path, "failed claim must record an attempt per clause");
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            require(!n.children[i]->proven, path, "failed claim has a proven clause attempt");
            check(*n.children[i], *clauses[i]->body, env_for(i), path + "/clause[" + std::to_string(i) + "]");
        }
    }

    static std::size_t index(const std::vector<Value>& dom, const Value& v) {
        return static_cast<std::size_t>(std::find(dom.begin(), dom.end(), v) - dom.begin());
    }
};

}  // namespace

ReplayResult replay_check(const ProofNode& root, const Goal& goal, const ProofContext& ctx) {
    return Replayer(ctx).run(root, goal);
}

}  // namespace resolute
