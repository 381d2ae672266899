#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resolute/ast.hpp"
#include "resolute/eval.hpp"
#include "resolute/typecheck.hpp"
#include "resolute/value.hpp"

namespace resolute {

enum class ProofKind { Claim, And, Or, Forall, Exists, Implies, Let, Eval };

std::string_view to_string(ProofKind kind);

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

/// One step of a proof (status proven) or of a failed proof attempt.
///
/// Claim nodes are shared between every use of the same ground claim, so a
/// proof is a DAG. A Claim node does not point back at the formula that
/// referenced it; its body child is checked against the chosen clause.
struct ProofNode {
    ProofKind kind = ProofKind::Eval;
    bool proven = false;
    const Formula* formula = nullptr;  // null for Claim nodes
    Env env;

    // Claim
    std::string claim;
    std::vector<Value> args;
    int clause = -1;     // chosen clause when proven
    bool cycle = false;  // hit a claim already being proven higher up

    // Or: index of the proven disjunct
    int branch = -1;

    // Forall/Exists: bound value per child. Let: the bound value.
    // Implies: antecedent value. Eval: computed value.
    std::vector<Value> values;

    std::vector<ProofPtr> children;
};

/// Rules, model and the claim memo table for one run. Results are shared
/// across goals proven with the same context.
class ProofContext {
public:
    ProofContext(const ModelInstance& model, const TypedLibrary& lib, EvalOptions options = {});

    const Evaluator& evaluator() const { return eval_; }
    const ModelInstance& model() const { return eval_.model(); }
    const TypedLibrary& library() const { return eval_.library(); }

    /// Number of ground claims with a final verdict in the memo.
    std::size_t settled_claims() const;

private:
    friend class Prover;

    struct Key {
        std::string claim;
        std::vector<Value> args;
        auto operator<=>(const Key&) const = default;
        bool operator==(const Key&) const = default;
    };
    enum class State { InProgress, Proven, Failed, ConditionallyFailed };
    struct Entry {
        State state = State::InProgress;
        int depth = 0;               // InProgress: stack depth of the frame
        std::vector<int> deps;       // ConditionallyFailed: frames assumed to fail
        ProofPtr node;
    };

    Evaluator eval_;
    std::map<Key, Entry> memo_;
};

/// Prove a ground goal. Throws EvalError, annotated with the innermost
/// claim instance being proven, if a computation fails.
ProofPtr prove(const Goal& goal, ProofContext& ctx);

/// Outcome of replay_check; converts to true when every node is locally valid.
struct ReplayResult {
    bool ok = true;
    std::string path;    // to the first invalid node
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Independently re-verify each node of a proof or attempt against its
/// formula: evaluation leaves and antecedents are re-evaluated, quantifier
/// instances re-enumerated, claim steps checked against their clauses.
ReplayResult replay_check(const ProofNode& root, const Goal& goal, const ProofContext& ctx);

/// Human-readable claim instance, e.g. `foo(Sys.A, 3)`.
std::string claim_instance(const std::string& claim, const std::vector<Value>& args, const ModelInstance& model);

}  // namespace resolute
