#include "resolute/case.hpp"

#include <json.hpp>

namespace resolute {

using Json = nlohmann::ordered_json;

std::size_t AssuranceNode::size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

namespace {

void add_refs(const Value& v, const ModelInstance& model, std::vector<std::string>& refs) {
    if (auto ref = v.element()) {
        const std::string& name = model.qualified_name(*ref);
        if (std::find(refs.begin(), refs.end(), name) == refs.end()) refs.push_back(name);
    } else if (v.holds<SetValue>()) {
        for (const auto& item : v.as<SetValue>().items()) add_refs(item, model, refs);
    }
}

// Claim nodes reachable from `n` without passing through another claim.
void collect_claims(const ProofNode& n, std::vector<const ProofNode*>& out) {
    for (const auto& c : n.children) {
        if (c->kind == ProofKind::Claim) {
            out.push_back(c.get());
        } else {
            collect_claims(*c, out);
        }
    }
}

AssuranceNode build_node(const ProofNode& claim, const ProofContext& ctx) {
    const ModelInstance& model = ctx.model();
    AssuranceNode a;
    a.text = claim_text(claim, ctx);
    a.predicate = claim.claim;
    a.proven = claim.proven;
    for (const auto& v : claim.args) {
        a.args.push_back(display(v, model));
        add_refs(v, model, a.refs);
    }
    std::vector<const ProofNode*> subclaims;
    collect_claims(claim, subclaims);
    for (const ProofNode* s : subclaims) a.children.push_back(build_node(*s, ctx));
    return a;
}

Json node_json(const AssuranceNode& n) {
    Json j;
    j["text"] = n.text;
    j["predicate"] = n.predicate;
    j["args"] = n.args;
    j["status"] = n.proven ? "proven" : "failed";
    j["refs"] = n.refs;
    Json children = Json::array();
    for (const auto& c : n.children) children.push_back(node_json(c));
    j["children"] = std::move(children);
    return j;
}

Json case_json(const AssuranceCase& c) {
    Json j;
    j["goal"] = Json{{"component", c.component}, {"application", c.application}};
    j["verdict"] = c.proven ? "proven" : "failed";
    j["root"] = node_json(c.root);
    return j;
}

bool parse_status(const Json& j) {
    std::string s = j.get<std::string>();
    if (s == "proven") return true;
    if (s == "failed") return false;
    throw Error("unknown status '" + s + "'");
}

AssuranceNode node_from_json(const Json& j) {
    AssuranceNode n;
    n.text = j.at("text").get<std::string>();
    n.predicate = j.at("predicate").get<std::string>();
    n.args = j.at("args").get<std::vector<std::string>>();
    n.proven = parse_status(j.at("status"));
    n.refs = j.at("refs").get<std::vector<std::string>>();
    for (const auto& c : j.at("children")) n.children.push_back(node_from_json(c));
    return n;
}

std::string escape_dot(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        if (ch == '\n') {
            out += "\\n";
            continue;
        }
        out += ch;
    }
    return out;
}

void text_lines(const AssuranceNode& n, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(2 * depth), ' ');
    out += n.proven ? "+ " : "! ";
    out += n.text;
    out += '\n';
    for (const auto& c : n.children) text_lines(c, depth + 1, out);
}

void dot_nodes(const AssuranceNode& n, const std::string& id, std::string& out) {
    out += "  " + id + " [label=\"" + escape_dot(n.text) + "\"";
    if (!n.proven) out += ", style=dashed";
    out += "];\n";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        std::string child = id + "_" + std::to_string(i);
        dot_nodes(n.children[i], child, out);
        out += "  " + id + " -> " + child + ";\n";
    }
}

}  // namespace

std::string claim_text(const ProofNode& claim, const ProofContext& ctx) {
    const auto& clauses = ctx.library().clauses(claim.claim);
    std::size_t index = claim.proven && claim.clause >= 0 ? static_cast<std::size_t>(claim.clause) : 0;
    if (index >= clauses.size() || clauses[index]->description.empty()) {
        return claim_instance(claim.claim, claim.args, ctx.model());
    }
    const RuleClause& clause = *clauses[index];
    Env env = ctx.evaluator().bind_params(clause.params, claim.args);
    std::string text;
    for (const auto& seg : clause.description) {
        if (seg.expr) {
            text += display(ctx.evaluator().evaluate(*seg.expr, env), ctx.model());
        } else {
            text += seg.text;
        }
    }
    return text;
}

AssuranceCase build_case(const ProofNode& proof, const Goal& goal, const ProofContext& ctx) {
    AssuranceCase c;
    c.component = goal.component;
    c.application = goal.application.empty() ? claim_instance(goal.claim, goal.args, ctx.model()) : goal.application;
    const ProofNode* root = &proof;
    if (root->kind != ProofKind::Claim) {
        std::vector<const ProofNode*> claims;
        collect_claims(*root, claims);
        if (claims.size() != 1) throw Error("goal does not reduce to a single claim");
        root = claims.front();
    }
    c.root = build_node(*root, ctx);
    c.proven = c.root.proven;
    return c;
}

std::string render_text(const AssuranceCase& c) {
    std::string out = c.proven ? "PROVEN: " : "FAILED: ";
    if (!c.component.empty()) out += c.component + ": ";
    out += c.application + "\n";
    text_lines(c.root, 0, out);
    return out;
}

std::string render_json(const AssuranceCase& c) { return case_json(c).dump() + "\n"; }

std::string render_json(const std::vector<AssuranceCase>& cases) {
    Json arr = Json::array();
    for (const auto& c : cases) arr.push_back(case_json(c));
    return arr.dump() + "\n";
}

std::string render_dot(const AssuranceCase& c) {
    std::string out = "digraph \"" + escape_dot(c.component.empty() ? c.application : c.component + ": " + c.application) +
                      "\" {\n  node [shape=box];\n";
    dot_nodes(c.root, "n0", out);
    out += "}\n";
    return out;
}

AssuranceCase parse_case_json(std::string_view text) {
    try {
        Json j = Json::parse(text);
        AssuranceCase c;
        c.component = j.at("goal").at("component").get<std::string>();
        c.application = j.at("goal").at("application").get<std::string>();
        c.proven = parse_status(j.at("verdict"));
        c.root = node_from_json(j.at("root"));
        return c;
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed assurance case: ") + e.what());
    }
}

}  // namespace resolute
