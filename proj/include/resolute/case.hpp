#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "resolute/logic.hpp"

namespace resolute {

/// One instantiated claim of an assurance case.
struct AssuranceNode {
    std::string text;
    std::string predicate;
    std::vector<std::string> args;  // displayed argument values
    bool proven = false;
    std::vector<std::string> refs;  // qualified paths of model elements among the args
    std::vector<AssuranceNode> children;

    std::size_t size() const;  // nodes in this subtree
    bool operator==(const AssuranceNode&) const = default;
};

struct AssuranceCase {
    std::string component;    // component holding the prove statement
    std::string application;  // claim application as written
    bool proven = false;
    AssuranceNode root;

    bool operator==(const AssuranceCase&) const = default;
};

/// Collapse a proof of `goal` to its claims, instantiating each claim's text.
AssuranceCase build_case(const ProofNode& proof, const Goal& goal, const ProofContext& ctx);

/// Text of one claim node: the chosen clause's description, or the first
/// clause's when the claim failed.
std::string claim_text(const ProofNode& claim, const ProofContext& ctx);

std::string render_text(const AssuranceCase& c);
std::string render_json(const AssuranceCase& c);
std::string render_json(const std::vector<AssuranceCase>& cases);
std::string render_dot(const AssuranceCase& c);

/// Inverse of render_json for a single case. Throws Error on malformed input.
AssuranceCase parse_case_json(std::string_view text);

}  // namespace resolute
