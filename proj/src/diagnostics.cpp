#include "resolute/diagnostics.hpp"

namespace resolute {

std::string SourceLocation::str() const {
    std::string out = file ? *file : std::string("<input>");
    if (line > 0) {
        out += ":" + std::to_string(line) + ":" + std::to_string(column);
    }
    return out;
}

std::string Diagnostic::str() const { return loc.str() + ": " + message; }

ParseError::ParseError(SourceLocation loc, const std::string& message)
    : Error(loc.str() + ": " + message), loc_(std::move(loc)), message_(message) {}

ResolveError::ResolveError(SourceLocation loc, const std::string& message)
    : Error(loc.str() + ": " + message), loc_(std::move(loc)) {}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) out += "\n";
        out += d.str();
    }
    return out;
}

}  // namespace

TypeError::TypeError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

EvalError::EvalError(SourceLocation loc, std::string message)
    : Error(message), loc_(std::move(loc)), message_(std::move(message)) {
    what_ = compose(loc_, message_, claim_context_);
}

void EvalError::set_claim_context(std::string claim) {
    claim_context_ = std::move(claim);
    what_ = compose(loc_, message_, claim_context_);
}

std::string EvalError::compose(const SourceLocation& loc, const std::string& message,
                               const std::string& claim) {
    std::string out = loc.line > 0 ? loc.str() + ": " + message : message;
    if (!claim.empty()) out += " (while proving " + claim + ")";
    return out;
}

}  // namespace resolute
