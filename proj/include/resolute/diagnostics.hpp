#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace resolute {

struct SourceLocation {
    std::shared_ptr<const std::string> file;
    int line = 0;
    int column = 0;

    std::string str() const;
};

struct Diagnostic {
    SourceLocation loc;
    std::string message;

    std::string str() const;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a model or library file.
class ParseError : public Error {
public:
    ParseError(SourceLocation loc, const std::string& message);
    const SourceLocation& location() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    SourceLocation loc_;
    std::string message_;
};

/// A name in a model or prove directive that does not denote a model element.
class ResolveError : public Error {
public:
    ResolveError(SourceLocation loc, const std::string& message);
    const SourceLocation& location() const { return loc_; }

private:
    SourceLocation loc_;
};

/// One or more static errors found while typechecking a library or binding
/// prove directives against it.
class TypeError : public Error {
public:
    explicit TypeError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Runtime failure of a computation. Aborts proof search; it is never
/// treated as a failed claim.
class EvalError : public Error {
public:
    EvalError(SourceLocation loc, std::string message);

    const SourceLocation& location() const { return loc_; }
    const std::string& message() const { return message_; }
    const std::string& claim_context() const { return claim_context_; }
    void set_claim_context(std::string claim);

private:
    static std::string compose(const SourceLocation& loc, const std::string& message,
                               const std::string& claim);

    SourceLocation loc_;
    std::string message_;
    std::string claim_context_;
    std::string what_;

public:
    const char* what() const noexcept override { return what_.c_str(); }
};

}  // namespace resolute
