#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "resolute/ast.hpp"
#include "resolute/model.hpp"
#include "resolute/value.hpp"

namespace resolute {

struct ProcessResult {
    int exit_code = -1;  // -1 when killed by a signal
    bool timed_out = false;
    std::string out;
    std::string err;
};

/// Run `/bin/sh -c command`, feeding `input` on standard input.
ProcessResult run_process(const std::string& command, const std::string& input, std::chrono::milliseconds timeout);

/// Argument line written to an external's standard input (no newline).
std::string encode_external_args(const std::vector<Value>& args, const ModelInstance& model);

/// Convert the external's final output line to a value of `type`.
/// Throws EvalError on malformed output.
Value decode_external_result(const std::string& line, const Type& type, const ModelInstance& model,
                             const ExternalDef& decl, const SourceLocation& loc);

/// Invoke an external analysis. Non-stateless externals run one at a time
/// across the whole process.
Value run_external(const ExternalDef& decl, const std::vector<Value>& args, const ModelInstance& model,
                   std::chrono::milliseconds timeout, const SourceLocation& loc);

}  // namespace resolute
