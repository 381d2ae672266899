#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resolute/case.hpp"
#include "resolute/logic.hpp"
#include "resolute/model.hpp"
#include "resolute/typecheck.hpp"

namespace resolute {

enum class OutputFormat { Text, Json, Dot };

std::optional<OutputFormat> parse_output_format(std::string_view name);

struct RunConfig {
    std::string model_path;
    std::vector<std::string> library_paths;
    OutputFormat format = OutputFormat::Text;
    std::string output;  // empty: write to `out`
    bool fail_fast = false;
    std::optional<std::chrono::milliseconds> external_timeout;  // default: environment or 30 s
};

struct SourceFile {
    std::string name;
    std::string text;
};

/// Parse the standard library followed by `files` in order and typecheck
/// the result as one library.
TypedLibrary load_library(std::span<const SourceFile> files);

/// Everything needed to prove a model's directives.
struct Analysis {
    ModelInstance model;
    TypedLibrary library;
    std::vector<Goal> goals;
};

Analysis analyze(const SourceFile& model, std::span<const SourceFile> libraries);

/// Prove every goal in order with one shared context. Stops after the first
/// failed case when `fail_fast` is set.
std::vector<AssuranceCase> check_all(const Analysis& analysis, ProofContext& ctx, bool fail_fast = false);

std::string render_cases(const std::vector<AssuranceCase>& cases, OutputFormat format);

/// Batch entry point. Returns 0 when every case is proven, 1 when any
/// failed, 2 on input, type or evaluation errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace resolute
