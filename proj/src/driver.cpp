#include "resolute/driver.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "resolute/stdlib.hpp"

namespace resolute {

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "json") return OutputFormat::Json;
    if (name == "dot") return OutputFormat::Dot;
    return std::nullopt;
}

TypedLibrary load_library(std::span<const SourceFile> files) {
    Library lib = parse_library(stdlib_source(), std::string(kStdlibFileName));
    for (const auto& f : files) lib.append(parse_library(f.text, f.name));
    return typecheck(std::move(lib));
}

Analysis analyze(const SourceFile& model, std::span<const SourceFile> libraries) {
    TypedLibrary lib = load_library(libraries);
    ModelInstance instance = parse_model(model.text, model.name);
    std::vector<Goal> goals = attach_prove_directives(lib, instance);
    return Analysis{std::move(instance), std::move(lib), std::move(goals)};
}

std::vector<AssuranceCase> check_all(const Analysis& analysis, ProofContext& ctx, bool fail_fast) {
    std::vector<AssuranceCase> cases;
    for (const auto& goal : analysis.goals) {
        ProofPtr proof = prove(goal, ctx);
        cases.push_back(build_case(*proof, goal, ctx));
        if (fail_fast && !cases.back().proven) break;
    }
    return cases;
}

std::string render_cases(const std::vector<AssuranceCase>& cases, OutputFormat format) {
    if (format == OutputFormat::Json) return render_json(cases);
    std::string out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (i) out += "\n";
        out += format == OutputFormat::Text ? render_text(cases[i]) : render_dot(cases[i]);
    }
    return out;
}

namespace {

SourceFile read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return SourceFile{path, buf.str()};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        SourceFile model = read_file(config.model_path);
        std::vector<SourceFile> libs;
        for (const auto& p : config.library_paths) libs.push_back(read_file(p));
        Analysis analysis = analyze(model, libs);

        EvalOptions options;
        if (config.external_timeout) options.external_timeout = *config.external_timeout;
        ProofContext ctx(analysis.model, analysis.library, options);
        std::vector<AssuranceCase> cases = check_all(analysis, ctx, config.fail_fast);

        std::string text = render_cases(cases, config.format);
        if (config.output.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream file(config.output, std::ios::binary);
            if (!file || !(file << text)) throw Error(config.output + ": cannot write output");
        }
        for (const auto& c : cases) {
            if (!c.proven) return 1;
        }
        return 0;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << '\n';
    } catch (const TypeError& e) {
        for (const auto& d : e.diagnostics()) err << d.str() << '\n';
    } catch (const Error& e) {
        err << e.what() << '\n';
    }
    return 2;
}

}  // namespace resolute
