#include <CLI11.hpp>
#include <iostream>

#include "resolute/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Evaluate assurance-case rules against an architecture model"};
    app.require_subcommand(1);

    resolute::RunConfig config;
    std::string format = "text";
    double timeout = 0;

    auto* check = app.add_subcommand("check", "Prove every prove statement in a model");
    check->add_option("model", config.model_path, "Architecture model file")->required();
    check->add_option("--lib", config.library_paths, "Rule library, may be repeated; order is significant");
    check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    check->add_option("--output", config.output, "Write cases to this file instead of standard output");
    check->add_flag("--fail-fast", config.fail_fast, "Stop after the first failed case");
    auto* timeout_opt = check->add_option("--timeout", timeout, "External analysis timeout in seconds")
                            ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.format = *resolute::parse_output_format(format);
    if (*timeout_opt) {
        config.external_timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    }
    return resolute::run(config, std::cout, std::cerr);
}
