#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "resolute/driver.hpp"

namespace test {

inline std::string sample_path(const std::string& rel) { return std::string(RESOLUTE_SAMPLES_DIR) + "/" + rel; }

inline std::string read_sample(const std::string& rel) {
    std::ifstream in(sample_path(rel));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline resolute::Analysis analyze(const std::string& model, const std::string& lib) {
    std::vector<resolute::SourceFile> libs{{"test.resolute", lib}};
    return resolute::analyze({"test.arch", model}, libs);
}

inline resolute::TypedLibrary library(const std::string& lib) {
    std::vector<resolute::SourceFile> libs{{"test.resolute", lib}};
    return resolute::load_library(libs);
}

inline resolute::ComponentRef component(const resolute::ModelInstance& m, const std::string& qualified) {
    return std::get<resolute::ComponentRef>(*m.find(qualified));
}

// Thread pipelines, each with one feedback edge; used for the scale check.
inline std::string pipelines_model(int pipelines, int stages) {
    std::ostringstream out;
    out << "system Vehicle {\n";
    for (int p = 0; p < pipelines; ++p) {
        out << "  process P" << p << " {\n";
        for (int s = 0; s < stages; ++s) {
            out << "    thread T" << s << " {\n      in port i\n      in port fb\n      out port o\n";
            if (s == 0) out << "      property Role = \"Decrypt\"\n";
            out << "    }\n";
        }
        for (int s = 0; s + 1 < stages; ++s) {
            out << "    connection c" << s << " : T" << s << ".o -> T" << s + 1
                << ".i { property Unalterable = true }\n";
        }
        // Even pipelines feed back into the decrypting stage, so the goal holds.
        // Odd ones loop back mid-chain, which no decrypt step guards.
        out << "    connection back : T" << stages - 1 << ".o -> T" << (p % 2 == 0 ? 0 : stages / 2)
            << ".fb { property Unalterable = true }\n";
        out << "    resolute {\n      prove only_receive_decrypt(T" << stages - 1 << ")\n    }\n";
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

// Physical targets of the three binding properties, plus one unbound memory.
inline const char* kBindingTargets[] = {"M", "B", "P", "X"};

// Processes L0..L7 in system Host. Bit i of the index says whether the
// memory (0), connection (1) or processor (2) binding is present; each
// binding lists the matching target from kBindingTargets.
inline std::string bindings_model() {
    const char* kinds[] = {"Memory", "Connection", "Processor"};
    std::ostringstream out;
    out << "system Host {\n  memory M { }\n  bus B { }\n  processor P { }\n  memory X { }\n";
    for (int mask = 0; mask < 8; ++mask) {
        out << "  process L" << mask << " {\n";
        for (int i = 0; i < 3; ++i) {
            if (mask & (1 << i)) {
                out << "    property Deployment_Properties::Actual_" << kinds[i] << "_Binding = [ref "
                    << kBindingTargets[i] << "]\n";
            }
        }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace test
