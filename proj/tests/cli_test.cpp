#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace resolute;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out, err;
};

Outcome run_config(const RunConfig& cfg) {
    std::ostringstream out, err;
    Outcome o;
    o.code = run(cfg, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

RunConfig config(const std::string& model, std::vector<std::string> libs, OutputFormat f = OutputFormat::Text) {
    RunConfig c;
    c.model_path = model.starts_with("/") ? model : test::sample_path(model);
    for (auto& l : libs) c.library_paths.push_back(l.starts_with("/") ? l : test::sample_path(l));
    c.format = f;
    return c;
}

// Runs the resolute binary through the shell; stdout only.
Outcome run_binary(const std::string& args) {
    Outcome o;
    std::string cmd = std::string(RESOLUTE_BINARY) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) o.out.append(buf.data(), n);
    int status = pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("resolute_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return (path_ / name).string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST(Cli, NoDirectivesIsSuccessWithoutOutput) {
    TempDir dir;
    Outcome o = run_config(config(dir.write("empty.arch", "system S { thread T { } }\n"), {"uav/decrypt.resolute"}));
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "");
    Outcome j = run_config(config(dir.file("empty.arch"), {}, OutputFormat::Json));
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(j.out, "[]\n");
}

TEST(Cli, SecureModelPasses) {
    Outcome o = run_config(config("uav/secure.arch", {"uav/decrypt.resolute"}));
    EXPECT_EQ(o.code, 0);
    std::istringstream lines(o.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("PROVEN: ", 0), 0u);
    int claims = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(line.substr(line.find_first_not_of(' '), 2), "+ ") << line;
        ++claims;
    }
    EXPECT_GT(claims, 0);
}

TEST(Cli, BypassModelFails) {
    Outcome o = run_config(config("uav/bypass.arch", {"uav/decrypt.resolute"}));
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.out.find("! The connection UAV.Flight.bypass only carries messages that pass Decrypt"), std::string::npos);
    EXPECT_EQ(o.err, "");
}

TEST(Cli, CasesSeparatedByBlankLines) {
    Outcome o = run_config(config("cycle/rings.arch", {"uav/decrypt.resolute"}));
    EXPECT_EQ(o.code, 1);
    auto gap = o.out.find("\n\nFAILED: ");
    ASSERT_NE(gap, std::string::npos);
    EXPECT_EQ(o.out.rfind("PROVEN: ", 0), 0u);

    Outcome d = run_config(config("cycle/rings.arch", {"uav/decrypt.resolute"}, OutputFormat::Dot));
    EXPECT_NE(d.out.find("}\n\ndigraph "), std::string::npos);
}

TEST(Cli, FailFastStopsAfterFirstFailure) {
    TempDir dir;
    std::string model = dir.write("two.arch", R"(system S {
  thread A { }
  resolute {
    prove is_decrypt(A)
    prove is_decrypt(A)
  }
}
)");
    RunConfig c = config(model, {"uav/decrypt.resolute"}, OutputFormat::Json);
    Outcome all = run_config(c);
    c.fail_fast = true;
    Outcome first = run_config(c);
    EXPECT_EQ(all.code, 1);
    EXPECT_EQ(first.code, 1);
    auto verdicts = [](const std::string& s) {
        std::size_t n = 0;
        for (auto p = s.find("\"verdict\""); p != std::string::npos; p = s.find("\"verdict\"", p + 1)) ++n;
        return n;
    };
    EXPECT_EQ(verdicts(all.out), 2u);
    EXPECT_EQ(verdicts(first.out), 1u);
}

TEST(Cli, OutputFileReceivesCases) {
    TempDir dir;
    RunConfig c = config("memory/shared.arch", {"memory/protection.resolute"}, OutputFormat::Json);
    c.output = dir.file("case.json");
    Outcome o = run_config(c);
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "");
    std::string written = slurp(c.output);
    EXPECT_EQ(written.front(), '[');
    EXPECT_NE(written.find("\"verdict\":\"proven\""), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwoWithLocation) {
    TempDir dir;
    std::string bad_model = dir.write("bad.arch", "system S {\n  thread T {\n}\n");
    Outcome m = run_config(config(bad_model, {"uav/decrypt.resolute"}));
    EXPECT_EQ(m.code, 2);
    EXPECT_EQ(m.out, "");
    EXPECT_NE(m.err.find("bad.arch:"), std::string::npos) << m.err;

    std::string bad_lib = dir.write("bad.resolute", "c(x : thread) <= ** \"c\" **\n  y > 1\n");
    Outcome l = run_config(config("uav/secure.arch", {"uav/decrypt.resolute", bad_lib}));
    EXPECT_EQ(l.code, 2);
    EXPECT_NE(l.err.find("bad.resolute:2:3:"), std::string::npos) << l.err;

    Outcome missing = run_config(config(dir.file("nope.arch"), {}));
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("nope.arch"), std::string::npos);
}

TEST(Cli, EvaluationErrorsNameClaim) {
    TempDir dir;
    std::string model = dir.write("m.arch", "system S {\n  thread T { }\n  resolute {\n    prove slow(T)\n  }\n}\n");
    std::string lib = dir.write("l.resolute", "slow(t : thread) <= ** \"s\" ** property(t, \"Period\") > 1\n");
    Outcome o = run_config(config(model, {lib}));
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("evaluation error: "), std::string::npos) << o.err;
    EXPECT_NE(o.err.find("slow(S.T)"), std::string::npos) << o.err;
}

TEST(Cli, LibraryOrderIsClauseOrder) {
    TempDir dir;
    std::string model = dir.write("m.arch", "system S {\n  resolute {\n    prove c(1)\n  }\n}\n");
    std::string a = dir.write("a.resolute", "c(x : int) <= ** \"from a\" ** x > 0\n");
    std::string b = dir.write("b.resolute", "c(x : int) <= ** \"from b\" ** x = 1\n");
    EXPECT_NE(run_config(config(model, {a, b})).out.find("+ from a"), std::string::npos);
    EXPECT_NE(run_config(config(model, {b, a})).out.find("+ from b"), std::string::npos);
}

TEST(CliBinary, ExitCodesAndStableOutput) {
    std::string lib = " --lib " + test::sample_path("uav/decrypt.resolute");
    Outcome secure = run_binary("check " + test::sample_path("uav/secure.arch") + lib);
    Outcome bypass = run_binary("check " + test::sample_path("uav/bypass.arch") + lib);
    EXPECT_EQ(secure.code, 0);
    EXPECT_EQ(bypass.code, 1);
    for (const char* fmt : {"text", "json", "dot"}) {
        std::string args = "check " + test::sample_path("uav/bypass.arch") + lib + " --format " + fmt;
        Outcome a = run_binary(args);
        Outcome b = run_binary(args);
        EXPECT_EQ(a.out, b.out) << fmt;
        EXPECT_FALSE(a.out.empty());
    }
    EXPECT_EQ(run_binary("check " + test::sample_path("uav/secure.arch") + lib + " --format yaml").code, 2);
    EXPECT_EQ(run_binary("frobnicate").code, 2);
}
