// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lfp_check.hpp"
#include "resolute/case.hpp"
#include "resolute/driver.hpp"
#include "resolute/logic.hpp"
#include "support.hpp"

using namespace resolute;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kDualModelLimitMs = 1000;
constexpr double kOracleLimitMs = 60000;
constexpr double kCycleLimitMs = 1000;
constexpr double kScaleLimitMs = 5000;
constexpr int kOracleInstances = 500;
constexpr std::uint64_t kOracleSeed = 7031;

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// Proven trees from criteria 1-7, replayed for criterion 8.
struct ReplayLog {
    std::size_t checked = 0;
    std::vector<std::string> rejected;

    void add(const ProofNode& p, const Goal& g, const ProofContext& ctx) {
        if (!p.proven) return;
        ++checked;
        ReplayResult r = replay_check(p, g, ctx);
        if (!r) rejected.push_back(g.claim + " at " + r.path + ": " + r.reason);
    }
} replays;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::string& model, const std::string& lib, OutputFormat f = OutputFormat::Text) {
    RunConfig c;
    c.model_path = test::sample_path(model);
    c.library_paths = {test::sample_path(lib)};
    c.format = f;
    std::ostringstream out, err;
    int code = run(c, out, err);
    return {code, out.str() + err.str()};
}

// Proves every directive of a sample pair, logging proven trees for replay.
std::vector<std::pair<ProofPtr, AssuranceCase>> prove_sample(const std::string& model, const std::string& lib) {
    Analysis a = test::analyze(test::read_sample(model), test::read_sample(lib));
    ProofContext ctx(a.model, a.library);
    std::vector<std::pair<ProofPtr, AssuranceCase>> out;
    for (const auto& g : a.goals) {
        ProofPtr p = prove(g, ctx);
        replays.add(*p, g, ctx);
        out.emplace_back(p, build_case(*p, g, ctx));
    }
    return out;
}

Verdict dual_model() {
    Verdict v;
    auto t0 = Clock::now();
    CliRun secure = cli("uav/secure.arch", "uav/decrypt.resolute");
    CliRun bypass = cli("uav/bypass.arch", "uav/decrypt.resolute");
    double elapsed = ms_since(t0);
    prove_sample("uav/secure.arch", "uav/decrypt.resolute");
    v.require(secure.code == 0, "secure model exit " + std::to_string(secure.code));
    std::istringstream lines(secure.out);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) v.require(line.find("+ ") == line.find_first_not_of(' '), "unproven line: " + line);
    v.require(bypass.code == 1, "bypass model exit " + std::to_string(bypass.code));
    v.require(bypass.out.find("! The connection UAV.Flight.bypass ") != std::string::npos,
              "bypass connection claim not marked failed");
    v.require(elapsed < kDualModelLimitMs, "took " + std::to_string(elapsed) + " ms");
    v.detail += v.ok ? "secure exit 0, bypass exit 1, " + std::to_string(static_cast<int>(elapsed)) + " ms" : "";
    return v;
}

Verdict memory_example() {
    Verdict v;
    auto ok = prove_sample("memory/shared.arch", "memory/protection.resolute");
    v.require(ok.size() == 1 && ok[0].first->proven, "shared model not proven");
    if (!v.ok) return v;
    v.require(ok[0].first->clause == 1, "proven by clause " + std::to_string(ok[0].first->clause + 1));
    v.require(ok[0].second.root.children.size() == 3,
              std::to_string(ok[0].second.root.children.size()) + " supporting subclaims");
    auto bad = prove_sample("memory/shared_unsafe.arch", "memory/protection.resolute");
    v.require(bad.size() == 1 && !bad[0].first->proven, "unsafe model proven");
    if (!v.ok) return v;
    const auto& kids = bad[0].second.root.children;
    v.require(kids.size() == 1 && !kids[0].proven && kids[0].args == std::vector<std::string>{"Board.Logger"},
              "failed subclaim not identified");
    if (v.ok) v.detail = "clause 2 with 3 subclaims; flipped Logger identified";
    return v;
}

Verdict stdlib_bound() {
    Verdict v;
    Analysis a = test::analyze(test::bindings_model(), "b(l : component, p : component) <= ** ** bound(l, p)\n");
    ProofContext ctx(a.model, a.library);
    int checked = 0;
    for (int mask = 0; mask < 8; ++mask) {
        for (int j = 0; j < 4; ++j) {
            std::string l = "Host.L" + std::to_string(mask);
            std::string p = std::string("Host.") + test::kBindingTargets[j];
            Goal g = make_goal(a.library, "b",
                               {Value(test::component(a.model, l)), Value(test::component(a.model, p))});
            ProofPtr r = prove(g, ctx);
            replays.add(*r, g, ctx);
            bool expected = j < 3 && (mask & (1 << j));
            v.require(r->proven == expected, "bound(" + l + ", " + p + ")");
            ++checked;
        }
    }
    if (v.ok) v.detail = std::to_string(checked) + " (binding set, target) pairs";
    return v;
}

Verdict oracle() {
    Verdict v;
    randprog::Generator gen(kOracleSeed);
    std::size_t replayed = 0;
    auto t0 = Clock::now();
    for (int i = 0; i < kOracleInstances && v.ok; ++i) {
        std::string diff = randprog::check(gen.next(), &replayed);
        v.require(diff.empty(), "instance " + std::to_string(i) + ": " + diff);
    }
    double elapsed = ms_since(t0);
    replays.checked += replayed;
    v.require(elapsed < kOracleLimitMs, "took " + std::to_string(elapsed) + " ms");
    if (v.ok) {
        v.detail = std::to_string(kOracleInstances) + " instances agree, " + std::to_string(static_cast<int>(elapsed)) +
                   " ms";
    }
    return v;
}

Verdict sequent_rules() {
    Verdict v;
    Analysis a = test::analyze("system S { }", R"(
ev(x : int) <= ** "ev" ** x > 3
va(_s : system) <= ** "va" ** forall (t : thread). false
ee(_s : system) <= ** "ee" ** exists (t : thread). true
disj(x : int) <= ** "disj" ** x > 0 or x > -5
imp(x : int) <= ** "imp" ** x > 100 => x > 1000
)");
    ProofContext ctx(a.model, a.library);
    auto run_goal = [&](const std::string& c, Value arg) {
        Goal g = make_goal(a.library, c, {arg});
        ProofPtr p = prove(g, ctx);
        replays.add(*p, g, ctx);
        return p;
    };
    for (int x = 0; x < 8; ++x) v.require(run_goal("ev", x)->proven == (x > 3), "eval leaf at " + std::to_string(x));
    ProofPtr va = run_goal("va", Value(a.model.root()));
    v.require(va->proven && va->children[0]->children.empty(), "vacuous forall");
    v.require(!run_goal("ee", Value(a.model.root()))->proven, "empty exists");
    v.require(run_goal("disj", 1)->children[0]->branch == 0, "left disjunct not chosen");
    v.require(run_goal("disj", -1)->children[0]->branch == 1, "right disjunct not chosen");
    ProofPtr imp = run_goal("imp", 1);
    v.require(imp->proven && imp->children[0]->children.empty(), "false antecedent");
    if (v.ok) v.detail = "eval, forall, exists, or, implies";
    return v;
}

Verdict cycles() {
    Verdict v;
    auto t0 = Clock::now();
    auto cases = prove_sample("cycle/rings.arch", "uav/decrypt.resolute");
    double elapsed = ms_since(t0);
    v.require(cases.size() == 2, "expected two directives");
    if (!v.ok) return v;
    v.require(cases[0].first->proven, "guarded ring not proven");
    v.require(!cases[1].first->proven, "open ring proven");
    v.require(elapsed < kCycleLimitMs, "took " + std::to_string(elapsed) + " ms");
    if (v.ok) v.detail = "guarded ring proven, open ring failed, " + std::to_string(static_cast<int>(elapsed)) + " ms";
    return v;
}

Verdict scale() {
    Verdict v;
    auto t0 = Clock::now();
    Analysis a = test::analyze(test::pipelines_model(5, 7), test::read_sample("uav/decrypt.resolute"));
    ProofContext ctx(a.model, a.library);
    std::string verdicts;
    for (const auto& g : a.goals) {
        ProofPtr p = prove(g, ctx);
        verdicts += p->proven ? '+' : '!';
        std::string text = render_text(build_case(*p, g, ctx));
        v.require(!text.empty(), "empty case");
    }
    double elapsed = ms_since(t0);
    for (const auto& g : a.goals) replays.add(*prove(g, ctx), g, ctx);
    std::size_t threads = a.model.components_of(ComponentKind::Thread).size();
    v.require(threads == 35, std::to_string(threads) + " threads");
    v.require(verdicts == "+!+!+", "verdicts " + verdicts + ", expected +!+!+");
    v.require(elapsed < kScaleLimitMs, "took " + std::to_string(elapsed) + " ms");
    if (v.ok) {
        v.detail = "35 threads, " + std::to_string(a.model.connections().size()) + " connections, " +
                   std::to_string(static_cast<int>(elapsed)) + " ms";
    }
    return v;
}

Verdict replay() {
    Verdict v;
    v.require(replays.checked > 0, "no proven trees collected");
    v.require(replays.rejected.empty(), replays.rejected.empty() ? "" : replays.rejected.front());
    if (v.ok) v.detail = std::to_string(replays.checked) + " proven trees replayed";
    return v;
}

Verdict determinism() {
    Verdict v;
    const std::pair<const char*, const char*> runs[] = {{"uav/secure.arch", "uav/decrypt.resolute"},
                                                        {"uav/bypass.arch", "uav/decrypt.resolute"},
                                                        {"memory/shared.arch", "memory/protection.resolute"},
                                                        {"memory/shared_unsafe.arch", "memory/protection.resolute"}};
    for (auto [model, lib] : runs) {
        for (OutputFormat f : {OutputFormat::Text, OutputFormat::Json}) {
            CliRun a = cli(model, lib, f);
            CliRun b = cli(model, lib, f);
            v.require(a.out == b.out && a.code == b.code, std::string(model) + " output differs between runs");
        }
    }
    if (v.ok) v.detail = "text and JSON byte-identical across reruns";
    return v;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"dual-model scenario", dual_model}, {"memory protection", memory_example},
        {"stdlib bound", stdlib_bound},      {"logic oracle", oracle},
        {"sequent rules", sequent_rules},    {"cycle termination", cycles},
        {"scale", scale},                    {"replay soundness", replay},
        {"determinism", determinism},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, fn] : criteria) {
        ++n;
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failed += !v.ok;
        std::printf("%s %d %s: %s\n", v.ok ? "PASS" : "FAIL", n, name, v.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
