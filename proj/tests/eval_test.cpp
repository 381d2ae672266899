#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "resolute/eval.hpp"
#include "resolute/external.hpp"
#include "support.hpp"

using namespace resolute;

namespace {

struct Fixture {
    ModelInstance model;
    TypedLibrary lib;

    Fixture(const std::string& model_src, const std::string& lib_src)
        : model(parse_model(model_src)), lib(test::library(lib_src)) {}

    Value call(const std::string& fn, std::vector<Value> args, EvalOptions options = {}) const {
        const FunDef* f = lib.function(fn);
        Evaluator ev(model, lib, std::move(options));
        return ev.evaluate(*f->body, ev.bind_params(f->params, args));
    }

    ComponentRef comp(const std::string& name) const { return test::component(model, name); }
    ConnectionRef conn(const std::string& name) const { return std::get<ConnectionRef>(*model.find(name)); }
};

const char* kDelays = R"(
system Sys {
  process P {
  }
  process Q {
  }
  thread A {
    property Delay = 2
    property Deployment_Properties::Actual_Processor_Binding = [ref P]
  }
  thread B {
    property Delay = 3
    property Deployment_Properties::Actual_Memory_Binding = [ref Q, ref P]
  }
  thread C {
    property Delay = 99
  }
  thread D {
    property Delay = 40
    property Deployment_Properties::Actual_Processor_Binding = [ref Q]
  }
}
)";

const char* kDelayLib = R"(
thread_message_delay(t : thread) : int = property(t, "Delay")

message_delay(p : process) : int =
  sum({thread_message_delay(t) for (t : thread) if bound(t, p)})
)";

}  // namespace

TEST(Eval, MessageDelayMatchesHandEnumeration) {
    Fixture fx(kDelays, kDelayLib);
    auto p = fx.comp("Sys.P");

    // Independent oracle: walk the threads and their binding lists directly.
    std::int64_t expected = 0;
    for (auto t : fx.model.components_of(ComponentKind::Thread)) {
        const auto& props = fx.model.component(t).properties;
        bool bound = false;
        for (const auto& [name, value] : props) {
            if (name.starts_with("Deployment_Properties::Actual_")) {
                for (const auto& item : std::get<PropertyValue::List>(value.data)) {
                    bound = bound || std::get<ComponentRef>(item.data) == p;
                }
            }
        }
        if (bound) expected += std::get<std::int64_t>(props.at("Delay").data);
    }
    ASSERT_EQ(expected, 5);
    EXPECT_EQ(fx.call("message_delay", {p}), Value(expected));
    EXPECT_EQ(fx.call("message_delay", {fx.comp("Sys.Q")}), Value(std::int64_t{43}));
}

TEST(Eval, EmptySumIsIntZero) {
    Fixture fx("system S { }", R"(
        e() : int = sum({})
        r() : real = sum({x * 1.5 for (x in {1}) if false})
    )");
    EXPECT_EQ(fx.call("e", {}), Value(std::int64_t{0}));
    EXPECT_EQ(fx.call("r", {}), Value(0.0));
}

TEST(Eval, MemberOfBindingList) {
    Fixture fx(R"(
system S {
  memory M { }
  process L {
    property Deployment_Properties::Actual_Memory_Binding = [ref M]
  }
}
)",
               R"(probe(l : component, m : component) : bool =
                    member(m, property(l, Deployment_Properties::Actual_Memory_Binding)))");
    EXPECT_EQ(fx.call("probe", {fx.comp("S.L"), fx.comp("S.M")}), Value(true));
    EXPECT_EQ(fx.call("probe", {fx.comp("S.L"), fx.comp("S.L")}), Value(false));
}

TEST(Eval, ParentOfDestination) {
    Fixture fx(test::read_sample("uav/secure.arch"),
               "dst(c : connection) : component = parent(destination(c))\n"
               "src(c : connection) : component = parent(source(c))\n"
               "up(x : component) : component = parent(x)");
    EXPECT_EQ(fx.call("dst", {fx.conn("UAV.Flight.c_plain")}), Value(fx.comp("UAV.Flight.MC")));
    EXPECT_EQ(fx.call("src", {fx.conn("UAV.Flight.c_sensor")}), Value(fx.comp("UAV.Flight")));
    EXPECT_EQ(fx.call("up", {fx.comp("UAV.Flight.MC")}), Value(fx.comp("UAV.Flight")));
    try {
        fx.call("up", {fx.comp("UAV")});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("root component"), std::string::npos);
    }
}

TEST(Eval, UnionIdentityAndSetLaws) {
    Fixture fx("system S { }", R"(
        u(a : {int}, b : {int}) : {int} = union(a, b)
        law_member(x : int, a : {int}, b : {int}) : bool =
          member(x, union(a, b)) = (member(x, a) or member(x, b))
        law_size(a : {int}, b : {int}) : bool = size(union(a, b)) <= size(a) + size(b)
    )");
    std::mt19937 rng(7);
    auto random_set = [&] {
        std::vector<Value> items;
        int n = static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) items.emplace_back(static_cast<std::int64_t>(rng() % 8));
        return SetValue(items);
    };
    for (int round = 0; round < 200; ++round) {
        SetValue a = random_set(), b = random_set();
        EXPECT_EQ(fx.call("u", {a, SetValue()}), Value(a));
        for (std::int64_t x = 0; x < 8; ++x) EXPECT_EQ(fx.call("law_member", {x, a, b}), Value(true));
        EXPECT_EQ(fx.call("law_size", {a, b}), Value(true));
    }
}

TEST(Eval, SetsAreDuplicateFreeAndOrdered) {
    Fixture fx("system S { thread A { } thread B { } thread C { } }", R"(
        names() : {string} = {name(t) for (t : thread)}
        dup() : {int} = {3, 1, 3, 2, 1}
        same() : bool = {1, 2} = {2, 1}
    )");
    Value names = fx.call("names", {});
    std::vector<Value> expected{Value("A"), Value("B"), Value("C")};
    EXPECT_EQ(names.as<SetValue>().items(), expected);
    std::vector<Value> dedup{Value(3), Value(1), Value(2)};
    EXPECT_EQ(fx.call("dup", {}).as<SetValue>().items(), dedup);
    EXPECT_EQ(fx.call("same", {}), Value(true));
}

TEST(Eval, ShortCircuitWithDebugProbe) {
    Fixture fx("system S { }", R"(
        a() : bool = false and debug("rhs", true)
        b() : bool = true or debug("rhs", false)
        c() : bool = true and debug("rhs", true)
    )");
    std::vector<std::string> lines;
    EvalOptions opt;
    opt.debug_sink = [&](const std::string& s) { lines.push_back(s); };
    EXPECT_EQ(fx.call("a", {}, opt), Value(false));
    EXPECT_EQ(fx.call("b", {}, opt), Value(true));
    EXPECT_TRUE(lines.empty());
    EXPECT_EQ(fx.call("c", {}, opt), Value(true));
    EXPECT_EQ(lines, std::vector<std::string>{"rhs: true"});
}

TEST(Eval, MemoryBoundShortCircuits) {
    // Without the short circuit the member() conjunct would hit a missing property.
    Fixture fx("system S { memory M { } process L { } }", "");
    EXPECT_EQ(fx.call("memory_bound", {fx.comp("S.L"), fx.comp("S.M")}), Value(false));
}

TEST(Eval, PropertyMissing) {
    Fixture fx("system S { thread T { } }", "p(t : thread) : int = property(t, \"Period\")");
    try {
        fx.call("p", {fx.comp("S.T")});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("use has_property first"), std::string::npos);
    }
}

TEST(Eval, ArithmeticAndComparison) {
    Fixture fx("system S { }", R"(
        div(a : int, b : int) : int = a / b
        add(a : int, b : int) : int = a + b
        mix(a : int, b : real) : real = a + b
        eqr(a : real, b : real) : bool = a = b
        lt(a : string, b : string) : bool = a < b
        neg(a : int) : int = -a
    )");
    EXPECT_EQ(fx.call("div", {7, 2}), Value(3));
    EXPECT_EQ(fx.call("div", {-7, 2}), Value(-3));
    EXPECT_THROW(fx.call("div", {1, 0}), EvalError);
    EXPECT_THROW(fx.call("add", {std::numeric_limits<std::int64_t>::max(), std::int64_t{1}}), EvalError);
    EXPECT_THROW(fx.call("neg", {std::numeric_limits<std::int64_t>::min()}), EvalError);
    EXPECT_EQ(fx.call("mix", {1, 0.5}), Value(1.5));
    EXPECT_EQ(fx.call("eqr", {0.1 + 0.2, 0.3}), Value(false));
    EXPECT_EQ(fx.call("eqr", {0.25, 0.25}), Value(true));
    EXPECT_EQ(fx.call("lt", {"abc", "abd"}), Value(true));
}

TEST(Eval, SumOverNonNumericSet) {
    Fixture fx("system S { thread T { property Tags = [\"a\", \"b\"] } }", "s(t : thread) : int = sum(property(t, \"Tags\"))");
    try {
        fx.call("s", {fx.comp("S.T")});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("sum over a non-numeric set"), std::string::npos);
    }
}

TEST(Eval, DynamicPropertyCheckedAtBinding) {
    Fixture fx("system S { thread T { property Period = \"fast\" } }", "p(t : thread) : int = property(t, \"Period\")\n"
                                                                     "q(t : thread) : bool = p(t) > 0");
    EXPECT_THROW(fx.call("q", {fx.comp("S.T")}), EvalError);
}

TEST(Eval, RecursionAndDepthLimit) {
    Fixture fx("system S { }", R"(
        fact(n : int) : int = if n <= 1 then 1 else n * fact(n - 1)
        loop(n : int) : int = loop(n + 1)
        const ten : int = 10
        tenfact() : int = fact(ten)
    )");
    EXPECT_EQ(fx.call("fact", {10}), Value(3628800));
    EXPECT_EQ(fx.call("tenfact", {}), Value(3628800));
    try {
        fx.call("loop", {0});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("call depth limit"), std::string::npos);
    }
}

TEST(Eval, Determinism) {
    Fixture fx(kDelays, kDelayLib + std::string("all() : {int} = {message_delay(p) for (p : process)}"));
    Value first = fx.call("all", {});
    for (int i = 0; i < 5; ++i) EXPECT_EQ(fx.call("all", {}), first);
}

class External : public ::testing::Test {
protected:
    std::filesystem::path dir;

    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("resolute_ext_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
};

TEST_F(External, ConstantOracle) {
    Fixture fx("system S { }", R"(
        external sched_ok(s : system) : bool = "echo true"
        check(s : system) : bool = sched_ok(s)
    )");
    EXPECT_EQ(fx.call("check", {fx.model.root()}), Value(true));
}

TEST_F(External, FailingCommand) {
    Fixture fx("system S { }", R"(
        external broken(s : system) : bool = "echo oops >&2; exit 1"
        check(s : system) : bool = broken(s)
    )");
    try {
        fx.call("check", {fx.model.root()});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("echo oops >&2; exit 1"), std::string::npos) << e.message();
        EXPECT_NE(e.message().find("exited with status 1"), std::string::npos) << e.message();
    }
}

TEST_F(External, RecordsStdinExactly) {
    auto record = dir / "stdin.txt";
    Fixture fx("system Sys { process Proc { thread T { } } }",
               "external rec(t : thread, n : int) : bool = \"cat > '" + record.string() +
                   "'; echo true\"\ncheck(t : thread) : bool = rec(t, 5)");
    EXPECT_EQ(fx.call("check", {fx.comp("Sys.Proc.T")}), Value(true));
    std::ifstream in(record, std::ios::binary);
    std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(got, "[\"Sys.Proc.T\",5]\n");
}

TEST_F(External, DecodesTypedResults) {
    Fixture fx("system Sys { thread A { } thread B { } }", R"(
        external pick(s : system) : {thread} = "echo noise; echo '[\"Sys.B\", \"Sys.A\"]'; echo"
        external real_out(s : system) : real = "echo 2"
        external wrong(s : system) : int = "echo '\"x\"'"
        external junk(s : system) : int = "echo not-json"
        a(s : system) : {thread} = pick(s)
        b(s : system) : real = real_out(s)
        c(s : system) : int = wrong(s)
        d(s : system) : int = junk(s)
    )");
    std::vector<Value> picked{Value(fx.comp("Sys.B")), Value(fx.comp("Sys.A"))};
    EXPECT_EQ(fx.call("a", {fx.model.root()}).as<SetValue>().items(), picked);
    EXPECT_EQ(fx.call("b", {fx.model.root()}), Value(2.0));
    EXPECT_THROW(fx.call("c", {fx.model.root()}), EvalError);
    try {
        fx.call("d", {fx.model.root()});
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("unparseable"), std::string::npos);
    }
}

TEST_F(External, RunsAfreshEachCall) {
    auto counter = dir / "count.txt";
    Fixture fx("system S { }", "external tick(s : system) : bool = \"echo x >> '" + counter.string() +
                                   "'; echo true\"\ncheck(s : system) : bool = tick(s) and tick(s)");
    EXPECT_EQ(fx.call("check", {fx.model.root()}), Value(true));
    std::ifstream in(counter);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) ++n;
    EXPECT_EQ(n, 2);
}

TEST_F(External, Timeout) {
    Fixture fx("system S { }", "external slow(s : system) : bool = \"sleep 5; echo true\"\n"
                               "check(s : system) : bool = slow(s)");
    EvalOptions opt;
    opt.external_timeout = std::chrono::milliseconds(200);
    auto start = std::chrono::steady_clock::now();
    try {
        fx.call("check", {fx.model.root()}, opt);
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_NE(e.message().find("timed out"), std::string::npos);
    }
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
}

TEST(ExternalTimeout, EnvironmentOverride) {
    ::setenv("RESOLUTE_EXTERNAL_TIMEOUT_SECS", "2.5", 1);
    EXPECT_EQ(default_external_timeout(), std::chrono::milliseconds(2500));
    ::unsetenv("RESOLUTE_EXTERNAL_TIMEOUT_SECS");
    EXPECT_EQ(default_external_timeout(), std::chrono::seconds(30));
}
