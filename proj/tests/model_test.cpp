#include <gtest/gtest.h>

#include "resolute/model.hpp"
#include "support.hpp"

using namespace resolute;

namespace {

const char* kSmall = R"(
system Sys {
  processor CPU {
  }
  process Proc {
    in port cmd
    thread T {
      in port i
      out port o
      property Period = 10
      property Bound = [ref CPU]
    }
    thread U {
      in port i
    }
    connection c1 : cmd -> T.i
    connection c2 : T.o -> U.i { property Latency = 2.5 }
    resolute {
      prove some_claim(T, 3)
    }
  }
}
)";

}  // namespace

TEST(Model, ParsesTreeInPreOrder) {
    ModelInstance m = parse_model(kSmall);
    ASSERT_EQ(m.component_count(), 5u);
    EXPECT_EQ(m.component(m.root()).qualified_name, "Sys");
    EXPECT_EQ(m.component(ComponentRef{1}).qualified_name, "Sys.CPU");
    EXPECT_EQ(m.component(ComponentRef{2}).qualified_name, "Sys.Proc");
    EXPECT_EQ(m.component(ComponentRef{3}).qualified_name, "Sys.Proc.T");
    EXPECT_EQ(m.component(ComponentRef{4}).qualified_name, "Sys.Proc.U");
    EXPECT_EQ(m.components_of(ComponentKind::Thread).size(), 2u);
    EXPECT_EQ(m.components_of(std::nullopt).size(), 5u);
    EXPECT_EQ(m.connection_count(), 2u);
    EXPECT_FALSE(m.component(m.root()).parent.has_value());
}

TEST(Model, ConnectionEndpointsResolveToFeatures) {
    ModelInstance m = parse_model(kSmall);
    const Connection& c2 = m.connection(ConnectionRef{1});
    EXPECT_EQ(c2.qualified_name, "Sys.Proc.c2");
    EXPECT_EQ(m.feature(c2.source).qualified_name, "Sys.Proc.T.o");
    EXPECT_EQ(m.owner_of(c2.destination).qualified_name, "Sys.Proc.U");
    EXPECT_EQ(std::get<double>(c2.properties.at("Latency").data), 2.5);
}

TEST(Model, RefPropertiesResolveLexically) {
    ModelInstance m = parse_model(kSmall);
    const auto& t = m.component(test::component(m, "Sys.Proc.T"));
    const auto& list = std::get<PropertyValue::List>(t.properties.at("Bound").data);
    ASSERT_EQ(list.size(), 1u);
    EXPECT_EQ(std::get<ComponentRef>(list[0].data), test::component(m, "Sys.CPU"));
}

TEST(Model, ProveDirectivesKeepOwnerAndText) {
    ModelInstance m = parse_model(kSmall);
    ASSERT_EQ(m.prove_directives().size(), 1u);
    const auto& d = m.prove_directives()[0];
    EXPECT_EQ(d.component, test::component(m, "Sys.Proc"));
    EXPECT_EQ(d.application_text(), "some_claim(T, 3)");
}

TEST(Model, ResolveReference) {
    ModelInstance m = parse_model(kSmall);
    auto proc = test::component(m, "Sys.Proc");
    std::vector<std::string> path{"T", "o"};
    auto ref = resolve_reference(m, proc, path);
    EXPECT_EQ(m.qualified_name(ref), "Sys.Proc.T.o");
    std::vector<std::string> self{"this"};
    EXPECT_EQ(m.qualified_name(resolve_reference(m, proc, self)), "Sys.Proc");
    std::vector<std::string> ghost{"Ghost"};
    try {
        resolve_reference(m, proc, ghost);
        FAIL();
    } catch (const ResolveError& e) {
        EXPECT_NE(std::string(e.what()).find("cannot resolve 'Ghost' in component 'Sys.Proc'"), std::string::npos);
    }
}

TEST(Model, InstanceQueries) {
    ModelInstance m = parse_model(kSmall);
    EXPECT_EQ(instances_of(m, *InstanceQuery::parse("thread")).size(), 2u);
    EXPECT_EQ(instances_of(m, *InstanceQuery::parse("connection")).size(), 2u);
    EXPECT_EQ(instances_of(m, *InstanceQuery::parse("component")).size(), 5u);
    EXPECT_FALSE(InstanceQuery::parse("widget").has_value());
}

TEST(Model, RenderIsAFixedPoint) {
    for (const char* src : {kSmall}) {
        ModelInstance m = parse_model(src);
        std::string once = render_model(m);
        ModelInstance again = parse_model(once);
        EXPECT_TRUE(structurally_equal(m, again));
        EXPECT_EQ(render_model(again), once);
    }
    for (const char* rel : {"uav/secure.arch", "uav/bypass.arch", "memory/shared.arch", "cycle/rings.arch"}) {
        ModelInstance m = parse_model(test::read_sample(rel), rel);
        ModelInstance again = parse_model(render_model(m));
        EXPECT_TRUE(structurally_equal(m, again)) << rel;
    }
}

TEST(Model, ThirtyFiveThreads) {
    ModelInstance m = parse_model(test::pipelines_model(5, 7));
    EXPECT_EQ(m.components_of(ComponentKind::Thread).size(), 35u);
    EXPECT_EQ(m.components_of(ComponentKind::Process).size(), 5u);
    EXPECT_EQ(m.connection_count(), 35u);
    EXPECT_EQ(m.prove_directives().size(), 5u);
}

TEST(Model, Errors) {
    EXPECT_THROW(parse_model("system S { thread T { } thread T { } }"), ResolveError);
    EXPECT_THROW(parse_model("system S { in port p in port p }"), ResolveError);
    EXPECT_THROW(parse_model("system S { connection c : a -> b }"), ResolveError);
    EXPECT_THROW(parse_model("system S { thread T { in port i } connection c : T -> T.i }"), ResolveError);
    EXPECT_THROW(parse_model("system S { property P = ref Nowhere }"), ResolveError);
    EXPECT_THROW(parse_model("system S { property P = [1, \"x\"] }"), ResolveError);
    EXPECT_THROW(parse_model("system S { widget W { } }"), ParseError);
    EXPECT_THROW(parse_model("system S { thread T { }"), ParseError);
    EXPECT_THROW(parse_model("system S { } system R { }"), ParseError);
}

TEST(Model, ParseErrorCarriesLocation) {
    try {
        parse_model("system S {\n  thread T {\n    widget\n  }\n}\n", "m.arch");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 3);
        EXPECT_EQ(e.location().column, 5);
        EXPECT_NE(std::string(e.what()).find("m.arch:3:5"), std::string::npos);
    }
}
