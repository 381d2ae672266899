#include "resolute/model.hpp"

#include "resolute/lexer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>
#include <stdexcept>

namespace resolute {

namespace {

constexpr std::array<std::string_view, kComponentKindCount> kKindNames = {
    "system", "process", "thread", "processor", "memory", "bus", "device"};

std::string join_path(std::span<const std::string> path) {
    std::string out;
    for (const auto& seg : path) {
        if (!out.empty()) out += ".";
        out += seg;
    }
    return out;
}

}  // namespace

std::string_view to_string(ComponentKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<ComponentKind> parse_component_kind(std::string_view word) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == word) return static_cast<ComponentKind>(i);
    }
    return std::nullopt;
}

std::string ProveDirective::application_text() const {
    std::string out = claim + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].text;
    }
    return out + ")";
}

std::span<const ComponentRef> ModelInstance::components_of(std::optional<ComponentKind> kind) const {
    if (!kind) return all_components_;
    return by_kind_[static_cast<std::size_t>(*kind)];
}

const std::string& ModelInstance::qualified_name(const ElementRef& ref) const {
    return std::visit(
        [this](const auto& r) -> const std::string& {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ComponentRef>) return component(r).qualified_name;
            if constexpr (std::is_same_v<T, FeatureRef>) return feature(r).qualified_name;
            if constexpr (std::is_same_v<T, ConnectionRef>) return connection(r).qualified_name;
        },
        ref);
}

std::optional<ElementRef> ModelInstance::find(std::string_view qualified_name) const {
    auto it = by_name_.find(std::string(qualified_name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

void ModelInstance::build_indices() {
    all_components_.clear();
    for (auto& v : by_kind_) v.clear();
    connection_refs_.clear();
    by_name_.clear();
    for (std::uint32_t i = 0; i < components_.size(); ++i) {
        ComponentRef ref{i};
        all_components_.push_back(ref);
        by_kind_[static_cast<std::size_t>(components_[i].kind)].push_back(ref);
        by_name_.emplace(components_[i].qualified_name, ref);
    }
    for (std::uint32_t i = 0; i < features_.size(); ++i) {
        by_name_.emplace(features_[i].qualified_name, FeatureRef{i});
    }
    for (std::uint32_t i = 0; i < connections_.size(); ++i) {
        connection_refs_.push_back(ConnectionRef{i});
        by_name_.emplace(connections_[i].qualified_name, ConnectionRef{i});
    }
}

std::optional<InstanceQuery> InstanceQuery::parse(std::string_view name) {
    if (name == "component") return InstanceQuery{Class::Component, std::nullopt};
    if (name == "connection") return InstanceQuery{Class::Connection, std::nullopt};
    if (auto kind = parse_component_kind(name)) return InstanceQuery{Class::Component, kind};
    return std::nullopt;
}

std::vector<ElementRef> instances_of(const ModelInstance& model, InstanceQuery query) {
    std::vector<ElementRef> out;
    if (query.cls == InstanceQuery::Class::Connection) {
        for (auto c : model.connections()) out.emplace_back(c);
    } else {
        for (auto c : model.components_of(query.kind)) out.emplace_back(c);
    }
    return out;
}

ElementRef resolve_reference(const ModelInstance& model, ComponentRef context,
                             std::span<const std::string> path, const SourceLocation& loc) {
    if (path.empty()) throw ResolveError(loc, "empty reference path");
    ComponentRef current = context;
    std::size_t start = 0;
    if (path[0] == "this") start = 1;
    for (std::size_t i = start; i < path.size(); ++i) {
        const auto& seg = path[i];
        const Component& comp = model.component(current);
        bool last = i + 1 == path.size();
        std::optional<ComponentRef> sub;
        for (auto s : comp.subcomponents) {
            if (model.component(s).name == seg) {
                sub = s;
                break;
            }
        }
        if (sub) {
            current = *sub;
            continue;
        }
        for (auto f : comp.features) {
            if (model.feature(f).name == seg) {
                if (!last) {
                    throw ResolveError(loc, "'" + seg + "' is a feature of component '" + comp.qualified_name +
                                                "' and has no members");
                }
                return f;
            }
        }
        for (auto c : comp.connections) {
            if (model.connection(c).name == seg) {
                if (!last) {
                    throw ResolveError(loc, "'" + seg + "' is a connection of component '" +
                                                comp.qualified_name + "' and has no members");
                }
                return c;
            }
        }
        throw ResolveError(loc, "cannot resolve '" + seg + "' in component '" + comp.qualified_name + "'");
    }
    return current;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct RawValue {
    enum class Tag { Literal, Ref, List } tag = Tag::Literal;
    PropertyValue literal;
    std::vector<std::string> path;
    std::vector<RawValue> items;
    SourceLocation loc;
};

struct RawProperty {
    std::string name;
    RawValue value;
    SourceLocation loc;
};

struct RawConnection {
    std::string name;
    std::vector<std::string> source;
    std::vector<std::string> destination;
    std::vector<RawProperty> properties;
    SourceLocation loc;
};

struct RawPort {
    std::string name;
    PortDirection direction;
    SourceLocation loc;
};

struct RawProve {
    std::string claim;
    std::vector<ProveArgument> args;
    SourceLocation loc;
};

struct RawComponent {
    ComponentKind kind;
    std::string name;
    SourceLocation loc;
    std::vector<RawPort> ports;
    std::vector<RawComponent> subcomponents;
    std::vector<RawConnection> connections;
    std::vector<RawProperty> properties;
    std::vector<RawProve> proves;
};

const std::set<std::string, std::less<>> kModelKeywords = {
    "in",   "out",  "port",  "connection", "property", "resolute", "prove",  "ref",    "true",  "false",
    "this", "system", "process", "thread", "processor", "memory", "bus", "device",
};

class ModelParser {
public:
    explicit ModelParser(TokenStream& ts) : ts_(ts) {}

    RawComponent parse_root() {
        if (ts_.at_end()) ts_.fail("expected a top-level component declaration");
        RawComponent root = parse_component();
        if (!ts_.at_end()) ts_.fail("only one top-level component is allowed; found " + describe(ts_.peek()));
        return root;
    }

private:
    TokenStream& ts_;

    std::string expect_name(std::string_view what) {
        const Token& t = ts_.expect_kind(TokenKind::Ident, what);
        if (kModelKeywords.count(t.text)) ts_.fail_at(t, "reserved word '" + t.text + "' cannot be used as a name");
        return t.text;
    }

    RawComponent parse_component() {
        const Token& kw = ts_.peek();
        auto kind = kw.kind == TokenKind::Ident ? parse_component_kind(kw.text) : std::nullopt;
        if (!kind) ts_.fail("expected a component kind (system, process, thread, processor, memory, bus, device)");
        ts_.next();
        RawComponent comp;
        comp.kind = *kind;
        comp.loc = kw.loc;
        comp.name = expect_name("component name");
        ts_.expect_punct("{");
        while (!ts_.peek().is_punct("}")) {
            if (ts_.at_end()) ts_.fail("unterminated component '" + comp.name + "'");
            parse_item(comp);
        }
        ts_.expect_punct("}");
        return comp;
    }

    void parse_item(RawComponent& comp) {
        const Token& t = ts_.peek();
        if (t.kind != TokenKind::Ident) ts_.fail("expected a component item but found " + describe(t));
        if (parse_component_kind(t.text)) {
            comp.subcomponents.push_back(parse_component());
        } else if (t.text == "in" || t.text == "out") {
            ts_.next();
            ts_.expect_ident_word("port");
            RawPort port;
            port.loc = ts_.peek().loc;
            port.direction = t.text == "in" ? PortDirection::In : PortDirection::Out;
            port.name = expect_name("port name");
            comp.ports.push_back(std::move(port));
        } else if (t.text == "connection") {
            ts_.next();
            RawConnection conn;
            conn.loc = ts_.peek().loc;
            conn.name = expect_name("connection name");
            ts_.expect_punct(":");
            conn.source = parse_path();
            ts_.expect_punct("->");
            conn.destination = parse_path();
            if (ts_.accept_punct("{")) {
                while (!ts_.accept_punct("}")) {
                    ts_.expect_ident_word("property");
                    conn.properties.push_back(parse_property());
                }
            }
            comp.connections.push_back(std::move(conn));
        } else if (t.text == "property") {
            ts_.next();
            comp.properties.push_back(parse_property());
        } else if (t.text == "resolute") {
            ts_.next();
            ts_.expect_punct("{");
            while (!ts_.accept_punct("}")) {
                ts_.expect_ident_word("prove");
                comp.proves.push_back(parse_prove());
            }
        } else {
            ts_.fail("expected a component item but found " + describe(t));
        }
    }

    std::vector<std::string> parse_path() {
        std::vector<std::string> path;
        const Token& first = ts_.expect_kind(TokenKind::Ident, "a name");
        path.push_back(first.text);
        while (ts_.accept_punct(".")) {
            path.push_back(ts_.expect_kind(TokenKind::Ident, "a name").text);
        }
        return path;
    }

    std::string parse_property_name() {
        std::string name = ts_.expect_kind(TokenKind::Ident, "property name").text;
        while (ts_.accept_punct("::")) {
            name += "::" + ts_.expect_kind(TokenKind::Ident, "property name").text;
        }
        return name;
    }

    RawProperty parse_property() {
        RawProperty p;
        p.loc = ts_.peek().loc;
        p.name = parse_property_name();
        ts_.expect_punct("=");
        p.value = parse_value();
        return p;
    }

    std::optional<PropertyValue> parse_literal() {
        const Token& t = ts_.peek();
        bool negative = false;
        if (t.is_punct("-") && (ts_.peek(1).kind == TokenKind::Int || ts_.peek(1).kind == TokenKind::Real)) {
            negative = true;
            ts_.next();
        }
        const Token& v = ts_.peek();
        switch (v.kind) {
            case TokenKind::String:
                if (negative) break;
                ts_.next();
                return PropertyValue{v.text};
            case TokenKind::Int: {
                ts_.next();
                std::string text = (negative ? "-" : "") + v.text;
                try {
                    std::size_t used = 0;
                    long long x = std::stoll(text, &used);
                    return PropertyValue{static_cast<std::int64_t>(x)};
                } catch (const std::out_of_range&) {
                    ts_.fail_at(v, "integer literal out of range: " + text);
                }
            }
            case TokenKind::Real: {
                ts_.next();
                double x = std::stod(v.text);
                return PropertyValue{negative ? -x : x};
            }
            case TokenKind::Ident:
                if (negative) break;
                if (v.text == "true" || v.text == "false") {
                    ts_.next();
                    return PropertyValue{v.text == "true"};
                }
                break;
            default: break;
        }
        if (negative) ts_.fail("expected a number after '-'");
        return std::nullopt;
    }

    RawValue parse_value() {
        RawValue v;
        v.loc = ts_.peek().loc;
        if (auto lit = parse_literal()) {
            v.literal = std::move(*lit);
            return v;
        }
        if (ts_.accept_ident("ref")) {
            v.tag = RawValue::Tag::Ref;
            v.path = parse_path();
            return v;
        }
        if (ts_.accept_punct("[")) {
            v.tag = RawValue::Tag::List;
            v.items.push_back(parse_value());
            while (ts_.accept_punct(",")) v.items.push_back(parse_value());
            ts_.expect_punct("]");
            return v;
        }
        ts_.fail("expected a property value but found " + describe(ts_.peek()));
    }

    RawProve parse_prove() {
        RawProve p;
        p.loc = ts_.peek().loc;
        p.claim = ts_.expect_kind(TokenKind::Ident, "claim name").text;
        ts_.expect_punct("(");
        if (!ts_.peek().is_punct(")")) {
            do {
                ProveArgument arg;
                arg.loc = ts_.peek().loc;
                if (auto lit = parse_literal()) {
                    arg.literal = std::move(*lit);
                    arg.text = render_literal(*arg.literal);
                } else {
                    arg.path = parse_path();
                    arg.text = join_path(arg.path);
                }
                p.args.push_back(std::move(arg));
            } while (ts_.accept_punct(","));
        }
        ts_.expect_punct(")");
        return p;
    }

public:
    static std::string render_literal(const PropertyValue& v);
};

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string render_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string ModelParser::render_literal(const PropertyValue& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::string>) return escape_string(x);
            if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
            if constexpr (std::is_same_v<T, double>) return render_real(x);
            if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            return "?";
        },
        v.data);
}

}  // namespace detail

using namespace detail;

class ModelInstance::Builder {
public:
    ModelInstance build(const RawComponent& root) {
        add_component(root, std::nullopt, "");
        // Features are grouped by owner in component order.
        for (std::size_t i = 0; i < raws_.size(); ++i) {
            ComponentRef owner{static_cast<std::uint32_t>(i)};
            auto& comp = m_.components_[i];
            std::set<std::string> names;
            for (auto s : comp.subcomponents) names.insert(m_.components_[s.index].name);
            for (const auto& port : raws_[i]->ports) {
                if (!names.insert(port.name).second) {
                    throw ResolveError(port.loc, "duplicate name '" + port.name + "' in component '" +
                                                     comp.qualified_name + "'");
                }
                FeatureRef ref{static_cast<std::uint32_t>(m_.features_.size())};
                m_.features_.push_back(Feature{port.name, port.direction, owner, comp.qualified_name + "." + port.name});
                comp.features.push_back(ref);
            }
            for (const auto& conn : raws_[i]->connections) {
                if (!names.insert(conn.name).second) {
                    throw ResolveError(conn.loc, "duplicate name '" + conn.name + "' in component '" +
                                                     comp.qualified_name + "'");
                }
            }
        }
        for (std::size_t i = 0; i < raws_.size(); ++i) {
            ComponentRef owner{static_cast<std::uint32_t>(i)};
            for (const auto& conn : raws_[i]->connections) {
                Connection c;
                c.name = conn.name;
                c.owner = owner;
                c.qualified_name = m_.components_[i].qualified_name + "." + conn.name;
                c.source = endpoint(owner, conn.source, conn.loc);
                c.destination = endpoint(owner, conn.destination, conn.loc);
                if (c.source == c.destination) {
                    throw ResolveError(conn.loc, "connection '" + c.qualified_name +
                                                     "' has the same source and destination");
                }
                c.properties = properties(owner, conn.properties);
                ConnectionRef ref{static_cast<std::uint32_t>(m_.connections_.size())};
                m_.connections_.push_back(std::move(c));
                m_.components_[i].connections.push_back(ref);
            }
        }
        for (std::size_t i = 0; i < raws_.size(); ++i) {
            ComponentRef owner{static_cast<std::uint32_t>(i)};
            m_.components_[i].properties = properties(owner, raws_[i]->properties);
            for (const auto& p : raws_[i]->proves) {
                m_.directives_.push_back(ProveDirective{owner, p.claim, p.args, p.loc});
            }
        }
        m_.build_indices();
        return std::move(m_);
    }

private:
    ModelInstance m_;
    std::vector<const RawComponent*> raws_;

    ComponentRef add_component(const RawComponent& raw, std::optional<ComponentRef> parent,
                               const std::string& prefix) {
        ComponentRef ref{static_cast<std::uint32_t>(m_.components_.size())};
        Component c;
        c.name = raw.name;
        c.kind = raw.kind;
        c.parent = parent;
        c.qualified_name = prefix.empty() ? raw.name : prefix + "." + raw.name;
        m_.components_.push_back(std::move(c));
        raws_.push_back(&raw);
        std::set<std::string> seen;
        for (const auto& sub : raw.subcomponents) {
            if (!seen.insert(sub.name).second) {
                throw ResolveError(sub.loc, "duplicate name '" + sub.name + "' in component '" +
                                                m_.components_[ref.index].qualified_name + "'");
            }
            std::string qn = m_.components_[ref.index].qualified_name;
            ComponentRef child = add_component(sub, ref, qn);
            m_.components_[ref.index].subcomponents.push_back(child);
        }
        return ref;
    }

    FeatureRef endpoint(ComponentRef owner, const std::vector<std::string>& path, const SourceLocation& loc) {
        ElementRef r = resolve_partial(owner, path, loc);
        if (auto f = std::get_if<FeatureRef>(&r)) return *f;
        throw ResolveError(loc, "connection endpoint '" + join_path(path) + "' does not name a port");
    }

    // Connections may reference ports of subcomponents before those
    // components' connections are known, so resolve over components and
    // features only.
    ElementRef resolve_partial(ComponentRef context, const std::vector<std::string>& path,
                               const SourceLocation& loc) {
        ComponentRef current = context;
        std::size_t start = path[0] == "this" ? 1 : 0;
        for (std::size_t i = start; i < path.size(); ++i) {
            const Component& comp = m_.components_[current.index];
            bool found = false;
            for (auto s : comp.subcomponents) {
                if (m_.components_[s.index].name == path[i]) {
                    current = s;
                    found = true;
                    break;
                }
            }
            if (found) continue;
            for (auto f : comp.features) {
                if (m_.features_[f.index].name == path[i]) {
                    if (i + 1 != path.size()) {
                        throw ResolveError(loc, "'" + path[i] + "' is a feature of component '" +
                                                    comp.qualified_name + "' and has no members");
                    }
                    return f;
                }
            }
            throw ResolveError(loc, "cannot resolve '" + path[i] + "' in component '" + comp.qualified_name + "'");
        }
        return current;
    }

    // `ref` paths resolve lexically: the first segment is looked up among the
    // subcomponents of the enclosing component, then of each ancestor in turn,
    // and finally against the root's own name.
    ComponentRef resolve_ref(ComponentRef context, const std::vector<std::string>& path, const SourceLocation& loc) {
        std::optional<ComponentRef> start;
        std::size_t first = 1;
        if (path[0] == "this") {
            start = context;
        } else {
            for (std::optional<ComponentRef> scope = context; scope && !start;
                 scope = m_.components_[scope->index].parent) {
                for (auto s : m_.components_[scope->index].subcomponents) {
                    if (m_.components_[s.index].name == path[0]) {
                        start = s;
                        break;
                    }
                }
            }
            if (!start && m_.components_[0].name == path[0]) start = ComponentRef{0};
        }
        if (!start) {
            throw ResolveError(loc, "cannot resolve '" + path[0] + "' from component '" +
                                        m_.components_[context.index].qualified_name + "'");
        }
        ComponentRef current = *start;
        for (std::size_t i = first; i < path.size(); ++i) {
            const Component& comp = m_.components_[current.index];
            bool found = false;
            for (auto s : comp.subcomponents) {
                if (m_.components_[s.index].name == path[i]) {
                    current = s;
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw ResolveError(loc, "cannot resolve '" + path[i] + "' in component '" + comp.qualified_name +
                                            "' (ref values must name components)");
            }
        }
        return current;
    }

    PropertyValue value(ComponentRef context, const RawValue& raw) {
        switch (raw.tag) {
            case RawValue::Tag::Literal: return raw.literal;
            case RawValue::Tag::Ref: return PropertyValue{resolve_ref(context, raw.path, raw.loc)};
            case RawValue::Tag::List: {
                PropertyValue::List items;
                for (const auto& item : raw.items) {
                    items.push_back(value(context, item));
                    if (items.back().data.index() != items.front().data.index()) {
                        throw ResolveError(item.loc, "property list elements must all have the same type");
                    }
                }
                return PropertyValue{std::move(items)};
            }
        }
        return {};
    }

    PropertyMap properties(ComponentRef context, const std::vector<RawProperty>& raws) {
        PropertyMap out;
        for (const auto& p : raws) {
            if (out.count(p.name)) {
                throw ResolveError(p.loc, "duplicate property '" + p.name + "' in '" +
                                              m_.components_[context.index].qualified_name + "'");
            }
            out.emplace(p.name, value(context, p.value));
        }
        return out;
    }
};

ModelInstance parse_model(std::string_view source, const std::string& file_name) {
    TokenStream ts(tokenize(source, file_name));
    RawComponent root = ModelParser(ts).parse_root();
    return ModelInstance::Builder().build(root);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

class ModelRenderer {
public:
    explicit ModelRenderer(const ModelInstance& m) : m_(m) {}

    std::string render() {
        component(m_.root(), 0);
        return out_;
    }

private:
    const ModelInstance& m_;
    std::string out_;

    void line(int depth, const std::string& text) {
        out_.append(static_cast<std::size_t>(depth) * 2, ' ');
        out_ += text;
        out_ += '\n';
    }

    // Shortest path that re-resolves to `target` under lexical ref lookup.
    std::string ref_path(ComponentRef context, ComponentRef target) {
        std::vector<ComponentRef> chain;  // root .. target
        for (std::optional<ComponentRef> c = target; c; c = m_.component(*c).parent) chain.push_back(*c);
        std::reverse(chain.begin(), chain.end());

        auto lookup = [&](const std::vector<std::string>& path) -> std::optional<ComponentRef> {
            std::optional<ComponentRef> start;
            for (std::optional<ComponentRef> scope = context; scope && !start; scope = m_.component(*scope).parent) {
                for (auto s : m_.component(*scope).subcomponents) {
                    if (m_.component(s).name == path[0]) {
                        start = s;
                        break;
                    }
                }
            }
            if (!start && m_.component(m_.root()).name == path[0]) start = m_.root();
            if (!start) return std::nullopt;
            ComponentRef cur = *start;
            for (std::size_t i = 1; i < path.size(); ++i) {
                bool found = false;
                for (auto s : m_.component(cur).subcomponents) {
                    if (m_.component(s).name == path[i]) {
                        cur = s;
                        found = true;
                        break;
                    }
                }
                if (!found) return std::nullopt;
            }
            return cur;
        };

        if (target == context) return "this";
        for (std::size_t from = chain.size() - 1; from-- > 0;) {
            std::vector<std::string> path;
            for (std::size_t k = from + 1; k < chain.size(); ++k) path.push_back(m_.component(chain[k]).name);
            if (lookup(path) == target) return join_path(path);
        }
        std::vector<std::string> full;
        for (auto c : chain) full.push_back(m_.component(c).name);
        return join_path(full);
    }

    std::string value(ComponentRef context, const PropertyValue& v) {
        if (auto r = std::get_if<ComponentRef>(&v.data)) return "ref " + ref_path(context, *r);
        if (auto l = std::get_if<PropertyValue::List>(&v.data)) {
            std::string out = "[";
            for (std::size_t i = 0; i < l->size(); ++i) {
                if (i) out += ", ";
                out += value(context, (*l)[i]);
            }
            return out + "]";
        }
        return ModelParser::render_literal(v);
    }

    std::string endpoint(ComponentRef owner, FeatureRef f) {
        const Feature& feat = m_.feature(f);
        if (feat.owner == owner) return "this." + feat.name;
        std::vector<std::string> segs{feat.name};
        for (ComponentRef c = feat.owner; c != owner; c = *m_.component(c).parent) segs.push_back(m_.component(c).name);
        std::reverse(segs.begin(), segs.end());
        return join_path(segs);
    }

    void component(ComponentRef ref, int depth) {
        const Component& c = m_.component(ref);
        line(depth, std::string(to_string(c.kind)) + " " + c.name + " {");
        for (auto f : c.features) {
            const Feature& feat = m_.feature(f);
            line(depth + 1, std::string(feat.direction == PortDirection::In ? "in" : "out") + " port " + feat.name);
        }
        for (const auto& [name, v] : c.properties) line(depth + 1, "property " + name + " = " + value(ref, v));
        for (auto s : c.subcomponents) component(s, depth + 1);
        for (auto cr : c.connections) {
            const Connection& conn = m_.connection(cr);
            std::string text = "connection " + conn.name + " : " + endpoint(ref, conn.source) + " -> " +
                               endpoint(ref, conn.destination);
            if (conn.properties.empty()) {
                line(depth + 1, text);
            } else {
                line(depth + 1, text + " {");
                for (const auto& [name, v] : conn.properties) {
                    line(depth + 2, "property " + name + " = " + value(ref, v));
                }
                line(depth + 1, "}");
            }
        }
        bool any = false;
        for (const auto& d : m_.prove_directives()) {
            if (d.component != ref) continue;
            if (!any) line(depth + 1, "resolute {");
            any = true;
            line(depth + 2, "prove " + d.application_text());
        }
        if (any) line(depth + 1, "}");
        line(depth, "}");
    }
};

}  // namespace

std::string render_model(const ModelInstance& model) { return ModelRenderer(model).render(); }

bool structurally_equal(const ModelInstance& a, const ModelInstance& b) {
    if (a.component_count() != b.component_count() || a.feature_count() != b.feature_count() ||
        a.connection_count() != b.connection_count() || a.prove_directives().size() != b.prove_directives().size()) {
        return false;
    }
    for (std::uint32_t i = 0; i < a.component_count(); ++i) {
        const auto& x = a.component(ComponentRef{i});
        const auto& y = b.component(ComponentRef{i});
        if (x.name != y.name || x.kind != y.kind || x.parent != y.parent || x.subcomponents != y.subcomponents ||
            x.features != y.features || x.connections != y.connections || x.properties != y.properties ||
            x.qualified_name != y.qualified_name) {
            return false;
        }
    }
    for (std::uint32_t i = 0; i < a.feature_count(); ++i) {
        const auto& x = a.feature(FeatureRef{i});
        const auto& y = b.feature(FeatureRef{i});
        if (x.name != y.name || x.direction != y.direction || x.owner != y.owner) return false;
    }
    for (std::uint32_t i = 0; i < a.connection_count(); ++i) {
        const auto& x = a.connection(ConnectionRef{i});
        const auto& y = b.connection(ConnectionRef{i});
        if (x.name != y.name || x.source != y.source || x.destination != y.destination || x.owner != y.owner ||
            x.properties != y.properties) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.prove_directives().size(); ++i) {
        const auto& x = a.prove_directives()[i];
        const auto& y = b.prove_directives()[i];
        if (x.component != y.component || x.application_text() != y.application_text()) return false;
    }
    return true;
}

}  // namespace resolute
