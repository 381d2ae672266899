#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "resolute/diagnostics.hpp"

namespace resolute {

enum class ComponentKind { System, Process, Thread, Processor, Memory, Bus, Device };

inline constexpr std::size_t kComponentKindCount = 7;

std::string_view to_string(ComponentKind kind);
std::optional<ComponentKind> parse_component_kind(std::string_view word);

enum class PortDirection { In, Out };

// Strong index types into a ModelInstance. Ordering follows document order.
struct ComponentRef {
    std::uint32_t index = 0;
    auto operator<=>(const ComponentRef&) const = default;
};
struct FeatureRef {
    std::uint32_t index = 0;
    auto operator<=>(const FeatureRef&) const = default;
};
struct ConnectionRef {
    std::uint32_t index = 0;
    auto operator<=>(const ConnectionRef&) const = default;
};

using ElementRef = std::variant<ComponentRef, FeatureRef, ConnectionRef>;

struct PropertyValue {
    using List = std::vector<PropertyValue>;
    std::variant<std::string, std::int64_t, double, bool, ComponentRef, List> data;

    bool operator==(const PropertyValue&) const = default;
};

using PropertyMap = std::map<std::string, PropertyValue>;

struct Feature {
    std::string name;
    PortDirection direction = PortDirection::In;
    ComponentRef owner;
    std::string qualified_name;
};

struct Connection {
    std::string name;
    FeatureRef source;
    FeatureRef destination;
    ComponentRef owner;  // component whose body declares the connection
    PropertyMap properties;
    std::string qualified_name;
};

struct Component {
    std::string name;
    ComponentKind kind = ComponentKind::System;
    std::optional<ComponentRef> parent;
    std::vector<ComponentRef> subcomponents;
    std::vector<FeatureRef> features;
    std::vector<ConnectionRef> connections;
    PropertyMap properties;
    std::string qualified_name;
};

/// Argument of a prove directive as written; resolved later against the
/// enclosing component.
struct ProveArgument {
    std::vector<std::string> path;            // non-empty for element references
    std::optional<PropertyValue> literal;     // set for literal arguments
    std::string text;
    SourceLocation loc;
};

struct ProveDirective {
    ComponentRef component;
    std::string claim;
    std::vector<ProveArgument> args;
    SourceLocation loc;

    std::string application_text() const;
};

/// The instantiated architecture. Immutable once built by parse_model.
///
/// Document order: components are numbered in pre-order of the containment
/// tree; features, connections and prove directives are grouped by their
/// owning component in that order and kept in declaration order within it.
class ModelInstance {
public:
    ComponentRef root() const { return ComponentRef{0}; }

    const Component& component(ComponentRef ref) const { return components_.at(ref.index); }
    const Feature& feature(FeatureRef ref) const { return features_.at(ref.index); }
    const Connection& connection(ConnectionRef ref) const { return connections_.at(ref.index); }

    std::size_t component_count() const { return components_.size(); }
    std::size_t feature_count() const { return features_.size(); }
    std::size_t connection_count() const { return connections_.size(); }

    /// Components of one kind, or all components when `kind` is empty.
    std::span<const ComponentRef> components_of(std::optional<ComponentKind> kind) const;
    std::span<const ConnectionRef> connections() const { return connection_refs_; }
    const std::vector<ProveDirective>& prove_directives() const { return directives_; }

    const std::string& qualified_name(const ElementRef& ref) const;
    std::optional<ElementRef> find(std::string_view qualified_name) const;

    const Component& owner_of(FeatureRef ref) const { return component(feature(ref).owner); }

    /// Builder used by the parser. Components must be added parent-first.
    class Builder;

private:
    std::vector<Component> components_;
    std::vector<Feature> features_;
    std::vector<Connection> connections_;
    std::vector<ProveDirective> directives_;

    std::vector<ComponentRef> all_components_;
    std::vector<ComponentRef> by_kind_[kComponentKindCount];
    std::vector<ConnectionRef> connection_refs_;
    std::unordered_map<std::string, ElementRef> by_name_;

    void build_indices();
};

/// Which instances a query enumerates: every component, one kind of
/// component, or every connection.
struct InstanceQuery {
    enum class Class { Component, Connection };
    Class cls = Class::Component;
    std::optional<ComponentKind> kind;

    static std::optional<InstanceQuery> parse(std::string_view name);
};

std::vector<ElementRef> instances_of(const ModelInstance& model, InstanceQuery query);

/// Name resolution relative to `context`. The first segment names one of
/// the context's subcomponents or is `this`; later segments descend through
/// subcomponents, and the final one may also name a feature or connection.
ElementRef resolve_reference(const ModelInstance& model, ComponentRef context,
                             std::span<const std::string> path, const SourceLocation& loc = {});

/// Parse the architecture language into an instance tree.
ModelInstance parse_model(std::string_view source, const std::string& file_name = "<model>");

/// Pretty-print a model in the same language; parse_model of the result
/// yields a structurally identical instance.
std::string render_model(const ModelInstance& model);

bool structurally_equal(const ModelInstance& a, const ModelInstance& b);

}  // namespace resolute
