#include "resolute/types.hpp"

namespace resolute {

Type Type::component(std::optional<ComponentKind> kind) {
    Type t(Tag::Component);
    t.kind_ = kind;
    return t;
}

Type Type::set_of(Type element) {
    Type t(Tag::Set);
    t.element_ = std::make_shared<const Type>(std::move(element));
    return t;
}

std::optional<Type> Type::from_name(std::string_view name) {
    if (name == "bool") return boolean();
    if (name == "int") return integer();
    if (name == "real") return real();
    if (name == "string") return string();
    if (name == "component") return component();
    if (name == "connection") return connection();
    if (name == "feature") return feature();
    if (auto kind = parse_component_kind(name)) return component(kind);
    return std::nullopt;
}

bool Type::is_displayable() const {
    switch (tag_) {
        case Tag::Bool:
        case Tag::Int:
        case Tag::Real:
        case Tag::String:
        case Tag::Component:
        case Tag::Connection:
        case Tag::Feature:
        case Tag::Dynamic: return true;
        default: return false;
    }
}

std::string Type::str() const {
    switch (tag_) {
        case Tag::Bool: return "bool";
        case Tag::Int: return "int";
        case Tag::Real: return "real";
        case Tag::String: return "string";
        case Tag::Component: return kind_ ? std::string(to_string(*kind_)) : "component";
        case Tag::Connection: return "connection";
        case Tag::Feature: return "feature";
        case Tag::Set: return "{" + element_->str() + "}";
        case Tag::Empty: return "nothing";
        case Tag::Dynamic: return "property value";
    }
    return "?";
}

bool Type::operator==(const Type& other) const {
    if (tag_ != other.tag_) return false;
    if (tag_ == Tag::Component) return kind_ == other.kind_;
    if (tag_ == Tag::Set) return *element_ == *other.element_;
    return true;
}

bool is_subtype(const Type& sub, const Type& super) {
    using Tag = Type::Tag;
    if (sub.is_dynamic() || super.is_dynamic()) return true;
    if (sub.is(Tag::Empty)) return true;
    if (sub.tag() != super.tag()) return false;
    switch (sub.tag()) {
        case Tag::Component: return !super.kind() || super.kind() == sub.kind();
        case Tag::Set: return is_subtype(sub.element(), super.element());
        default: return true;
    }
}

std::optional<Type> join(const Type& a, const Type& b) {
    using Tag = Type::Tag;
    if (a.is(Tag::Empty)) return b;
    if (b.is(Tag::Empty)) return a;
    if (a.is_dynamic() || b.is_dynamic()) return Type::dynamic();
    if (a.tag() != b.tag()) return std::nullopt;
    switch (a.tag()) {
        case Tag::Component: return a.kind() == b.kind() ? a : Type::component();
        case Tag::Set: {
            auto e = join(a.element(), b.element());
            if (!e) return std::nullopt;
            return Type::set_of(*e);
        }
        default: return a;
    }
}

}  // namespace resolute
