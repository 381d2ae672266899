#pragma once

#include <memory>
#include <optional>
#include <string>

#include "resolute/model.hpp"

namespace resolute {

/// Static type of a computation expression.
///
/// `Empty` is the element type of the empty set literal and is a subtype of
/// everything. `Dynamic` is the type of property lookups, whose value shape
/// depends on the model; it is compatible in both directions and checked
/// when the value is bound to a typed variable.
class Type {
public:
    enum class Tag { Bool, Int, Real, String, Component, Connection, Feature, Set, Empty, Dynamic };

    Type() : tag_(Tag::Dynamic) {}

    static Type boolean() { return Type(Tag::Bool); }
    static Type integer() { return Type(Tag::Int); }
    static Type real() { return Type(Tag::Real); }
    static Type string() { return Type(Tag::String); }
    static Type component(std::optional<ComponentKind> kind = std::nullopt);
    static Type connection() { return Type(Tag::Connection); }
    static Type feature() { return Type(Tag::Feature); }
    static Type set_of(Type element);
    static Type empty() { return Type(Tag::Empty); }
    static Type dynamic() { return Type(Tag::Dynamic); }

    /// Type names as written in library source; set types are `{T}`.
    static std::optional<Type> from_name(std::string_view name);

    Tag tag() const { return tag_; }
    std::optional<ComponentKind> kind() const { return kind_; }
    const Type& element() const { return *element_; }

    bool is(Tag t) const { return tag_ == t; }
    bool is_numeric() const { return tag_ == Tag::Int || tag_ == Tag::Real; }
    bool is_reference() const { return tag_ == Tag::Component || tag_ == Tag::Connection || tag_ == Tag::Feature; }
    bool is_dynamic() const { return tag_ == Tag::Dynamic; }
    /// Types whose values may appear in claim text.
    bool is_displayable() const;

    std::string str() const;
    bool operator==(const Type& other) const;

private:
    explicit Type(Tag tag) : tag_(tag) {}

    Tag tag_;
    std::optional<ComponentKind> kind_;
    std::shared_ptr<const Type> element_;
};

/// `sub` may be used where `super` is expected. Component kinds are
/// subtypes of `component`; sets are covariant.
bool is_subtype(const Type& sub, const Type& super);

/// Least upper bound, if one exists.
std::optional<Type> join(const Type& a, const Type& b);

}  // namespace resolute
