#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "resolute/model.hpp"
#include "resolute/types.hpp"

namespace resolute {

class Value;

/// Finite, duplicate-free, insertion-ordered set.
class SetValue {
public:
    SetValue();
    explicit SetValue(std::vector<Value> items);  // drops duplicates, keeps first occurrence

    const std::vector<Value>& items() const { return *items_; }
    std::size_t size() const { return items_->size(); }
    bool empty() const { return items_->empty(); }
    bool contains(const Value& v) const;

private:
    std::shared_ptr<const std::vector<Value>> items_;
};

/// Result of evaluating a computation. Equality is structural; reals
/// compare by bit pattern.
class Value {
public:
    using Data = std::variant<bool, std::int64_t, double, std::string, ComponentRef, ConnectionRef, FeatureRef,
                              SetValue>;

    Value() : data_(false) {}
    Value(bool b) : data_(b) {}
    Value(std::int64_t i) : data_(i) {}
    Value(int i) : data_(static_cast<std::int64_t>(i)) {}
    Value(double d) : data_(d) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(ComponentRef r) : data_(r) {}
    Value(ConnectionRef r) : data_(r) {}
    Value(FeatureRef r) : data_(r) {}
    Value(SetValue s) : data_(std::move(s)) {}
    static Value from_element(const ElementRef& ref);

    const Data& data() const { return data_; }
    template <class T>
    bool holds() const {
        return std::holds_alternative<T>(data_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(data_);
    }

    bool is_reference() const;
    std::optional<ElementRef> element() const;

    /// Name of the value's runtime tag, for diagnostics.
    std::string tag_name(const ModelInstance& model) const;

    /// Whether this value inhabits `type`.
    bool conforms_to(const Type& type, const ModelInstance& model) const;

    friend bool operator==(const Value& a, const Value& b);
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);

private:
    Data data_;
};

/// Display form used in claim text: references by qualified path, strings
/// without quotes, numbers in canonical decimal form, sets as `{a, b}`.
std::string display(const Value& v, const ModelInstance& model);

std::string format_real(double x);

Value from_property(const PropertyValue& p);

/// Lexically scoped variable bindings. Persistent: binding returns a new
/// environment and leaves the original untouched, so environments can be
/// shared freely between proof nodes.
class Env {
public:
    Env() = default;

    Env bind(std::string name, Value value) const;
    const Value* lookup(std::string_view name) const;
    bool empty() const { return head_ == nullptr; }

private:
    struct Node {
        std::string name;
        Value value;
        std::shared_ptr<const Node> next;
    };
    std::shared_ptr<const Node> head_;
};

}  // namespace resolute
