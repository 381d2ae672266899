#include "resolute/value.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace resolute {

SetValue::SetValue() : items_(std::make_shared<const std::vector<Value>>()) {}

SetValue::SetValue(std::vector<Value> items) {
    std::vector<Value> unique;
    unique.reserve(items.size());
    for (auto& v : items) {
        bool seen = false;
        for (const auto& u : unique) {
            if (u == v) {
                seen = true;
                break;
            }
        }
        if (!seen) unique.push_back(std::move(v));
    }
    items_ = std::make_shared<const std::vector<Value>>(std::move(unique));
}

bool SetValue::contains(const Value& v) const {
    for (const auto& x : *items_) {
        if (x == v) return true;
    }
    return false;
}

Value Value::from_element(const ElementRef& ref) {
    return std::visit([](auto r) { return Value(r); }, ref);
}

bool Value::is_reference() const {
    return holds<ComponentRef>() || holds<ConnectionRef>() || holds<FeatureRef>();
}

std::optional<ElementRef> Value::element() const {
    if (auto c = std::get_if<ComponentRef>(&data_)) return *c;
    if (auto c = std::get_if<ConnectionRef>(&data_)) return *c;
    if (auto c = std::get_if<FeatureRef>(&data_)) return *c;
    return std::nullopt;
}

std::string Value::tag_name(const ModelInstance& model) const {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) return "bool";
            if constexpr (std::is_same_v<T, std::int64_t>) return "int";
            if constexpr (std::is_same_v<T, double>) return "real";
            if constexpr (std::is_same_v<T, std::string>) return "string";
            if constexpr (std::is_same_v<T, ComponentRef>) return std::string(to_string(model.component(x).kind));
            if constexpr (std::is_same_v<T, ConnectionRef>) return "connection";
            if constexpr (std::is_same_v<T, FeatureRef>) return "feature";
            if constexpr (std::is_same_v<T, SetValue>) return "set";
        },
        data_);
}

bool Value::conforms_to(const Type& type, const ModelInstance& model) const {
    using Tag = Type::Tag;
    switch (type.tag()) {
        case Tag::Dynamic: return true;
        case Tag::Empty: return false;
        case Tag::Bool: return holds<bool>();
        case Tag::Int: return holds<std::int64_t>();
        case Tag::Real: return holds<double>();
        case Tag::String: return holds<std::string>();
        case Tag::Connection: return holds<ConnectionRef>();
        case Tag::Feature: return holds<FeatureRef>();
        case Tag::Component:
            if (!holds<ComponentRef>()) return false;
            return !type.kind() || model.component(as<ComponentRef>()).kind == *type.kind();
        case Tag::Set:
            if (!holds<SetValue>()) return false;
            for (const auto& item : as<SetValue>().items()) {
                if (!item.conforms_to(type.element(), model)) return false;
            }
            return true;
    }
    return false;
}

bool operator==(const Value& a, const Value& b) {
    if (a.data_.index() != b.data_.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.data_);
            if constexpr (std::is_same_v<T, double>) {
                return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
            } else if constexpr (std::is_same_v<T, SetValue>) {
                return (a <=> b) == 0;
            } else {
                return x == y;
            }
        },
        a.data_);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.data_.index() <=> b.data_.index(); c != 0) return c;
    return std::visit(
        [&](const auto& x) -> std::strong_ordering {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.data_);
            if constexpr (std::is_same_v<T, double>) {
                return std::bit_cast<std::uint64_t>(x) <=> std::bit_cast<std::uint64_t>(y);
            } else if constexpr (std::is_same_v<T, SetValue>) {
                // Sets compare as sets: insertion order is irrelevant.
                auto xs = x.items();
                auto ys = y.items();
                std::sort(xs.begin(), xs.end());
                std::sort(ys.begin(), ys.end());
                for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
                    if (auto c = xs[i] <=> ys[i]; c != 0) return c;
                }
                return xs.size() <=> ys.size();
            } else if constexpr (std::is_same_v<T, bool>) {
                return static_cast<int>(x) <=> static_cast<int>(y);
            } else {
                return x <=> y;
            }
        },
        a.data_);
}

std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".einf") == std::string::npos) s += ".0";
    return s;
}

std::string display(const Value& v, const ModelInstance& model) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(x);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else if constexpr (std::is_same_v<T, SetValue>) {
                std::string out = "{";
                for (std::size_t i = 0; i < x.items().size(); ++i) {
                    if (i) out += ", ";
                    out += display(x.items()[i], model);
                }
                return out + "}";
            } else {
                return model.qualified_name(x);
            }
        },
        v.data());
}

Value from_property(const PropertyValue& p) {
    return std::visit(
        [](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PropertyValue::List>) {
                std::vector<Value> items;
                items.reserve(x.size());
                for (const auto& item : x) items.push_back(from_property(item));
                return SetValue(std::move(items));
            } else {
                return Value(x);
            }
        },
        p.data);
}

Env Env::bind(std::string name, Value value) const {
    Env out;
    out.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(value), head_});
    return out;
}

const Value* Env::lookup(std::string_view name) const {
    for (const Node* n = head_.get(); n; n = n->next.get()) {
        if (n->name == name) return &n->value;
    }
    return nullptr;
}

}  // namespace resolute
