#pragma once

#include <string_view>

namespace resolute {

/// Source of the standard library, loaded before any user library.
std::string_view stdlib_source();

inline constexpr std::string_view kStdlibFileName = "<stdlib>";

}  // namespace resolute
