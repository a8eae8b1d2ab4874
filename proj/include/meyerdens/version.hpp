// version.hpp — library version constant, recorded in every CLI output header.
#pragma once

namespace meyerdens {

inline constexpr const char* kVersion = "0.1.0";

} // namespace meyerdens
