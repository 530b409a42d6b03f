#pragma once

namespace blindsearch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blindsearch
