#pragma once

namespace plexp {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kConfigSchemaVersion = 1;

} // namespace plexp
