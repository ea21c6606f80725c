#pragma once

namespace qetsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qetsim
