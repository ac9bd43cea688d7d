#pragma once

namespace smallmarket {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smallmarket
