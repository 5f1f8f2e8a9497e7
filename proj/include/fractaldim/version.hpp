#pragma once

namespace fractaldim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fractaldim
