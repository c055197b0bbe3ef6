#pragma once

namespace qsdc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsdc
