#pragma once

namespace kerrcat {

inline constexpr const char* kVersion = "0.1.0";

} // namespace kerrcat
