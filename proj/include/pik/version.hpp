#pragma once

namespace pik {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

}  // namespace pik
