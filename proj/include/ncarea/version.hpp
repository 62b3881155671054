#pragma once

#include <string>

namespace ncarea {

inline constexpr const char* kVersion = "0.1.0";

/// ISO-8601 UTC timestamp; manifests carry it, data files never do.
std::string current_utc_timestamp();

}  // namespace ncarea
