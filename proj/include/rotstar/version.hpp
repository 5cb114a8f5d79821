// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

namespace rotstar {

inline constexpr int version_major = 0;
inline constexpr int version_minor = 1;
inline constexpr int version_patch = 0;
inline constexpr const char* version_string = "0.1.0";

}  // namespace rotstar
