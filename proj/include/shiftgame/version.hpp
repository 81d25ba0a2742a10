#pragma once

namespace shiftgame {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace shiftgame
