#pragma once

namespace mslab {

inline constexpr const char* kVersion = "0.1.0";

}
