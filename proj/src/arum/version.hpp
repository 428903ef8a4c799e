#pragma once

#define ARUM_VERSION_STRING "0.1.0"

namespace arum {
inline const char* library_version() { return ARUM_VERSION_STRING; }
}  // namespace arum
