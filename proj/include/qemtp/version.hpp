#pragma once

namespace qemtp {

#ifndef QEMTP_VERSION
#define QEMTP_VERSION "0.0.0"
#endif

inline constexpr const char* kVersion = QEMTP_VERSION;

}  // namespace qemtp
