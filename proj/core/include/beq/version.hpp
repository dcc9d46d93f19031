#ifndef BEQ_VERSION_HPP
#define BEQ_VERSION_HPP

namespace beq {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
