#ifndef GRAD3_VERSION_HPP
#define GRAD3_VERSION_HPP

namespace grad3 {

inline constexpr const char* version = "0.1.0";

}  // namespace grad3

#endif
