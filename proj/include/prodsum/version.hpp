#ifndef PRODSUM_VERSION_HPP
#define PRODSUM_VERSION_HPP

namespace prodsum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace prodsum

#endif  // PRODSUM_VERSION_HPP
