#include "prodsum/io.hpp"

#include <charconv>

namespace prodsum {

std::string format_double(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;  // 40 chars always suffice for a double
    return std::string(buf, ptr);
}

}  // namespace prodsum
