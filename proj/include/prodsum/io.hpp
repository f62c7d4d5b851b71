#ifndef PRODSUM_IO_HPP
#define PRODSUM_IO_HPP

#include <string>

namespace prodsum {

/// Shortest round-trip decimal form ("%.17g" trimmed); identical input bits
/// give identical text, which is what the byte-reproducibility contract of
/// the CSV outputs rests on.
std::string format_double(double x);

}  // namespace prodsum

#endif  // PRODSUM_IO_HPP
