#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sglab {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
// Strict parse: the whole string must be a finite number.
double parse_double(const std::string& s);

// 64-bit FNV-1a, used for config hashes.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace sglab
