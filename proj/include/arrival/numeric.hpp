#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>

namespace arrival {

// Flow entries grow up to 2^n on n-vertex graphs, so fixed-width integers
// are not an option anywhere run lengths appear.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt pow2(std::size_t k) { return BigInt{1} << k; }

// Smallest k with 2^k >= n; ceil_log2(1) == 0.
inline std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace arrival
