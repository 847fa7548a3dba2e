#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpbasis {

// All coefficients and counts are exact integers; identity checks never
// compare anything but equal/unequal.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Invalid user input: bad algebra spec, rank/mode combination, malformed
// manifest. CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Internal guard tripped: the enumeration cannot certify completeness
// (e.g. the minimal-energy quadratic form failed its positive-definiteness
// check). Recorded as an aborted verification, never as a wrong answer.
class EnumerationAbort : public std::runtime_error {
 public:
  explicit EnumerationAbort(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline void check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(std::string("internal check failed: ") + msg);
}

inline int bit_length(std::uint64_t v) {
  int n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}

}  // namespace detail

}  // namespace qpbasis
