#pragma once

#include <cstdint>

#include "apd/error.hpp"

namespace apd {

// Deterministic for all 64-bit inputs (Miller-Rabin with the 12-base set).
bool is_prime_u64(uint64_t n);

// A validated prime modulus, capped at 2^62 so that p and small multiples
// always fit signed 64-bit intermediates. Constructing one is the single
// point where primality is checked; everything downstream assumes it.
class Prime {
 public:
  explicit Prime(uint64_t p) : value_(p) {
    if (p >> 62)
      throw InvalidInput("p = " + std::to_string(p) + " is out of range");
    if (!is_prime_u64(p))
      throw InvalidInput("p must be prime, got " + std::to_string(p));
  }

  uint64_t value() const { return value_; }
  operator uint64_t() const { return value_; }

 private:
  uint64_t value_;
};

}  // namespace apd
