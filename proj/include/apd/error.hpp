#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (non-prime p, zero where nonzero is
// required, bad syntax, ...). CLI exit code 2.
struct InvalidInput : Error {
  using Error::Error;
};

// A computation would exceed the global size guard. CLI exit code 3.
struct TooLarge : Error {
  uint64_t bits_needed = 0;
  TooLarge(uint64_t bits, uint64_t limit)
      : Error("size guard exceeded: operation needs about " +
              std::to_string(bits) + " bits (limit " + std::to_string(limit) +
              ")"),
        bits_needed(bits) {}
  explicit TooLarge(const std::string& what) : Error(what) {}
};

// Trial-division bound hit before the input was fully factored.
struct FactorBoundExceeded : TooLarge {
  explicit FactorBoundExceeded(const std::string& what) : TooLarge(what) {}
};

// An internal consistency check failed. Must never fire; CLI exit code 4.
struct VerificationFailure : Error {
  using Error::Error;
};

// Requested the primitive element of an empty anti-derivative set.
struct EmptySetError : Error {
  using Error::Error;
};

// The anti-derivative set of 0 is infinite; carries its description.
struct InfiniteSetError : Error {
  std::string set_description;
  explicit InfiniteSetError(uint64_t p)
      : Error("the anti-partial derivative set of 0 is infinite"),
        set_description("{x : " + std::to_string(p) + " does not divide x} u {0}") {}
};

// Global cap on the size of any materialized integer. Default 2^20 bits;
// would-be memory blowups become TooLarge instead of an abort.
namespace size_guard {

uint64_t max_bits();
void set_max_bits(uint64_t bits);

// Throws TooLarge when `bits` exceeds the configured limit.
void require_bits(uint64_t bits);

// RAII override, used by tests.
struct Scoped {
  explicit Scoped(uint64_t bits) : saved_(max_bits()) { set_max_bits(bits); }
  ~Scoped() { set_max_bits(saved_); }
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

 private:
  uint64_t saved_;
};

}  // namespace size_guard

}  // namespace apd
