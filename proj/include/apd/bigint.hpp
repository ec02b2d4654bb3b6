#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace apd {

// Signed arbitrary-precision integer: sign-magnitude over 32-bit limbs,
// little-endian, no leading zero limbs. Every operation that can grow a
// value (multiply, shift, power, parse) honors the global size guard.
class BigInt {
 public:
  BigInt() = default;
  BigInt(int64_t v);  // NOLINT(google-explicit-constructor): mixed arithmetic everywhere

  static BigInt from_decimal(std::string_view text);
  // base^exponent, materialized; throws TooLarge before allocating when the
  // result would exceed the size guard.
  static BigInt power(uint64_t base, uint64_t exponent);
  static BigInt power(uint64_t base, const BigInt& exponent);

  std::string to_decimal() const;

  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }
  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }
  uint64_t bit_length() const;         // bits of |x|; 0 for x == 0
  uint64_t trailing_zero_bits() const; // 0 for x == 0

  bool fits_int64() const;
  int64_t to_int64() const;  // throws InvalidInput when out of range
  bool fits_uint64() const;  // false for negatives
  uint64_t to_uint64() const;

  BigInt abs() const;
  BigInt operator-() const;

  BigInt& operator+=(const BigInt& rhs);
  BigInt& operator-=(const BigInt& rhs);
  BigInt& operator*=(const BigInt& rhs);

  friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
  friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
  friend BigInt operator*(BigInt lhs, const BigInt& rhs) { return lhs *= rhs; }

  // Truncated division: quotient rounds toward zero, remainder takes the
  // sign of the dividend. Zero divisor throws InvalidInput.
  static void divmod(const BigInt& num, const BigInt& den, BigInt& quot,
                     BigInt& rem);
  BigInt operator/(const BigInt& rhs) const;
  BigInt operator%(const BigInt& rhs) const;
  bool divisible_by(const BigInt& den) const;

  uint64_t magnitude_mod(uint64_t m) const;  // |x| mod m, m != 0

  BigInt shifted_left(uint64_t bits) const;
  BigInt shifted_right(uint64_t bits) const;  // shift of |x|, sign kept

  std::strong_ordering operator<=>(const BigInt& rhs) const;
  bool operator==(const BigInt& rhs) const = default;

 private:
  static int compare_magnitude(const std::vector<uint32_t>& a,
                               const std::vector<uint32_t>& b);
  static void add_magnitude(std::vector<uint32_t>& acc,
                            const std::vector<uint32_t>& b);
  // requires |a| >= |b|
  static void sub_magnitude(std::vector<uint32_t>& acc,
                            const std::vector<uint32_t>& b);
  static void divmod_magnitude(const std::vector<uint32_t>& u,
                               const std::vector<uint32_t>& v,
                               std::vector<uint32_t>& q,
                               std::vector<uint32_t>& r);
  void trim();

  std::vector<uint32_t> limbs_;
  bool negative_ = false;  // never set when limbs_ is empty
};

}  // namespace apd
