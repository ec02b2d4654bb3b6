#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "apd/bigint.hpp"
#include "apd/prime.hpp"

namespace apd {

// Natural number extended with +infinity; infinity only arises as ord_p(0)
// and compares greater than every finite value.
class ExtNat {
 public:
  ExtNat() : value_(BigInt(0)) {}
  explicit ExtNat(BigInt v) : value_(std::move(v)) {}
  static ExtNat infinity() { return ExtNat(Inf{}); }

  bool is_infinite() const { return !value_.has_value(); }
  const BigInt& finite() const;  // throws InvalidInput on infinity

  std::string to_string() const;  // "inf" for infinity

  std::strong_ordering operator<=>(const ExtNat& rhs) const;
  bool operator==(const ExtNat& rhs) const = default;

 private:
  struct Inf {};
  explicit ExtNat(Inf) {}
  std::optional<BigInt> value_;
};

// x = unit * p^exponent with p not dividing unit. The exponent stays
// symbolic; the value itself is only materialized on demand.
struct PSplit {
  uint64_t p = 2;
  BigInt unit;      // nonzero, p does not divide it
  BigInt exponent;  // >= 0

  BigInt materialize() const;  // unit * p^exponent, size-guarded
  bool operator==(const PSplit&) const = default;
};

// x = a * p^(b * p^k) with p dividing neither a nor b, b > 0. Defined for
// ord_p(x) >= 1; k = ord_p of the exponent, so it always fits a machine word.
struct StandardForm {
  uint64_t p = 2;
  BigInt a;
  BigInt b;
  uint64_t k = 0;

  BigInt exponent() const;     // b * p^k, size-guarded
  BigInt materialize() const;  // a * p^(b*p^k), size-guarded
  bool operator==(const StandardForm&) const = default;
};

// p-adic valuation; Infinity iff x == 0.
ExtNat ord(Prime p, const BigInt& x);

// Largest multiple of p that is <= x. Uses the floored modulus, so it is
// well defined for negative x too.
BigInt pfloor(Prime p, const BigInt& x);

// x mod p in [0, p-1] regardless of the sign of x.
uint64_t mod_floored(Prime p, const BigInt& x);

// Arithmetic partial derivative D_p(x) = (x/p) * ord_p(x); 0 when x == 0 or
// p does not divide x.
BigInt dp(Prime p, const BigInt& x);

// Full arithmetic derivative via trial division. Throws FactorBoundExceeded
// when |x| has a composite cofactor whose factors all exceed the bound.
inline constexpr uint64_t kDefaultFactorBound = 10'000'000;
BigInt d_full(const BigInt& x, uint64_t trial_bound = kDefaultFactorBound);

// Factor out the p-part of a nonzero x.
PSplit psplit(Prime p, const BigInt& x);

// Conversions. to_standard requires exponent >= 1.
StandardForm to_standard(const PSplit& s);
PSplit from_standard(const StandardForm& f);

// D_p on standard form: unit a*b, exponent b*p^k + k - 1. Never materializes
// the input value.
PSplit dp_standard(const StandardForm& x);

// Text syntax "a*p^(b*p^k)", e.g. "5*2^(1*2^3)". Plain decimal integers are
// parsed by BigInt::from_decimal.
std::string to_text(const StandardForm& f);
StandardForm parse_standard_form(std::string_view text);

// Accepts either a plain decimal integer or the standard-form syntax;
// expect_p, when set, must match an embedded p.
struct ParsedValue {
  std::optional<BigInt> plain;
  std::optional<StandardForm> form;
};
ParsedValue parse_value(std::string_view text,
                        std::optional<uint64_t> expect_p = std::nullopt);

}  // namespace apd
