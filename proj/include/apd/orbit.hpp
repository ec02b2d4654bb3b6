#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apd/padic.hpp"

namespace apd {

// The k-segment: head k-1 followed by (k-1 mod p) copies of -1. These are
// the building blocks of every inc_p sequence once ord_p(x) >= p.
struct SegmentSpec {
  uint64_t k = 1;
  uint64_t head = 0;     // k - 1
  uint64_t run_len = 0;  // (k - 1) mod p

  uint64_t length() const { return run_len + 1; }
  bool operator==(const SegmentSpec&) const = default;
};

// The chain ell_1 = ord_p(pfloor(ell)), ell_i = ord_p(pfloor(ell_{i-1}-1}),
// stopped at the unique N with 1 <= ell_N <= p. Every step is at most
// log_p of its predecessor, so the values are machine words even when the
// starting exponent has thousands of digits.
struct LChain {
  BigInt ell;
  std::vector<uint64_t> steps;  // ell_1 .. ell_N

  size_t n() const { return steps.size(); }
  bool operator==(const LChain&) const = default;
};

// Predicted inc_p structure of x = a*p^ell, ell >= p: a prefix of -1's,
// the segments for ell_1..ell_N, then S_{ell_N} repeating forever.
struct IncProfile {
  uint64_t p = 2;
  BigInt ell;
  uint64_t prefix_len = 0;  // ell mod p
  std::vector<SegmentSpec> segments;
  uint64_t period = 1;  // ell_N, always <= p

  const SegmentSpec& periodic_segment() const { return segments.back(); }
  // canonical text form: prefix=i0; S(k1)[i1]; ...; tail=S(kN) period=kN
  std::string to_text() const;
  bool operator==(const IncProfile&) const = default;
};

enum class OrbitKind { Zero, FixedPoint, DivergesPositive, DivergesNegative };

struct OrbitClass {
  OrbitKind kind = OrbitKind::Zero;
  // the landed value a*p^p, when the orbit is captured by a fixed point and
  // the coefficient stayed within the size guard
  std::optional<PSplit> fixed_point;
};

std::string to_string(OrbitKind k);

struct OrdSequence {
  std::vector<ExtNat> terms;
  uint64_t truncated_at = 0;  // requested length
};

// Next valuation: D_p(a*p^ell) = (a*ell)*p^(ell-1), so the ord_p sequence
// obeys ell -> ell - 1 + ord_p(ell) independently of the coefficient.
BigInt ord_step(Prime p, const BigInt& ell);

OrdSequence ord_sequence(Prime p, const BigInt& x, uint64_t terms);
OrdSequence ord_sequence(Prime p, const PSplit& x, uint64_t terms);

SegmentSpec segment(Prime p, uint64_t k);
LChain lchain(Prime p, const BigInt& ell);
IncProfile inc_profile(Prime p, const BigInt& ell);

// Unroll a profile into explicit increments (-1's and segment heads).
std::vector<int64_t> unroll(const IncProfile& profile, size_t terms);

// Eventual period of the ord_p sequence; always in [1, p].
uint64_t period(Prime p, const BigInt& x);
uint64_t period(Prime p, const PSplit& x);

// Orbit trichotomy. With require_value, a fixed-point coefficient that
// exceeds the size guard rethrows TooLarge instead of being dropped.
OrbitClass classify(Prime p, const BigInt& x, bool require_value = false);
OrbitClass classify(Prime p, const PSplit& x, bool require_value = false);

// Inverse construction: given i_0..i_N in [0, p-1], returns ell
// such that the inc_p sequence of p^ell has prefix i_0 and segment j carries
// exactly i_j copies of -1. The k_j tower is size-checked level by level.
BigInt reverse_construct(Prime p, const std::vector<uint64_t>& i);

}  // namespace apd
