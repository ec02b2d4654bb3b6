#pragma once

#include <cstdint>
#include <vector>

#include "apd/padic.hpp"

namespace apd {

// Every integral anti-partial derivative of a target value, sorted by
// ascending k. The first member (smallest k) is the primitive one; c_values
// aligns each member with its correspondence parameter c.
struct AntiSet {
  uint64_t p = 2;
  PSplit target;
  std::vector<StandardForm> members;
  size_t primitive_index = 0;
  std::vector<BigInt> c_values;

  size_t count() const { return members.size(); }
};

// Parameter set of the rational anti-partial derivatives (the exact
// divisibility condition alone).
struct RationalCSet {
  std::vector<BigInt> c_values;
};

struct ConstructionResult {
  uint64_t p = 2;
  uint64_t n = 0;       // requested number of anti-partial derivatives
  uint64_t k0 = 0;
  std::vector<BigInt> c_list;  // c_1 .. c_{n+1}
  BigInt b0;
  BigInt a0;
  StandardForm x0;
  PSplit y;             // D_p(x0)
};

// Inverts D_p at y by the (a*b, b*p^k + k - 1) criterion. y == 0 throws
// InfiniteSetError (the preimage is {x : p does not divide x} union {0}).
AntiSet anti_derivatives(Prime p, const PSplit& y);
AntiSet anti_derivatives(Prime p, const BigInt& y);

size_t count_anti(Prime p, const PSplit& y);
size_t count_anti(Prime p, const BigInt& y);

// Member with the smallest k; throws EmptySetError when there is none.
StandardForm primitive_anti(Prime p, const BigInt& y);
StandardForm primitive_anti(Prime p, const PSplit& y);

// Correspondence parameter set C(x0) of a primitive x0; rejects non-primitive
// inputs. Always contains 0.
std::vector<BigInt> c_set(const StandardForm& x0);

// Same set without the divisibility-into-a0*b0 condition; its size counts
// the rational anti-partial derivatives.
RationalCSet c_set_rational(const StandardForm& x0);

// The member of the anti set that c corresponds to.
StandardForm expand_c(const StandardForm& x0, const BigInt& c);

// k0 = p + p^2 + ... + p^m; any x0 with this k0 is primitive.
BigInt construct_k0(Prime p, uint64_t m);

struct B0Result {
  BigInt b0;
  std::vector<BigInt> c_list;  // c_1 = 0 .. c_{n+1} = b0
};
// c_i = p^(p^k0 * c_{i-1}) + c_{i-1}; the exact-divisibility solutions in
// (0, b0) are then precisely c_2..c_n.
B0Result construct_b0(Prime p, uint64_t n, uint64_t k0);

// a0 = product of (b0 - c_i) / p^(p^k0 * c_i) for i = 2..n.
BigInt construct_a0(Prime p, uint64_t n, uint64_t k0, const BigInt& b0,
                    const std::vector<BigInt>& c_list);

// Assembles x0 = a0 * p^(b0 * p^k0), computes y = D_p(x0), and verifies by
// independent enumeration that y has exactly n anti-partial derivatives.
ConstructionResult construct_with_n_antis(Prime p, uint64_t n, uint64_t k0);

}  // namespace apd
