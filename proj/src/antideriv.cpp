#include "apd/antideriv.hpp"

#include <cmath>
#include <utility>

#include "apd/error.hpp"

namespace apd {

namespace {

// aligns members with the correspondence k_j = p^k0 * c_j + k0 where k0 is the
// primitive member's k
std::vector<BigInt> c_values_for(uint64_t p, const std::vector<StandardForm>& members) {
  std::vector<BigInt> out;
  if (members.empty()) return out;
  const uint64_t k0 = members[0].k;
  out.reserve(members.size());
  for (const StandardForm& m : members) {
    uint64_t d = m.k - k0;
    if (d == 0) {
      out.emplace_back(0);
      continue;
    }
    uint64_t pk0 = 1;
    for (uint64_t i = 0; i < k0; ++i) {
      pk0 *= p;  // p^k0 <= d here, no overflow
      if (pk0 > d) throw VerificationFailure("member k is not k0 + p^k0 * c");
    }
    if (d % pk0 != 0) throw VerificationFailure("member k is not k0 + p^k0 * c");
    out.emplace_back(static_cast<int64_t>(d / pk0));
  }
  return out;
}

}  // namespace

AntiSet anti_derivatives(Prime p, const PSplit& y) {
  AntiSet out;
  out.p = p.value();
  out.target = y;
  if (y.unit.is_zero()) throw InfiniteSetError(p.value());

  const BigInt& ell0 = y.exponent;
  if (ell0.is_zero()) {
    // ord_p(y) = 0: D_p(x) = y iff x = y*p
    out.members.push_back(StandardForm{p.value(), y.unit, BigInt(1), 0});
    out.c_values.emplace_back(0);
    return out;
  }

  // matching criterion: x = a*p^(b*p^k) hits y = a0*p^ell0 iff
  // a*b = a0 and b*p^k + k - 1 = ell0, i.e. p^k | (M - k) for M = ell0 + 1.
  const BigInt M = ell0 + BigInt(1);

  auto try_k = [&](uint64_t k) {
    BigInt t = M - BigInt(static_cast<int64_t>(k));
    if (t.sign() <= 0) return;
    BigInt b, r;
    BigInt::divmod(t, BigInt::power(p, k), b, r);
    if (r.is_zero() && b.sign() > 0 && b.magnitude_mod(p) != 0 &&
        y.unit.divisible_by(b)) {
      out.members.push_back(StandardForm{p.value(), y.unit / b, b, k});
    }
  };

  // p^k | (M - k) is equivalent to M = k (mod p^k). Checking the residue of
  // M against the largest u64 power of p screens every k at once: below that
  // power the residue test is exact, above it the single value k = R is the
  // only survivor, checked exactly afterwards.
  uint64_t pmax = p.value();
  while (pmax <= (uint64_t{1} << 62) / p.value()) pmax *= p.value();
  const uint64_t R = M.magnitude_mod(pmax);

  uint64_t pk = 1;
  uint64_t k = 0;
  while (true) {
    if (R % pk == k % pk) try_k(k);
    if (pk > pmax / p.value()) break;
    pk *= p.value();
    ++k;
  }
  // above pmax the candidates are R, R + pmax, R + 2*pmax, ... up to
  // log_p(M); with the default guard only cand = R can be plausible
  const long double log2p = std::log2(static_cast<long double>(p.value()));
  for (uint64_t cand = R;; cand += pmax) {
    if (cand > k &&
        static_cast<long double>(cand) * log2p <=
            static_cast<long double>(M.bit_length()))
      try_k(cand);
    if (cand + pmax < cand ||
        static_cast<long double>(cand + pmax) * log2p >
            static_cast<long double>(M.bit_length()))
      break;
  }

  out.c_values = c_values_for(p, out.members);
  return out;
}

AntiSet anti_derivatives(Prime p, const BigInt& y) {
  if (y.is_zero()) throw InfiniteSetError(p.value());
  return anti_derivatives(p, psplit(p, y));
}

size_t count_anti(Prime p, const PSplit& y) { return anti_derivatives(p, y).count(); }
size_t count_anti(Prime p, const BigInt& y) { return anti_derivatives(p, y).count(); }

StandardForm primitive_anti(Prime p, const PSplit& y) {
  AntiSet s = anti_derivatives(p, y);
  if (s.members.empty())
    throw EmptySetError("no anti-partial derivative exists for the target");
  return s.members.front();
}

StandardForm primitive_anti(Prime p, const BigInt& y) {
  if (y.is_zero()) throw InfiniteSetError(p.value());
  return primitive_anti(p, psplit(p, y));
}

namespace {

void require_primitive(const StandardForm& x0) {
  if (x0.k == 0) return;  // k is minimal at 0, automatically primitive
  Prime p(x0.p);
  StandardForm prim = primitive_anti(p, dp_standard(x0));
  if (!(prim == x0))
    throw InvalidInput("x0 = " + to_text(x0) +
                       " is not the primitive anti-partial derivative (that is " +
                       to_text(prim) + ")");
}

std::vector<BigInt> collect_c(const StandardForm& x0, bool integral_only) {
  require_primitive(x0);
  const uint64_t p = x0.p;
  const BigInt& b0 = x0.b;

  std::vector<BigInt> out;
  out.emplace_back(0);

  // for c >= 1, exact divisibility p^(p^k0*c) || (b0 - c) forces
  // p^(p^k0*c) < b0, so p^k0*c is capped by log_p(b0); an upper estimate of
  // the cap is enough, the ord test below is decisive
  const uint64_t log_cap = static_cast<uint64_t>(
      static_cast<long double>(b0.bit_length()) /
      std::log2(static_cast<long double>(p))) + 1;
  uint64_t pk0 = 1;
  for (uint64_t i = 0; i < x0.k; ++i) {
    unsigned __int128 next = static_cast<unsigned __int128>(pk0) * p;
    if (next > log_cap) return out;  // p^k0 alone exceeds every admissible e
    pk0 = static_cast<uint64_t>(next);
  }
  if (pk0 > log_cap) return out;

  const BigInt ab = x0.a * b0;
  for (uint64_t c = 1; c <= log_cap / pk0; ++c) {
    BigInt cb(static_cast<int64_t>(c));
    if (cb >= b0) break;
    const uint64_t e = pk0 * c;
    BigInt t = b0 - cb;
    if (ord(Prime(p), t).finite() != BigInt(static_cast<int64_t>(e))) continue;
    if (integral_only) {
      BigInt q = t / BigInt::power(p, e);
      if (!ab.divisible_by(q)) continue;
    }
    out.push_back(std::move(cb));
  }
  return out;
}

}  // namespace

std::vector<BigInt> c_set(const StandardForm& x0) { return collect_c(x0, true); }

RationalCSet c_set_rational(const StandardForm& x0) {
  return RationalCSet{collect_c(x0, false)};
}

StandardForm expand_c(const StandardForm& x0, const BigInt& c) {
  if (c.is_zero()) return x0;
  require_primitive(x0);
  Prime p(x0.p);
  if (c.sign() < 0 || c >= x0.b)
    throw InvalidInput("c = " + c.to_decimal() + " is outside [0, b0)");
  if (!c.fits_uint64())
    throw InvalidInput("c = " + c.to_decimal() + " is not in C(x0)");

  BigInt pk0 = BigInt::power(p, x0.k);
  BigInt e_big = pk0 * c;
  if (!e_big.fits_uint64())
    throw InvalidInput("c = " + c.to_decimal() + " is not in C(x0)");
  const uint64_t e = e_big.to_uint64();

  BigInt t = x0.b - c;
  if (ord(p, t).finite() != e_big)
    throw InvalidInput("c = " + c.to_decimal() +
                       " fails exact divisibility, not in C(x0)");
  BigInt b = t / BigInt::power(p.value(), e);
  BigInt ab = x0.a * x0.b;
  if (!ab.divisible_by(b))
    throw InvalidInput("c = " + c.to_decimal() +
                       " fails the a0*b0 divisibility, not in C(x0)");
  return StandardForm{x0.p, ab / b, std::move(b), e + x0.k};
}

BigInt construct_k0(Prime p, uint64_t m) {
  if (m < 2) throw InvalidInput("construct_k0 requires m >= 2");
  BigInt sum;
  for (uint64_t i = 1; i <= m; ++i) sum += BigInt::power(p, i);
  return sum;
}

B0Result construct_b0(Prime p, uint64_t n, uint64_t k0) {
  if (n < 1) throw InvalidInput("construct_b0 requires n >= 1");
  B0Result out;
  out.c_list.emplace_back(0);  // c_1
  const BigInt pk0 = BigInt::power(p, k0);
  for (uint64_t i = 2; i <= n + 1; ++i) {
    const BigInt& prev = out.c_list.back();
    BigInt next = BigInt::power(p.value(), pk0 * prev) + prev;
    out.c_list.push_back(std::move(next));
  }
  out.b0 = out.c_list.back();
  return out;
}

BigInt construct_a0(Prime p, uint64_t n, uint64_t k0, const BigInt& b0,
                    const std::vector<BigInt>& c_list) {
  if (c_list.size() != n + 1 || c_list.back() != b0)
    throw InvalidInput("c_list does not match (n, b0)");
  const BigInt pk0 = BigInt::power(p, k0);
  BigInt a0(1);
  for (uint64_t i = 2; i <= n; ++i) {
    const BigInt& ci = c_list[i - 1];
    BigInt t = b0 - ci;
    BigInt pe = BigInt::power(p.value(), pk0 * ci);
    BigInt ai, r;
    BigInt::divmod(t, pe, ai, r);
    if (!r.is_zero())
      throw VerificationFailure("b0 - c_i is not divisible by p^(p^k0 c_i)");
    a0 *= ai;
  }
  if (a0.magnitude_mod(p) == 0)
    throw VerificationFailure("constructed a0 is divisible by p");
  return a0;
}

namespace {

void require_valid_k0(Prime p, uint64_t k0) {
  if (k0 == 0) return;
  if (k0 >> 62)
    throw TooLarge("k0 = " + std::to_string(k0) + " is out of range");
  // admissible nonzero k0: p + p^2 + ... + p^m for some m >= 2
  BigInt sum;
  for (uint64_t m = 1;; ++m) {
    sum += BigInt::power(p, m);
    if (m >= 2 && sum == BigInt(static_cast<int64_t>(k0))) return;
    if (sum > BigInt(static_cast<int64_t>(k0)))
      throw InvalidInput(
          "k0 must be 0 or p + p^2 + ... + p^m; got " +
          std::to_string(k0));
  }
}

}  // namespace

ConstructionResult construct_with_n_antis(Prime p, uint64_t n, uint64_t k0) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  require_valid_k0(p, k0);

  B0Result bs = construct_b0(p, n, k0);
  BigInt a0 = construct_a0(p, n, k0, bs.b0, bs.c_list);

  ConstructionResult out;
  out.p = p.value();
  out.n = n;
  out.k0 = k0;
  out.c_list = std::move(bs.c_list);
  out.b0 = bs.b0;
  out.a0 = a0;
  out.x0 = StandardForm{p.value(), std::move(a0), std::move(bs.b0), k0};
  out.y = dp_standard(out.x0);

  // the promised-count check: independent enumeration must find exactly n
  const size_t found = count_anti(p, out.y);
  if (found != n)
    throw VerificationFailure(
        "construction promised " + std::to_string(n) +
        " anti-partial derivatives but enumeration found " +
        std::to_string(found));
  return out;
}

}  // namespace apd
