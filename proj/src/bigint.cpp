#include "apd/bigint.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>

#include "apd/error.hpp"

namespace apd {

namespace size_guard {

namespace {
std::atomic<uint64_t> g_max_bits{uint64_t{1} << 20};
}

uint64_t max_bits() { return g_max_bits.load(std::memory_order_relaxed); }

void set_max_bits(uint64_t bits) {
  g_max_bits.store(bits, std::memory_order_relaxed);
}

void require_bits(uint64_t bits) {
  const uint64_t limit = max_bits();
  if (bits > limit) throw TooLarge(bits, limit);
}

}  // namespace size_guard

namespace {
constexpr uint64_t kBase = uint64_t{1} << 32;
}

BigInt::BigInt(int64_t v) {
  negative_ = v < 0;
  // avoids overflow at INT64_MIN
  uint64_t mag = negative_ ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
  while (mag != 0) {
    limbs_.push_back(static_cast<uint32_t>(mag));
    mag >>= 32;
  }
  if (limbs_.empty()) negative_ = false;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

uint64_t BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  return uint64_t{32} * (limbs_.size() - 1) +
         (32 - std::countl_zero(limbs_.back()));
}

uint64_t BigInt::trailing_zero_bits() const {
  if (limbs_.empty()) return 0;
  uint64_t n = 0;
  for (uint32_t limb : limbs_) {
    if (limb == 0) {
      n += 32;
    } else {
      n += std::countr_zero(limb);
      break;
    }
  }
  return n;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() > 2) return false;
  if (limbs_.size() < 2) return true;
  uint64_t mag = (uint64_t{limbs_[1]} << 32) | limbs_[0];
  return negative_ ? mag <= (uint64_t{1} << 63) : mag < (uint64_t{1} << 63);
}

int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw InvalidInput("integer does not fit in 64 bits: " + to_decimal());
  uint64_t mag = 0;
  if (limbs_.size() > 1) mag = uint64_t{limbs_[1]} << 32;
  if (!limbs_.empty()) mag |= limbs_[0];
  return negative_ ? -static_cast<int64_t>(mag - 1) - 1 : static_cast<int64_t>(mag);
}

bool BigInt::fits_uint64() const { return !negative_ && limbs_.size() <= 2; }

uint64_t BigInt::to_uint64() const {
  if (!fits_uint64()) throw InvalidInput("integer does not fit in uint64: " + to_decimal());
  uint64_t mag = 0;
  if (limbs_.size() > 1) mag = uint64_t{limbs_[1]} << 32;
  if (!limbs_.empty()) mag |= limbs_[0];
  return mag;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.negative_ = !r.negative_;
  return r;
}

int BigInt::compare_magnitude(const std::vector<uint32_t>& a,
                              const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

void BigInt::add_magnitude(std::vector<uint32_t>& acc,
                           const std::vector<uint32_t>& b) {
  if (b.size() > acc.size()) acc.resize(b.size(), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < acc.size(); ++i) {
    uint64_t sum = carry + acc[i] + (i < b.size() ? b[i] : 0);
    acc[i] = static_cast<uint32_t>(sum);
    carry = sum >> 32;
  }
  if (carry) acc.push_back(static_cast<uint32_t>(carry));
}

void BigInt::sub_magnitude(std::vector<uint32_t>& acc,
                           const std::vector<uint32_t>& b) {
  int64_t borrow = 0;
  for (size_t i = 0; i < acc.size(); ++i) {
    int64_t diff = static_cast<int64_t>(acc[i]) - borrow -
                   (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
    borrow = diff < 0;
    if (diff < 0) diff += static_cast<int64_t>(kBase);
    acc[i] = static_cast<uint32_t>(diff);
  }
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
  if (negative_ == rhs.negative_) {
    add_magnitude(limbs_, rhs.limbs_);
  } else {
    int c = compare_magnitude(limbs_, rhs.limbs_);
    if (c == 0) {
      limbs_.clear();
      negative_ = false;
    } else if (c > 0) {
      sub_magnitude(limbs_, rhs.limbs_);
    } else {
      std::vector<uint32_t> tmp = rhs.limbs_;
      sub_magnitude(tmp, limbs_);
      limbs_ = std::move(tmp);
      negative_ = rhs.negative_;
    }
    trim();
  }
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
  // cheap negate-and-add; rhs copied only when signs force the swap path
  BigInt neg = -rhs;
  return *this += neg;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
  if (limbs_.empty() || rhs.limbs_.empty()) {
    limbs_.clear();
    negative_ = false;
    return *this;
  }
  size_guard::require_bits(bit_length() + rhs.bit_length());
  const std::vector<uint32_t>& a = limbs_;
  const std::vector<uint32_t>& b = rhs.limbs_;
  std::vector<uint32_t> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    const uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = out[i + j] + ai * b[j] + carry;
      out[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    out[i + b.size()] = static_cast<uint32_t>(carry);
  }
  limbs_ = std::move(out);
  negative_ = negative_ != rhs.negative_;
  trim();
  return *this;
}

// Knuth algorithm D on 32-bit limbs (Hacker's Delight divmnu).
// Requires v.size() >= 2 and |u| >= |v|.
void BigInt::divmod_magnitude(const std::vector<uint32_t>& u,
                              const std::vector<uint32_t>& v,
                              std::vector<uint32_t>& q,
                              std::vector<uint32_t>& r) {
  const size_t n = v.size();
  const size_t m = u.size();
  const unsigned s = std::countl_zero(v[n - 1]);

  std::vector<uint32_t> vn(n);
  for (size_t i = n - 1; i > 0; --i)
    vn[i] = (v[i] << s) | (s ? static_cast<uint32_t>(uint64_t{v[i - 1]} >> (32 - s)) : 0);
  vn[0] = v[0] << s;

  std::vector<uint32_t> un(m + 1);
  un[m] = s ? static_cast<uint32_t>(uint64_t{u[m - 1]} >> (32 - s)) : 0;
  for (size_t i = m - 1; i > 0; --i)
    un[i] = (u[i] << s) | (s ? static_cast<uint32_t>(uint64_t{u[i - 1]} >> (32 - s)) : 0);
  un[0] = u[0] << s;

  q.assign(m - n + 1, 0);
  for (size_t j = m - n + 1; j-- > 0;) {
    uint64_t num = (uint64_t{un[j + n]} << 32) | un[j + n - 1];
    uint64_t qhat = num / vn[n - 1];
    uint64_t rhat = num % vn[n - 1];
    while (qhat >= kBase ||
           qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
      --qhat;
      rhat += vn[n - 1];
      if (rhat >= kBase) break;
    }

    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t prod = qhat * vn[i] + carry;
      carry = prod >> 32;
      int64_t t = static_cast<int64_t>(un[i + j]) - borrow -
                  static_cast<int64_t>(prod & 0xFFFFFFFFu);
      borrow = t < 0;
      if (t < 0) t += static_cast<int64_t>(kBase);
      un[i + j] = static_cast<uint32_t>(t);
    }
    int64_t t = static_cast<int64_t>(un[j + n]) - borrow -
                static_cast<int64_t>(carry);
    un[j + n] = static_cast<uint32_t>(t);
    q[j] = static_cast<uint32_t>(qhat);

    if (t < 0) {  // add back, rare
      --q[j];
      uint64_t c = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t sum = uint64_t{un[i + j]} + vn[i] + c;
        un[i + j] = static_cast<uint32_t>(sum);
        c = sum >> 32;
      }
      un[j + n] = static_cast<uint32_t>(un[j + n] + c);
    }
  }

  r.assign(n, 0);
  for (size_t i = 0; i < n; ++i)
    r[i] = (un[i] >> s) | (s ? static_cast<uint32_t>(uint64_t{un[i + 1]} << (32 - s)) : 0);
}

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot,
                    BigInt& rem) {
  if (den.limbs_.empty()) throw InvalidInput("division by zero");
  int c = compare_magnitude(num.limbs_, den.limbs_);
  if (c < 0) {
    rem = num;
    quot = BigInt();
    return;
  }
  const bool qneg = num.negative_ != den.negative_;
  const bool rneg = num.negative_;
  BigInt q, r;
  if (den.limbs_.size() == 1) {
    const uint64_t d = den.limbs_[0];
    q.limbs_.assign(num.limbs_.size(), 0);
    uint64_t carry = 0;
    for (size_t i = num.limbs_.size(); i-- > 0;) {
      uint64_t cur = (carry << 32) | num.limbs_[i];
      q.limbs_[i] = static_cast<uint32_t>(cur / d);
      carry = cur % d;
    }
    if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
  } else if (c == 0) {
    q = BigInt(1);
  } else {
    divmod_magnitude(num.limbs_, den.limbs_, q.limbs_, r.limbs_);
  }
  q.trim();
  r.trim();
  q.negative_ = !q.limbs_.empty() && qneg;
  r.negative_ = !r.limbs_.empty() && rneg;
  quot = std::move(q);
  rem = std::move(r);
}

BigInt BigInt::operator/(const BigInt& rhs) const {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& rhs) const {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  return r;
}

bool BigInt::divisible_by(const BigInt& den) const {
  if (den.limbs_.empty()) throw InvalidInput("division by zero");
  if (limbs_.empty()) return true;
  if (den.limbs_.size() == 1) return magnitude_mod(den.limbs_[0]) == 0;
  BigInt q, r;
  divmod(*this, den, q, r);
  return r.is_zero();
}

uint64_t BigInt::magnitude_mod(uint64_t m) const {
  if (m == 0) throw InvalidInput("modulus must be nonzero");
  if (m == 1) return 0;
  unsigned __int128 r = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    r = ((r << 32) | limbs_[i]) % m;
  }
  return static_cast<uint64_t>(r);
}

BigInt BigInt::shifted_left(uint64_t bits) const {
  if (limbs_.empty() || bits == 0) return *this;
  size_guard::require_bits(bit_length() + bits);
  const uint64_t limb_shift = bits / 32;
  const unsigned bit_shift = static_cast<unsigned>(bits % 32);
  BigInt out;
  out.negative_ = negative_;
  out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t v = uint64_t{limbs_[i]} << bit_shift;
    out.limbs_[i + limb_shift] |= static_cast<uint32_t>(v);
    out.limbs_[i + limb_shift + 1] |= static_cast<uint32_t>(v >> 32);
  }
  out.trim();
  return out;
}

BigInt BigInt::shifted_right(uint64_t bits) const {
  if (limbs_.empty() || bits == 0) return *this;
  const uint64_t limb_shift = bits / 32;
  if (limb_shift >= limbs_.size()) return BigInt();
  const unsigned bit_shift = static_cast<unsigned>(bits % 32);
  BigInt out;
  out.limbs_.assign(limbs_.size() - limb_shift, 0);
  for (size_t i = 0; i < out.limbs_.size(); ++i) {
    uint64_t v = uint64_t{limbs_[i + limb_shift]} >> bit_shift;
    if (bit_shift && i + limb_shift + 1 < limbs_.size())
      v |= uint64_t{limbs_[i + limb_shift + 1]} << (32 - bit_shift);
    out.limbs_[i] = static_cast<uint32_t>(v);
  }
  out.trim();
  out.negative_ = !out.limbs_.empty() && negative_;
  return out;
}

std::strong_ordering BigInt::operator<=>(const BigInt& rhs) const {
  if (negative_ != rhs.negative_)
    return negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
  int c = compare_magnitude(limbs_, rhs.limbs_);
  if (negative_) c = -c;
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt BigInt::power(uint64_t base, uint64_t exponent) {
  if (base == 0) return exponent == 0 ? BigInt(1) : BigInt();
  if (base == 1 || exponent == 0) return BigInt(1);
  // ceil(e*log2(base)) bounded; the long double slack is irrelevant for a guard
  const long double est = static_cast<long double>(exponent) *
                          std::log2(static_cast<long double>(base));
  if (est > static_cast<long double>(size_guard::max_bits()))
    throw TooLarge(static_cast<uint64_t>(est), size_guard::max_bits());
  size_guard::require_bits(static_cast<uint64_t>(est) + 2);
  if (base == 2) return BigInt(1).shifted_left(exponent);

  BigInt result(1);
  BigInt sq(static_cast<int64_t>(base));
  uint64_t e = exponent;
  while (true) {
    if (e & 1) result *= sq;
    e >>= 1;
    if (e == 0) break;
    sq *= sq;
  }
  return result;
}

BigInt BigInt::power(uint64_t base, const BigInt& exponent) {
  if (exponent.is_negative())
    throw InvalidInput("negative exponent");
  if (base >= 2 && !exponent.fits_uint64())
    throw TooLarge("size guard exceeded: a " +
                   std::to_string(exponent.bit_length()) +
                   "-bit exponent is beyond any representable bit count");
  if (base < 2) return power(base, exponent.is_zero() ? 0 : 1);
  return power(base, exponent.to_uint64());
}

BigInt BigInt::from_decimal(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw InvalidInput("empty integer literal");
  for (char ch : s)
    if (ch < '0' || ch > '9')
      throw InvalidInput("bad digit in integer literal: '" + std::string(text) + "'");
  // log2(10) < 3.33
  size_guard::require_bits(s.size() * 10 / 3 + 8);

  BigInt out;
  size_t i = s.size() % 9;
  if (i) {
    uint32_t chunk = 0;
    for (size_t j = 0; j < i; ++j) chunk = chunk * 10 + (s[j] - '0');
    out += BigInt(chunk);
  }
  for (; i + 9 <= s.size(); i += 9) {
    uint32_t chunk = 0;
    for (size_t j = 0; j < 9; ++j) chunk = chunk * 10 + (s[i + j] - '0');
    out *= BigInt(1000000000);
    out += BigInt(chunk);
  }
  if (neg && !out.limbs_.empty()) out.negative_ = true;
  return out;
}

std::string BigInt::to_decimal() const {
  if (limbs_.empty()) return "0";
  std::vector<uint32_t> chunks;
  std::vector<uint32_t> cur = limbs_;
  while (!cur.empty()) {
    uint64_t rem = 0;
    for (size_t i = cur.size(); i-- > 0;) {
      uint64_t v = (rem << 32) | cur[i];
      cur[i] = static_cast<uint32_t>(v / 1000000000u);
      rem = v % 1000000000u;
    }
    while (!cur.empty() && cur.back() == 0) cur.pop_back();
    chunks.push_back(static_cast<uint32_t>(rem));
  }
  std::string out;
  if (negative_) out.push_back('-');
  out += std::to_string(chunks.back());
  for (size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out.append(9 - part.size(), '0');
    out += part;
  }
  return out;
}

}  // namespace apd
