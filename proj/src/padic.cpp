#include "apd/padic.hpp"

#include <utility>

#include "apd/error.hpp"

namespace apd {

const BigInt& ExtNat::finite() const {
  if (!value_) throw InvalidInput("value is infinite");
  return *value_;
}

std::string ExtNat::to_string() const {
  return value_ ? value_->to_decimal() : "inf";
}

std::strong_ordering ExtNat::operator<=>(const ExtNat& rhs) const {
  if (is_infinite() && rhs.is_infinite()) return std::strong_ordering::equal;
  if (is_infinite()) return std::strong_ordering::greater;
  if (rhs.is_infinite()) return std::strong_ordering::less;
  return *value_ <=> *rhs.value_;
}

BigInt PSplit::materialize() const {
  return unit * BigInt::power(p, exponent);
}

BigInt StandardForm::exponent() const { return b * BigInt::power(p, k); }

BigInt StandardForm::materialize() const {
  return a * BigInt::power(p, exponent());
}

namespace {

// (valuation, x / p^valuation) for nonzero x. Strips whole u64-sized chunks
// of p's at a time so that huge valuations stay near-linear.
std::pair<uint64_t, BigInt> strip_p(uint64_t p, const BigInt& x) {
  if (p == 2) {
    uint64_t v = x.trailing_zero_bits();
    return {v, x.shifted_right(v)};
  }
  if (x.fits_int64()) {
    int64_t cur = x.to_int64();
    uint64_t v = 0;
    while (cur % static_cast<int64_t>(p) == 0) {
      cur /= static_cast<int64_t>(p);
      ++v;
    }
    return {v, BigInt(cur)};
  }

  uint64_t chunk_exp = 1;
  uint64_t chunk = p;
  while (chunk <= (uint64_t{1} << 62) / p) {
    chunk *= p;
    ++chunk_exp;
  }
  uint64_t v = 0;
  BigInt cur = x;
  BigInt q, r;
  const BigInt chunk_b(static_cast<int64_t>(chunk));
  while (cur.magnitude_mod(chunk) == 0) {
    BigInt::divmod(cur, chunk_b, q, r);
    cur = std::move(q);
    v += chunk_exp;
  }
  const BigInt pb(static_cast<int64_t>(p));
  while (cur.magnitude_mod(p) == 0) {
    BigInt::divmod(cur, pb, q, r);
    cur = std::move(q);
    ++v;
  }
  return {v, std::move(cur)};
}

}  // namespace

ExtNat ord(Prime p, const BigInt& x) {
  if (x.is_zero()) return ExtNat::infinity();
  return ExtNat(BigInt(static_cast<int64_t>(strip_p(p, x).first)));
}

uint64_t mod_floored(Prime p, const BigInt& x) {
  uint64_t m = x.magnitude_mod(p);
  if (x.is_negative() && m != 0) m = p - m;
  return m;
}

BigInt pfloor(Prime p, const BigInt& x) {
  return x - BigInt(static_cast<int64_t>(mod_floored(p, x)));
}

BigInt dp(Prime p, const BigInt& x) {
  if (x.is_zero()) return BigInt();
  auto [v, rest] = strip_p(p, x);
  if (v == 0) return BigInt();
  // (x/p) * ord = rest * p^(v-1) * v
  return rest * BigInt::power(p, v - 1) * BigInt(static_cast<int64_t>(v));
}

BigInt d_full(const BigInt& x, uint64_t trial_bound) {
  if (x.is_zero()) return BigInt();
  BigInt mag = x.abs();
  if (mag == 1) return BigInt();

  BigInt acc;  // sum of ord_p(x) * (|x| / p)
  BigInt rest = mag;
  auto take_factor = [&](uint64_t f) {
    auto [v, stripped] = strip_p(f, rest);
    if (v == 0) return;
    rest = std::move(stripped);
    acc += (mag / BigInt(static_cast<int64_t>(f))) *
           BigInt(static_cast<int64_t>(v));
  };

  take_factor(2);
  take_factor(3);
  for (uint64_t d = 5; d <= trial_bound; d += 6) {
    BigInt dsq(static_cast<int64_t>(d) * static_cast<int64_t>(d));
    if (dsq > rest) break;
    take_factor(d);
    take_factor(d + 2);
  }
  if (rest > 1) {
    if (rest.fits_uint64() && is_prime_u64(rest.to_uint64())) {
      acc += mag / rest;
    } else {
      throw FactorBoundExceeded(
          "trial division bound " + std::to_string(trial_bound) +
          " hit with composite cofactor " + rest.to_decimal());
    }
  }
  return x.is_negative() ? -acc : acc;
}

PSplit psplit(Prime p, const BigInt& x) {
  if (x.is_zero()) throw InvalidInput("psplit requires a nonzero value");
  auto [v, unit] = strip_p(p, x);
  return PSplit{p, std::move(unit), BigInt(static_cast<int64_t>(v))};
}

StandardForm to_standard(const PSplit& s) {
  if (s.exponent < 1)
    throw InvalidInput("standard form requires ord_p(x) >= 1");
  Prime checked(s.p);
  auto [k, b] = strip_p(checked.value(), s.exponent);
  return StandardForm{s.p, s.unit, std::move(b), k};
}

PSplit from_standard(const StandardForm& f) {
  return PSplit{f.p, f.a, f.exponent()};
}

PSplit dp_standard(const StandardForm& x) {
  // D_p(a*p^(b*p^k)) = (a*b) * p^(b*p^k + k - 1)
  BigInt e = x.exponent() + BigInt(static_cast<int64_t>(x.k)) - BigInt(1);
  return PSplit{x.p, x.a * x.b, std::move(e)};
}

std::string to_text(const StandardForm& f) {
  const std::string p = std::to_string(f.p);
  return f.a.to_decimal() + "*" + p + "^(" + f.b.to_decimal() + "*" + p + "^" +
         std::to_string(f.k) + ")";
}

namespace {

std::string_view take_int(std::string_view& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == start)
    throw InvalidInput("expected an integer in standard-form string at '" +
                       std::string(s.substr(0, 8)) + "'");
  std::string_view tok = s.substr(0, i);
  s.remove_prefix(i);
  return tok;
}

void expect_char(std::string_view& s, char c) {
  if (s.empty() || s[0] != c)
    throw InvalidInput(std::string("expected '") + c +
                       "' in standard-form string at '" +
                       std::string(s.substr(0, 8)) + "'");
  s.remove_prefix(1);
}

}  // namespace

StandardForm parse_standard_form(std::string_view text) {
  std::string_view s = text;
  BigInt a = BigInt::from_decimal(take_int(s));
  expect_char(s, '*');
  BigInt p1 = BigInt::from_decimal(take_int(s));
  expect_char(s, '^');
  expect_char(s, '(');
  BigInt b = BigInt::from_decimal(take_int(s));
  expect_char(s, '*');
  BigInt p2 = BigInt::from_decimal(take_int(s));
  expect_char(s, '^');
  BigInt k = BigInt::from_decimal(take_int(s));
  expect_char(s, ')');
  if (!s.empty())
    throw InvalidInput("trailing characters after standard form: '" +
                       std::string(s) + "'");

  if (p1 != p2)
    throw InvalidInput("the two p's in '" + std::string(text) +
                       "' disagree: " + p1.to_decimal() + " vs " + p2.to_decimal());
  if (!p1.fits_uint64()) throw InvalidInput("p out of range: " + p1.to_decimal());
  Prime p(p1.to_uint64());
  if (!k.fits_uint64() || k.is_negative())
    throw TooLarge("k = " + k.to_decimal() + " is beyond the machine-word range");
  StandardForm f{p.value(), std::move(a), std::move(b), k.to_uint64()};
  if (f.a.is_zero()) throw InvalidInput("a must be nonzero in '" + std::string(text) + "'");
  if (f.b.sign() <= 0) throw InvalidInput("b must be positive in '" + std::string(text) + "'");
  if (f.a.magnitude_mod(p) == 0 || f.b.magnitude_mod(p) == 0)
    throw InvalidInput("standard form requires p to divide neither a nor b: '" +
                       std::string(text) + "'");
  return f;
}

ParsedValue parse_value(std::string_view text, std::optional<uint64_t> expect_p) {
  ParsedValue out;
  if (text.find('*') == std::string_view::npos &&
      text.find('^') == std::string_view::npos) {
    out.plain = BigInt::from_decimal(text);
    return out;
  }
  StandardForm f = parse_standard_form(text);
  if (expect_p && *expect_p != f.p)
    throw InvalidInput("--p " + std::to_string(*expect_p) +
                       " disagrees with the p embedded in '" + std::string(text) + "'");
  out.form = std::move(f);
  return out;
}

}  // namespace apd
