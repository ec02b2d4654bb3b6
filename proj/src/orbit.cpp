#include "apd/orbit.hpp"

#include <utility>

#include "apd/error.hpp"

namespace apd {

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::Zero: return "zero";
    case OrbitKind::FixedPoint: return "fixed-point";
    case OrbitKind::DivergesPositive: return "diverges-positive";
    case OrbitKind::DivergesNegative: return "diverges-negative";
  }
  return "?";
}

BigInt ord_step(Prime p, const BigInt& ell) {
  if (ell < 1) throw InvalidInput("ord_step requires ell >= 1");
  return ell - BigInt(1) + ord(p, ell).finite();
}

OrdSequence ord_sequence(Prime p, const PSplit& x, uint64_t terms) {
  if (terms < 1) throw InvalidInput("terms must be >= 1");
  OrdSequence out;
  out.truncated_at = terms;
  out.terms.reserve(terms);
  BigInt e = x.exponent;
  bool dead = false;  // once D_p hit 0, every later valuation is infinite
  for (uint64_t i = 0; i < terms; ++i) {
    if (dead) {
      out.terms.push_back(ExtNat::infinity());
      continue;
    }
    out.terms.push_back(ExtNat(e));
    if (e.is_zero()) {
      dead = true;
    } else {
      e = ord_step(p, e);
    }
  }
  return out;
}

OrdSequence ord_sequence(Prime p, const BigInt& x, uint64_t terms) {
  if (terms < 1) throw InvalidInput("terms must be >= 1");
  if (x.is_zero()) {
    OrdSequence out;
    out.truncated_at = terms;
    out.terms.assign(terms, ExtNat::infinity());
    return out;
  }
  return ord_sequence(p, psplit(p, x), terms);
}

SegmentSpec segment(Prime p, uint64_t k) {
  if (k < 1) throw InvalidInput("segment requires k >= 1");
  return SegmentSpec{k, k - 1, (k - 1) % p.value()};
}

LChain lchain(Prime p, const BigInt& ell) {
  if (ell < BigInt(static_cast<int64_t>(p.value())))
    throw InvalidInput("lchain requires ell >= p");
  LChain out;
  out.ell = ell;
  // ell_1 = ord_p(pfloor(ell)); pfloor(ell) >= p so the ord is finite >= 1
  uint64_t step = ord(p, pfloor(p, ell)).finite().to_uint64();
  out.steps.push_back(step);
  while (step > p.value()) {
    BigInt prev(static_cast<int64_t>(step - 1));
    step = ord(p, pfloor(p, prev)).finite().to_uint64();
    out.steps.push_back(step);
  }
  return out;
}

IncProfile inc_profile(Prime p, const BigInt& ell) {
  LChain chain = lchain(p, ell);  // validates ell >= p
  IncProfile out;
  out.p = p.value();
  out.ell = ell;
  out.prefix_len = mod_floored(p, ell);
  out.segments.reserve(chain.steps.size());
  for (uint64_t k : chain.steps) out.segments.push_back(segment(p, k));
  out.period = chain.steps.back();
  return out;
}

std::string IncProfile::to_text() const {
  std::string s = "prefix=" + std::to_string(prefix_len);
  for (const SegmentSpec& seg : segments)
    s += "; S(" + std::to_string(seg.k) + ")[" + std::to_string(seg.run_len) + "]";
  s += "; tail=S(" + std::to_string(segments.back().k) +
       ") period=" + std::to_string(period);
  return s;
}

std::vector<int64_t> unroll(const IncProfile& profile, size_t terms) {
  std::vector<int64_t> out;
  out.reserve(terms);
  for (uint64_t i = 0; i < profile.prefix_len && out.size() < terms; ++i)
    out.push_back(-1);
  size_t seg_idx = 0;
  while (out.size() < terms) {
    const SegmentSpec& seg =
        profile.segments[std::min(seg_idx, profile.segments.size() - 1)];
    out.push_back(static_cast<int64_t>(seg.head));
    for (uint64_t i = 0; i < seg.run_len && out.size() < terms; ++i)
      out.push_back(-1);
    ++seg_idx;
  }
  return out;
}

uint64_t period(Prime p, const PSplit& x) {
  if (x.exponent < BigInt(static_cast<int64_t>(p.value()))) return 1;
  return inc_profile(p, x.exponent).period;
}

uint64_t period(Prime p, const BigInt& x) {
  if (x.is_zero()) return 1;
  return period(p, psplit(p, x));
}

OrbitClass classify(Prime p, const PSplit& x, bool require_value) {
  const BigInt pbig(static_cast<int64_t>(p.value()));
  if (x.exponent < pbig) return OrbitClass{OrbitKind::Zero, std::nullopt};

  IncProfile profile = inc_profile(p, x.exponent);
  // steps to the start of the repeating S_{ell_N} block
  uint64_t steps = profile.prefix_len;
  for (size_t j = 0; j + 1 < profile.segments.size(); ++j)
    steps += profile.segments[j].length();

  // advance; the exponent recursion is cheap, the coefficient may overflow
  // the guard, in which case the class survives without the landed value
  BigInt e = x.exponent;
  std::optional<BigInt> unit = x.unit;
  for (uint64_t i = 0; i < steps; ++i) {
    if (unit) {
      try {
        StandardForm f = to_standard(PSplit{p.value(), *unit, e});
        unit = *unit * f.b;
      } catch (const TooLarge&) {
        if (require_value) throw;
        unit.reset();
      }
    }
    e = ord_step(p, e);
  }
  if (e == pbig) {
    std::optional<PSplit> landed;
    if (unit) landed = PSplit{p.value(), std::move(*unit), e};
    return OrbitClass{OrbitKind::FixedPoint, std::move(landed)};
  }
  return OrbitClass{x.unit.is_negative() ? OrbitKind::DivergesNegative
                                         : OrbitKind::DivergesPositive,
                    std::nullopt};
}

OrbitClass classify(Prime p, const BigInt& x, bool require_value) {
  if (x.is_zero()) return OrbitClass{OrbitKind::Zero, std::nullopt};
  return classify(p, psplit(p, x), require_value);
}

BigInt reverse_construct(Prime p, const std::vector<uint64_t>& i) {
  if (i.size() < 2)
    throw InvalidInput("reverse_construct needs at least i_0 and i_1 (N >= 1)");
  for (uint64_t ij : i)
    if (ij >= p.value())
      throw InvalidInput("each i_j must lie in [0, p-1], got " +
                         std::to_string(ij));
  // k_N = i_N + 1; k_j = p^(k_{j+1}) + i_j + 1; ell = k_0 - 1.
  // power() checks the bit bound before allocating each tower level.
  BigInt k(static_cast<int64_t>(i.back() + 1));
  for (size_t j = i.size() - 1; j-- > 0;) {
    k = BigInt::power(p, k) + BigInt(static_cast<int64_t>(i[j])) + BigInt(1);
  }
  return k - BigInt(1);
}

}  // namespace apd
