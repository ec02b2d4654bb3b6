#include "apd/serialize.hpp"

#include <cmath>

#include "apd/error.hpp"

namespace apd {

std::string digits_estimate(const PSplit& v) {
  // digits(|unit|) + floor(exponent * log10(p)), integer arithmetic on a
  // 10^-12-scaled log so towering exponents stay exact enough
  const uint64_t scaled_log =
      static_cast<uint64_t>(std::log10(static_cast<long double>(v.p)) * 1e12L);
  BigInt extra = (v.exponent * BigInt(static_cast<int64_t>(scaled_log))) /
                 BigInt(1000000000000LL);
  size_t unit_digits = v.unit.abs().to_decimal().size();
  return (extra + BigInt(static_cast<int64_t>(unit_digits))).to_decimal();
}

ordered_json value_json(const PSplit& v) {
  try {
    return v.materialize().to_decimal();
  } catch (const TooLarge&) {
    ordered_json obj;
    obj["form"] = v.exponent.is_zero() ? v.unit.to_decimal() : to_text(to_standard(v));
    obj["digits"] = digits_estimate(v);
    return obj;
  }
}

ordered_json to_json(const StandardForm& f) {
  ordered_json obj;
  obj["a"] = f.a.to_decimal();
  obj["b"] = f.b.to_decimal();
  obj["k"] = f.k;
  obj["form"] = to_text(f);
  try {
    obj["value"] = f.materialize().to_decimal();
  } catch (const TooLarge&) {
    obj["digits"] = digits_estimate(from_standard(f));
  }
  return obj;
}

ordered_json to_json(const IncProfile& profile) {
  ordered_json obj;
  obj["p"] = profile.p;
  obj["ell"] = profile.ell.to_decimal();
  obj["prefix_len"] = profile.prefix_len;
  ordered_json segs = ordered_json::array();
  for (const SegmentSpec& s : profile.segments) {
    ordered_json seg;
    seg["k"] = s.k;
    seg["head"] = s.head;
    seg["run_len"] = s.run_len;
    segs.push_back(std::move(seg));
  }
  obj["segments"] = std::move(segs);
  obj["period"] = profile.period;
  return obj;
}

ordered_json to_json(const AntiSet& s) {
  ordered_json obj;
  obj["p"] = s.p;
  obj["y"] = value_json(s.target);
  obj["count"] = s.count();
  ordered_json members = ordered_json::array();
  for (const StandardForm& m : s.members) members.push_back(to_json(m));
  obj["members"] = std::move(members);
  if (!s.members.empty()) obj["primitive"] = s.primitive_index;
  ordered_json cs = ordered_json::array();
  for (const BigInt& c : s.c_values) cs.push_back(c.to_decimal());
  obj["c_values"] = std::move(cs);
  return obj;
}

ordered_json to_json(const ConstructionResult& r) {
  ordered_json obj;
  obj["p"] = r.p;
  obj["n"] = r.n;
  obj["k0"] = r.k0;
  ordered_json cs = ordered_json::array();
  for (const BigInt& c : r.c_list) cs.push_back(c.to_decimal());
  obj["c_list"] = std::move(cs);
  obj["b0"] = r.b0.to_decimal();
  obj["a0"] = r.a0.to_decimal();
  obj["x0"] = to_json(r.x0);
  obj["y"] = value_json(r.y);
  obj["count"] = r.n;
  return obj;
}

ordered_json to_json(const OrdSequence& seq) {
  ordered_json terms = ordered_json::array();
  for (const ExtNat& t : seq.terms) terms.push_back(t.to_string());
  ordered_json obj;
  obj["terms"] = std::move(terms);
  obj["truncated_at"] = seq.truncated_at;
  return obj;
}

ordered_json to_json(const OrbitClass& c) {
  ordered_json obj;
  obj["class"] = to_string(c.kind);
  if (c.kind == OrbitKind::FixedPoint) {
    if (c.fixed_point)
      obj["fixed_point"] = value_json(*c.fixed_point);
    else
      obj["fixed_point"] = nullptr;
  }
  return obj;
}

}  // namespace apd
