// Acceptance suite: every release criterion at its stated tolerance, one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "apd/antideriv.hpp"
#include "apd/error.hpp"
#include "apd/oracle.hpp"
#include "apd/orbit.hpp"
#include "apd/padic.hpp"

using namespace apd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }
};

BigInt random_digits(std::mt19937_64& rng, size_t digits) {
  std::string s;
  s.push_back('1' + static_cast<char>(rng() % 9));
  for (size_t i = 1; i < digits; ++i)
    s.push_back('0' + static_cast<char>(rng() % 10));
  return BigInt::from_decimal(s);
}

// shared between criteria 2 and 9
std::vector<oracle::SweepReport> g_sweeps;

Outcome criterion1_known_values() {
  Outcome out;
  if (d_full(BigInt(72)) != BigInt(156)) out.fail("D(72) != 156");
  if (d_full(BigInt(1647082)) != BigInt(823543)) out.fail("D(1647082) != 823543");
  if (BigInt::power(7, 7) != BigInt(823543)) out.fail("823543 != 7^7");
  out.detail = "D(72)=156, D(1647082)=823543=7^7";
  return out;
}

Outcome criterion2_oracle_equivalence() {
  Outcome out;
  size_t checked = 0;
  g_sweeps.clear();
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    oracle::SweepOptions opts;
    opts.jobs = 1;  // the budget is stated single-threaded
    oracle::SweepReport report = oracle::sweep_invert(Prime(p), 10000, opts);
    oracle::compare_with_analytic(report);
    checked += 20000;
    if (!report.mismatches.empty())
      out.fail("p=" + std::to_string(p) + ": " +
               std::to_string(report.mismatches.size()) + " mismatches, first y=" +
               std::to_string(report.mismatches.front().y));
    g_sweeps.push_back(std::move(report));
  }
  if (out.pass) out.detail = std::to_string(checked) + " targets, 0 mismatches";
  return out;
}

Outcome check_orbit_for(Prime p, const BigInt& ell, Outcome& out) {
  IncProfile profile = inc_profile(p, ell);
  const uint64_t terms = 4 * p.value() + profile.prefix_len;
  oracle::IncCheckReport r = oracle::check_inc_prediction(p, ell, terms);
  if (!r.pass) {
    std::string lines = "p=" + std::to_string(p.value()) + " ell=" + ell.to_decimal() +
                        " diverges at " + std::to_string(r.first_divergence) +
                        "\npredicted:";
    for (int64_t t : r.predicted) lines += ' ' + std::to_string(t);
    lines += "\nsimulated:";
    for (int64_t t : r.simulated) lines += ' ' + std::to_string(t);
    out.fail(lines);
    return out;
  }

  // measured minimal tail period over three cycles must equal ell_N <= p
  if (profile.period > p.value())
    out.fail("period " + std::to_string(profile.period) + " > p");
  size_t lead = profile.prefix_len;
  for (size_t j = 0; j + 1 < profile.segments.size(); ++j)
    lead += profile.segments[j].length();
  OrdSequence seq = ord_sequence(p, PSplit{p.value(), BigInt(1), ell},
                                 lead + 4 * profile.period + 1);
  uint64_t measured = 0;
  for (uint64_t d = 1; d <= profile.period && measured == 0; ++d) {
    bool ok = true;
    for (size_t i = lead; i + d < seq.terms.size() && ok; ++i)
      ok = seq.terms[i] == seq.terms[i + d];
    if (ok) measured = d;
  }
  if (measured != profile.period)
    out.fail("p=" + std::to_string(p.value()) + " ell=" + ell.to_decimal() +
             ": measured tail period " + std::to_string(measured) + " != ell_N " +
             std::to_string(profile.period));
  return out;
}

Outcome criterion3_orbit_structure() {
  Outcome out;
  std::mt19937_64 rng(2024);
  size_t checked = 0;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    Prime prime(p);
    for (uint64_t ell = p; ell <= 10000 && out.pass; ++ell) {
      check_orbit_for(prime, BigInt(static_cast<int64_t>(ell)), out);
      ++checked;
    }
    for (int t = 0; t < 100 && out.pass; ++t) {
      check_orbit_for(prime, random_digits(rng, 500), out);
      ++checked;
    }
  }
  if (out.pass)
    out.detail = std::to_string(checked) + " exponents, prediction == simulation";
  return out;
}

Outcome criterion4_classification() {
  Outcome out;
  size_t checked = 0;
  for (uint64_t p : {2ull, 3ull}) {
    Prime prime(p);
    for (int64_t mag = 1; mag <= 10000 && out.pass; ++mag) {
      for (int64_t x : {mag, -mag}) {
        OrbitClass cls = classify(prime, BigInt(x), true);
        std::vector<BigInt> orbit = oracle::simulate_literal(prime, BigInt(x), 30);
        ++checked;
        auto bad = [&](const std::string& why) {
          out.fail("p=" + std::to_string(p) + " x=" + std::to_string(x) + ": " + why);
        };
        switch (cls.kind) {
          case OrbitKind::Zero:
            if (!orbit.back().is_zero()) bad("classified zero, orbit nonzero");
            break;
          case OrbitKind::FixedPoint: {
            BigInt v = cls.fixed_point->materialize();
            if (dp(prime, v) != v) bad("landed value is not fixed");
            size_t i = 0;
            while (i < orbit.size() && orbit[i] != v) ++i;
            if (i == orbit.size()) bad("orbit never reaches the landed value");
            for (; i < orbit.size(); ++i)
              if (orbit[i] != v) bad("orbit leaves the fixed point");
            break;
          }
          case OrbitKind::DivergesPositive:
          case OrbitKind::DivergesNegative: {
            const bool pos = cls.kind == OrbitKind::DivergesPositive;
            if ((x > 0) != pos) bad("divergence sign disagrees with x");
            IncProfile profile = inc_profile(prime, psplit(prime, BigInt(x)).exponent);
            size_t start = profile.prefix_len;
            for (size_t j = 0; j + 1 < profile.segments.size(); ++j)
              start += profile.segments[j].length();
            for (size_t i = start; i + 1 < orbit.size(); ++i) {
              bool growing = pos ? orbit[i + 1] > orbit[i] : orbit[i + 1] < orbit[i];
              if (!growing) bad("orbit not strictly growing on-cycle");
            }
            break;
          }
        }
        if (!out.pass) break;
      }
    }
  }
  if (out.pass)
    out.detail = std::to_string(checked) + " integers consistent over 30 literal steps";
  return out;
}

Outcome criterion5_reverse_round_trip() {
  Outcome out;
  size_t checked = 0;
  for (uint64_t p : {2ull, 3ull}) {
    Prime prime(p);
    for (size_t n = 1; n <= 2 && out.pass; ++n) {
      std::vector<uint64_t> tuple(n + 1, 0);
      while (out.pass) {
        BigInt ell = reverse_construct(prime, tuple);
        IncProfile profile = inc_profile(prime, ell);
        ++checked;
        bool ok = profile.prefix_len == tuple[0] && profile.segments.size() == n;
        for (size_t j = 1; ok && j <= n; ++j)
          ok = profile.segments[j - 1].run_len == tuple[j];
        if (!ok) {
          out.fail("p=" + std::to_string(p) + " tuple not recovered from ell=" +
                   ell.to_decimal());
          break;
        }
        bool all_zero = true;
        for (uint64_t v : tuple) all_zero = all_zero && v == 0;
        if (all_zero) {
          OrdSequence seq =
              ord_sequence(prime, PSplit{p, BigInt(1), ell}, n + 1);
          for (size_t i = 0; i + 1 < n; ++i)
            if (!(seq.terms[i].finite() < seq.terms[i + 1].finite()))
              out.fail("all-zero tuple: leading ord terms not strictly increasing");
        }

        size_t pos = tuple.size();
        while (pos > 0 && tuple[pos - 1] == p - 1) tuple[--pos] = 0;
        if (pos == 0) break;
        ++tuple[pos - 1];
      }
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " tuples recovered exactly";
  return out;
}

Outcome criterion6_construction() {
  Outcome out;
  auto check = [&](uint64_t p, uint64_t n, uint64_t k0) {
    if (!out.pass) return;
    try {
      ConstructionResult r = construct_with_n_antis(Prime(p), n, k0);
      if (p == 2 && n == 5 && k0 == 0 && r.b0.to_decimal().size() != 620)
        out.fail("n=5 b0 is not the expected ~620-digit value");
    } catch (const std::exception& e) {
      out.fail("p=" + std::to_string(p) + " n=" + std::to_string(n) +
               " k0=" + std::to_string(k0) + ": " + e.what());
    }
  };
  for (uint64_t n = 1; n <= 5; ++n) check(2, n, 0);
  for (uint64_t n = 1; n <= 3; ++n) check(3, n, 0);
  for (uint64_t n = 1; n <= 2; ++n) check(2, n, 6);
  if (out.pass) out.detail = "counts verified for all 10 grid points";
  return out;
}

Outcome criterion7_no_anti_family() {
  Outcome out;
  size_t checked = 0;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    Prime prime(p);
    int64_t produced = 0;
    for (int64_t a0 = 1; produced < 25 && out.pass; ++a0) {
      if (a0 % static_cast<int64_t>(p) == 0) continue;
      ++produced;
      for (int64_t sign : {1, -1}) {
        BigInt y = BigInt(sign * a0) * BigInt::power(p, p - 1);
        if (count_anti(prime, y) != 0)
          out.fail("a0=" + std::to_string(sign * a0) + " p=" + std::to_string(p) +
                   " unexpectedly has an anti-derivative");
        ++checked;
      }
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " family members, all empty";
  return out;
}

Outcome criterion8_rational_refutation() {
  Outcome out;
  auto check = [&](uint64_t p, uint64_t n, size_t must_exceed) {
    if (!out.pass) return;
    ConstructionResult r = construct_with_n_antis(Prime(p), n, 0);
    RationalCSet cq = c_set_rational(r.x0);
    if (cq.c_values.size() != n)
      out.fail("p=" + std::to_string(p) + ": |C_Q| = " +
               std::to_string(cq.c_values.size()) + " != " + std::to_string(n));
    if (!(cq.c_values.size() > must_exceed))
      out.fail("p=" + std::to_string(p) + ": |C_Q| does not exceed " +
               std::to_string(must_exceed));
    // valuation identity for every rational member
    const BigInt lhs_ref = r.x0.b * BigInt::power(p, r.x0.k) +
                           BigInt(static_cast<int64_t>(r.x0.k)) - BigInt(1);
    for (const BigInt& c : cq.c_values) {
      BigInt e = BigInt::power(p, r.x0.k) * c;
      BigInt b = (r.x0.b - c) / BigInt::power(p, e);
      BigInt k = e + BigInt(static_cast<int64_t>(r.x0.k));
      BigInt lhs = b * BigInt::power(p, k) + k - BigInt(1);
      if (lhs != lhs_ref)
        out.fail("c=" + c.to_decimal() + ": b*p^k + k - 1 != b0*p^k0 + k0 - 1");
    }
  };
  check(2, 5, 4);
  check(3, 3, 2);
  if (out.pass)
    out.detail = "|C_Q|=5>4 at p=2, |C_Q|=3>2 at p=3, valuation identity exact";
  return out;
}

Outcome criterion9_order_structure() {
  Outcome out;
  if (g_sweeps.empty()) {
    out.fail("criterion 2 did not run");
    return out;
  }
  size_t multi = 0;
  for (const oracle::SweepReport& report : g_sweeps) {
    Prime p(report.p);
    report.for_each_y([&](int64_t y, const std::vector<int64_t>& xs) {
      if (xs.size() < 2 || !out.pass) return;
      ++multi;
      AntiSet s = anti_derivatives(p, BigInt(y));
      for (size_t i = 0; i + 1 < s.count(); ++i) {
        const StandardForm& lo = s.members[i];
        const StandardForm& hi = s.members[i + 1];
        bool ok = lo.k < hi.k && lo.b > hi.b;
        if (y > 0)
          ok = ok && lo.a < hi.a && lo.materialize() < hi.materialize();
        else
          ok = ok && lo.a > hi.a && lo.materialize() > hi.materialize();
        if (!ok) out.fail("monotonicity violated at y=" + std::to_string(y));
      }
    });
  }
  if (out.pass)
    out.detail = std::to_string(multi) + " multi-preimage targets, chains monotone";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 = untimed
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "known-values", 0.001, criterion1_known_values},
      {2, "oracle-equivalence", 60.0, criterion2_oracle_equivalence},
      {3, "orbit-structure", 60.0, criterion3_orbit_structure},
      {4, "classification", 0.0, criterion4_classification},
      {5, "reverse-round-trip", 10.0, criterion5_reverse_round_trip},
      {6, "exact-count-construction", 30.0, criterion6_construction},
      {7, "no-anti-family", 0.0, criterion7_no_anti_family},
      {8, "rational-refutation", 0.0, criterion8_rational_refutation},
      {9, "order-structure", 0.0, criterion9_order_structure},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      out.fail("exceeded time budget of " + std::to_string(c.budget_seconds) + " s");
    }
    std::printf("%s %d %-22s %8.3fs  %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, out.detail.c_str());
    if (!out.pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
