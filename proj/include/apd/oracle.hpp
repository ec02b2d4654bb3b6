#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

#include "apd/padic.hpp"

namespace apd::oracle {

// Literal machine-integer D_p, the ground-truth kernel for sweeps. Keeps no
// state and shares no code with the analytic modules it checks.
int64_t dp_literal(uint64_t p, int64_t x);

struct Mismatch {
  int64_t y = 0;
  std::vector<int64_t> brute;
  std::vector<int64_t> analytic;
};

namespace detail {
class PairStore;
}

// Complete inverse map of D_p over |y| <= range built by enumerating every
// |x| <= p*range. Pairs live in memory up to the configured threshold and in
// sorted on-disk runs beyond it.
class SweepReport {
 public:
  uint64_t p = 2;
  int64_t range = 0;
  std::map<uint64_t, uint64_t> histogram;  // n -> #{y in (0, range] : i_p(y) = n}
  std::vector<Mismatch> mismatches;

  size_t total_pairs() const;
  bool disk_backed() const;
  std::vector<int64_t> antis(int64_t y) const;  // sorted ascending

  // visits y = -range..range (0 skipped) in order, including empty groups
  void for_each_y(
      const std::function<void(int64_t, const std::vector<int64_t>&)>& fn) const;

  // JSON-lines persistence: one {"y":..,"antis":[..]} record per y plus a
  // trailing histogram record; bit-exact across runs for fixed (p, range).
  void write_jsonl(std::ostream& out) const;

 private:
  friend SweepReport sweep_invert(Prime, int64_t, struct SweepOptions);
  std::shared_ptr<detail::PairStore> store_;
};

struct SweepOptions {
  unsigned jobs = 1;
  size_t memory_threshold = 10'000'000;  // pairs kept in RAM at most
  size_t hard_budget = 500'000'000;      // absolute pair cap
};

SweepReport sweep_invert(Prime p, int64_t range, SweepOptions opts = {});

// Cross-checks the analytic enumeration against the sweep for every
// 0 < |y| <= range and records disagreements in report.mismatches.
void compare_with_analytic(SweepReport& report);

// Literal repeated application of D_p: returns x, D_p(x), ..., D_p^steps(x).
std::vector<BigInt> simulate_literal(Prime p, const BigInt& x, uint64_t steps);

struct IncCheckReport {
  bool pass = false;
  uint64_t terms = 0;
  size_t first_divergence = 0;  // meaningful when !pass
  std::vector<int64_t> predicted;
  std::vector<int64_t> simulated;
};

// Unrolls the predicted inc profile of p^ell and compares it term by term
// with the first differences of the simulated ord sequence.
IncCheckReport check_inc_prediction(Prime p, const BigInt& ell, uint64_t terms);

}  // namespace apd::oracle
