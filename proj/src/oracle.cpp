#include "apd/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "apd/antideriv.hpp"
#include "apd/error.hpp"
#include "apd/orbit.hpp"

namespace apd::oracle {

int64_t dp_literal(uint64_t p, int64_t x) {
  if (x == 0) return 0;
  const int64_t ps = static_cast<int64_t>(p);
  int64_t v = 0;
  int64_t cur = x;
  while (cur % ps == 0) {
    cur /= ps;
    ++v;
  }
  return v == 0 ? 0 : (x / ps) * v;
}

namespace detail {

// Sorted (y, x) pairs, either in memory or in one merged binary file of
// little-endian int64 pairs.
class PairStore {
 public:
  std::vector<std::pair<int64_t, int64_t>> mem;
  std::filesystem::path file;
  size_t records = 0;

  ~PairStore() {
    if (!file.empty()) {
      std::error_code ec;
      std::filesystem::remove(file, ec);
    }
  }

  bool on_disk() const { return !file.empty(); }
  size_t size() const { return on_disk() ? records : mem.size(); }

  std::pair<int64_t, int64_t> read_at(std::ifstream& in, size_t idx) const {
    int64_t buf[2];
    in.seekg(static_cast<std::streamoff>(idx * sizeof(buf)));
    in.read(reinterpret_cast<char*>(buf), sizeof(buf));
    return {buf[0], buf[1]};
  }

  std::vector<int64_t> antis(int64_t y) const {
    std::vector<int64_t> out;
    if (!on_disk()) {
      auto lo = std::lower_bound(mem.begin(), mem.end(),
                                 std::make_pair(y, INT64_MIN));
      for (; lo != mem.end() && lo->first == y; ++lo) out.push_back(lo->second);
      return out;
    }
    std::ifstream in(file, std::ios::binary);
    size_t lo = 0, hi = records;
    while (lo < hi) {  // first record with pair.first >= y
      size_t mid = (lo + hi) / 2;
      if (read_at(in, mid).first < y)
        lo = mid + 1;
      else
        hi = mid;
    }
    for (size_t i = lo; i < records; ++i) {
      auto pr = read_at(in, i);
      if (pr.first != y) break;
      out.push_back(pr.second);
    }
    return out;
  }

  void for_each_group(
      int64_t range,
      const std::function<void(int64_t, const std::vector<int64_t>&)>& fn) const {
    std::ifstream in;
    if (on_disk()) in.open(file, std::ios::binary);
    size_t idx = 0;
    auto next = [&](size_t i) -> std::pair<int64_t, int64_t> {
      return on_disk() ? read_at(in, i) : mem[i];
    };
    std::vector<int64_t> group;
    for (int64_t y = -range; y <= range; ++y) {
      if (y == 0) continue;
      group.clear();
      while (idx < size()) {
        auto pr = next(idx);
        if (pr.first != y) break;
        group.push_back(pr.second);
        ++idx;
      }
      fn(y, group);
    }
  }
};

}  // namespace detail

size_t SweepReport::total_pairs() const { return store_ ? store_->size() : 0; }
bool SweepReport::disk_backed() const { return store_ && store_->on_disk(); }

std::vector<int64_t> SweepReport::antis(int64_t y) const {
  return store_ ? store_->antis(y) : std::vector<int64_t>{};
}

void SweepReport::for_each_y(
    const std::function<void(int64_t, const std::vector<int64_t>&)>& fn) const {
  if (store_) store_->for_each_group(range, fn);
}

void SweepReport::write_jsonl(std::ostream& out) const {
  for_each_y([&](int64_t y, const std::vector<int64_t>& xs) {
    out << "{\"y\":" << y << ",\"antis\":[";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out << ',';
      out << xs[i];
    }
    out << "]}\n";
  });
  out << "{\"histogram\":{";
  bool first = true;
  for (const auto& [n, cnt] : histogram) {
    if (!first) out << ',';
    first = false;
    out << '"' << n << "\":" << cnt;
  }
  out << "}}\n";
}

namespace {

using Pair = std::pair<int64_t, int64_t>;

// every x in [lo, hi) contributes its (y, x) when 0 < |y| <= range
void scan_range(uint64_t p, int64_t range, int64_t lo, int64_t hi,
                std::vector<Pair>& out) {
  for (int64_t x = lo; x < hi; ++x) {
    if (x == 0) continue;
    int64_t y = dp_literal(p, x);
    if (y != 0 && y >= -range && y <= range) out.emplace_back(y, x);
  }
}

std::filesystem::path temp_run_path(unsigned idx) {
  static std::mt19937_64 seeded(std::random_device{}());
  return std::filesystem::temp_directory_path() /
         ("apd-sweep-" + std::to_string(seeded()) + "-" + std::to_string(idx) +
          ".run");
}

}  // namespace

SweepReport sweep_invert(Prime p, int64_t range, SweepOptions opts) {
  if (range < 1) throw InvalidInput("sweep range must be >= 1");
  const int64_t xmax_big = static_cast<int64_t>(p.value()) * range;
  const uint64_t domain = 2 * static_cast<uint64_t>(xmax_big) + 1;
  if (domain > opts.hard_budget)
    throw TooLarge("sweep budget exceeded: " + std::to_string(domain) +
                   " candidate values (cap " + std::to_string(opts.hard_budget) + ")");
  if (opts.jobs == 0) opts.jobs = 1;

  SweepReport report;
  report.p = p.value();
  report.range = range;
  auto store = std::make_shared<detail::PairStore>();

  const bool in_memory = domain <= opts.memory_threshold;
  if (in_memory) {
    std::vector<std::vector<Pair>> parts(opts.jobs);
    std::vector<std::thread> threads;
    const int64_t lo = -xmax_big, hi = xmax_big + 1;
    const int64_t span = hi - lo;
    for (unsigned j = 0; j < opts.jobs; ++j) {
      int64_t a = lo + span * static_cast<int64_t>(j) / static_cast<int64_t>(opts.jobs);
      int64_t b = lo + span * static_cast<int64_t>(j + 1) / static_cast<int64_t>(opts.jobs);
      threads.emplace_back(
          [&, a, b, j] { scan_range(p.value(), range, a, b, parts[j]); });
    }
    for (std::thread& t : threads) t.join();
    for (std::vector<Pair>& part : parts) {
      store->mem.insert(store->mem.end(), part.begin(), part.end());
      part.clear();
      part.shrink_to_fit();
    }
    std::sort(store->mem.begin(), store->mem.end());
  } else {
    // bounded-memory path: sorted runs on disk, then a k-way merge
    const size_t run_capacity =
        std::max<size_t>(opts.memory_threshold / 2, 1u << 16);
    std::vector<std::filesystem::path> runs;
    std::vector<Pair> buf;
    buf.reserve(run_capacity);
    auto flush = [&] {
      if (buf.empty()) return;
      std::sort(buf.begin(), buf.end());
      std::filesystem::path path = temp_run_path(static_cast<unsigned>(runs.size()));
      std::ofstream out(path, std::ios::binary);
      out.write(reinterpret_cast<const char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(Pair)));
      runs.push_back(path);
      buf.clear();
    };
    for (int64_t x = -xmax_big; x <= xmax_big; ++x) {
      if (x == 0) continue;
      int64_t y = dp_literal(p.value(), x);
      if (y != 0 && y >= -range && y <= range) {
        buf.emplace_back(y, x);
        if (buf.size() >= run_capacity) flush();
      }
    }
    flush();

    store->file = temp_run_path(999999);
    std::ofstream merged(store->file, std::ios::binary);
    std::vector<std::ifstream> ins;
    std::vector<Pair> heads(runs.size());
    std::vector<bool> alive(runs.size());
    for (size_t i = 0; i < runs.size(); ++i) {
      ins.emplace_back(runs[i], std::ios::binary);
      alive[i] = static_cast<bool>(
          ins[i].read(reinterpret_cast<char*>(&heads[i]), sizeof(Pair)));
    }
    while (true) {
      size_t best = runs.size();
      for (size_t i = 0; i < runs.size(); ++i)
        if (alive[i] && (best == runs.size() || heads[i] < heads[best])) best = i;
      if (best == runs.size()) break;
      merged.write(reinterpret_cast<const char*>(&heads[best]), sizeof(Pair));
      ++store->records;
      alive[best] = static_cast<bool>(
          ins[best].read(reinterpret_cast<char*>(&heads[best]), sizeof(Pair)));
    }
    merged.close();
    for (size_t i = 0; i < runs.size(); ++i) {
      ins[i].close();
      std::error_code ec;
      std::filesystem::remove(runs[i], ec);
    }
  }

  report.store_ = std::move(store);
  report.store_->for_each_group(range, [&](int64_t y, const std::vector<int64_t>& xs) {
    if (y > 0) ++report.histogram[xs.size()];
  });
  return report;
}

void compare_with_analytic(SweepReport& report) {
  Prime p(report.p);
  report.mismatches.clear();
  report.for_each_y([&](int64_t y, const std::vector<int64_t>& brute) {
    AntiSet set = anti_derivatives(p, BigInt(y));
    std::vector<int64_t> analytic;
    analytic.reserve(set.members.size());
    for (const StandardForm& m : set.members)
      analytic.push_back(m.materialize().to_int64());
    std::sort(analytic.begin(), analytic.end());
    if (analytic != brute)
      report.mismatches.push_back(Mismatch{y, brute, analytic});
  });
}

std::vector<BigInt> simulate_literal(Prime p, const BigInt& x, uint64_t steps) {
  std::vector<BigInt> out;
  out.reserve(steps + 1);
  out.push_back(x);
  for (uint64_t i = 0; i < steps; ++i) out.push_back(dp(p, out.back()));
  return out;
}

IncCheckReport check_inc_prediction(Prime p, const BigInt& ell, uint64_t terms) {
  IncCheckReport out;
  out.terms = terms;
  IncProfile profile = inc_profile(p, ell);  // validates ell >= p
  out.predicted = unroll(profile, terms);

  OrdSequence seq = ord_sequence(p, PSplit{p.value(), BigInt(1), ell}, terms + 1);
  out.simulated.reserve(terms);
  for (size_t i = 0; i + 1 < seq.terms.size(); ++i)
    out.simulated.push_back(
        (seq.terms[i + 1].finite() - seq.terms[i].finite()).to_int64());

  out.pass = out.predicted == out.simulated;
  if (!out.pass) {
    size_t i = 0;
    while (i < terms && out.predicted[i] == out.simulated[i]) ++i;
    out.first_divergence = i;
  }
  return out;
}

}  // namespace apd::oracle
