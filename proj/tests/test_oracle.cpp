#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "apd/error.hpp"
#include "apd/oracle.hpp"
#include "apd/orbit.hpp"

using namespace apd;
using namespace apd::oracle;

TEST_CASE("dp_literal") {
  CHECK(dp_literal(2, 72) == 108);
  CHECK(dp_literal(2, 0) == 0);
  CHECK(dp_literal(3, 10) == 0);
  CHECK(dp_literal(2, -8) == -12);
  CHECK(dp_literal(2, 12) == 12);
}

TEST_CASE("sweep_invert worked examples") {
  SweepReport r = sweep_invert(Prime(2), 20);
  CHECK(r.antis(12) == std::vector<int64_t>{8, 12});
  CHECK(r.antis(2).empty());
  CHECK(r.antis(3) == std::vector<int64_t>{6});
  CHECK(r.antis(-12) == std::vector<int64_t>{-12, -8});
  CHECK(r.antis(1) == std::vector<int64_t>{2});
  CHECK(!r.disk_backed());

  // histogram counts positive y only and every bucket is witnessed
  uint64_t total = 0;
  for (const auto& [n, cnt] : r.histogram) {
    CHECK(cnt > 0);
    total += cnt;
    bool witness = false;
    for (int64_t y = 1; y <= r.range && !witness; ++y)
      witness = r.antis(y).size() == n;
    CHECK(witness);
  }
  CHECK(total == static_cast<uint64_t>(r.range));

  CHECK_THROWS_AS(sweep_invert(Prime(2), 0), InvalidInput);
  SweepOptions tiny;
  tiny.hard_budget = 10;
  CHECK_THROWS_AS(sweep_invert(Prime(2), 100, tiny), TooLarge);
}

TEST_CASE("sweep agrees with analytic enumeration and is jobs-invariant") {
  SweepReport base = sweep_invert(Prime(3), 400);
  compare_with_analytic(base);
  CHECK(base.mismatches.empty());

  SweepOptions par;
  par.jobs = 4;
  SweepReport threaded = sweep_invert(Prime(3), 400, par);
  std::ostringstream a, b;
  base.write_jsonl(a);
  threaded.write_jsonl(b);
  CHECK(a.str() == b.str());
}

TEST_CASE("disk-backed sweep matches the in-memory one byte for byte") {
  SweepReport mem = sweep_invert(Prime(2), 300);
  SweepOptions spill;
  spill.memory_threshold = 64;  // force on-disk runs and the merge path
  SweepReport disk = sweep_invert(Prime(2), 300, spill);
  CHECK(disk.disk_backed());
  CHECK(!mem.disk_backed());
  CHECK(mem.total_pairs() == disk.total_pairs());
  CHECK(disk.antis(12) == std::vector<int64_t>{8, 12});
  CHECK(disk.antis(-12) == std::vector<int64_t>{-12, -8});

  std::ostringstream a, b;
  mem.write_jsonl(a);
  disk.write_jsonl(b);
  CHECK(a.str() == b.str());

  compare_with_analytic(disk);
  CHECK(disk.mismatches.empty());
}

TEST_CASE("jsonl shape") {
  SweepReport r = sweep_invert(Prime(2), 3);
  std::ostringstream out;
  r.write_jsonl(out);
  // y = -3..-1, 1..3 then the histogram line
  CHECK(out.str() ==
        "{\"y\":-3,\"antis\":[-6]}\n"
        "{\"y\":-2,\"antis\":[]}\n"
        "{\"y\":-1,\"antis\":[-2]}\n"
        "{\"y\":1,\"antis\":[2]}\n"
        "{\"y\":2,\"antis\":[]}\n"
        "{\"y\":3,\"antis\":[6]}\n"
        "{\"histogram\":{\"0\":1,\"1\":2}}\n");
}

TEST_CASE("simulate_literal") {
  std::vector<BigInt> seq = simulate_literal(Prime(2), BigInt(8), 3);
  CHECK(seq == std::vector<BigInt>{BigInt(8), BigInt(12), BigInt(12), BigInt(12)});

  seq = simulate_literal(Prime(3), BigInt(9), 4);
  CHECK(seq == std::vector<BigInt>{BigInt(9), BigInt(6), BigInt(2), BigInt(0), BigInt(0)});

  seq = simulate_literal(Prime(2), BigInt(0), 2);
  CHECK(seq == std::vector<BigInt>{BigInt(0), BigInt(0), BigInt(0)});
}

TEST_CASE("literal valuations match ord_sequence wherever both are defined") {
  for (uint64_t pv : {2ull, 3ull, 5ull}) {
    Prime p(pv);
    for (int64_t x : {0l, 1l, -7l, 12l, 48l, 256l, -1024l, 59049l, 6250l}) {
      std::vector<BigInt> orbit = simulate_literal(p, BigInt(x), 12);
      OrdSequence seq = ord_sequence(p, BigInt(x), 13);
      for (size_t i = 0; i < orbit.size(); ++i)
        REQUIRE(ord(p, orbit[i]) == seq.terms[i]);
    }
  }
}

TEST_CASE("check_inc_prediction") {
  CHECK(check_inc_prediction(Prime(2), BigInt(8), 10).pass);
  CHECK(check_inc_prediction(Prime(2), BigInt(12), 10).pass);
  CHECK(check_inc_prediction(Prime(3), BigInt(9), 12).pass);
  IncCheckReport r = check_inc_prediction(Prime(3), BigInt(9), 12);
  CHECK(r.predicted == r.simulated);
  CHECK(r.predicted[0] == 1);  // S_2 = (1, -1) repeating for ell = 9 at p = 3
  CHECK(r.predicted[1] == -1);
  CHECK_THROWS_AS(check_inc_prediction(Prime(2), BigInt(1), 5), InvalidInput);
}
