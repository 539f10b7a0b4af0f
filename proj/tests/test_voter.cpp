#include <cmath>
#include <vector>

#include "doctest.h"
#include "sv/rng.hpp"
#include "sv/voter.hpp"

using namespace sv;

namespace {
const LatticeGeometry kW3(3, VerticalBc::Periodic);
}

TEST_CASE("singleton at beta=0 schedules twelve pairs of total rate 2") {
  BvmState st(kW3, 0.0, {Site{0, 0, 0}});
  CHECK(st.size() == 1);
  CHECK(st.discordant_count() == 12);
  CHECK(st.total_rate() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(st.check_discordant_consistency());
}

TEST_CASE("singleton step changes the size by one") {
  for (uint64_t s = 0; s < 50; ++s) {
    EventStream stream(1000, s);
    BvmState st(kW3, 0.4, {Site{0, 0, 0}});
    const EventRecord ev = st.step(stream);
    REQUIRE(ev.fired);
    CHECK((st.size() == 0 || st.size() == 2));
    CHECK(st.check_discordant_consistency());
  }
}

TEST_CASE("embedded chain moves up with probability (1+beta)/(2+beta)") {
  const double beta = 0.3;
  int up = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    EventStream stream(7, static_cast<uint64_t>(i));
    BvmState st(kW3, beta, {Site{0, 0, 0}});
    st.step(stream);
    if (st.size() == 2) ++up;
  }
  const double p = (1.0 + beta) / (2.0 + beta);
  const double se = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::fabs(static_cast<double>(up) / n - p) < 4.0 * se);
}

TEST_CASE("empty state is absorbed") {
  BvmState st(kW3, 0.1, {});
  EventStream stream(1, 1);
  CHECK(st.absorbed());
  const EventRecord ev = st.step(stream);
  CHECK_FALSE(ev.fired);
}

TEST_CASE("full torus is absorbed as fixated") {
  LatticeGeometry torus(2, VerticalBc::Periodic, 3);
  std::vector<Site> all;
  for (int z = 0; z < 2; ++z)
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x) all.push_back({x, y, z});
  BvmState st(torus, 0.2, all);
  CHECK(st.absorbed());
  EventStream stream(2, 2);
  StopCondition stop;
  stop.extinct = true;
  const RunResult r = run_until(st, stop, stream);
  CHECK(r.outcome == Outcome::Fixated);
  CHECK(r.final_size == 18);
}

TEST_CASE("replaying a seed reproduces the event log byte for byte") {
  auto trace = [](uint64_t seed) {
    EventStream stream(seed, 3);
    BvmState st(kW3, 0.25, {Site{0, 0, 0}, Site{1, 0, 0}, Site{0, 1, 2}});
    std::vector<EventRecord> log;
    for (int i = 0; i < 300 && !st.absorbed(); ++i) log.push_back(st.step(stream));
    return log;
  };
  const auto a = trace(11), b = trace(11), c = trace(12);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].source == b[i].source);
    CHECK(a[i].target == b[i].target);
    CHECK(a[i].dt == b[i].dt);
    CHECK(a[i].target_became_one == b[i].target_became_one);
  }
  // a different seed must diverge somewhere
  bool diverged = a.size() != c.size();
  for (size_t i = 0; !diverged && i < std::min(a.size(), c.size()); ++i)
    diverged = !(a[i].source == c[i].source) || a[i].dt != c[i].dt;
  CHECK(diverged);
}

TEST_CASE("incremental discordant bookkeeping matches a full rebuild") {
  for (const auto bc : {VerticalBc::Periodic, VerticalBc::Reflecting}) {
    LatticeGeometry g(4, bc, 8);
    EventStream init(21, static_cast<uint64_t>(bc));
    std::vector<Site> soup;
    for (int i = 0; i < 60; ++i)
      soup.push_back({static_cast<int32_t>(init.next_below(8)),
                      static_cast<int32_t>(init.next_below(8)),
                      static_cast<int32_t>(init.next_below(4))});
    BvmState st(g, 0.15, soup);
    REQUIRE(st.check_discordant_consistency());
    EventStream stream(22, 0);
    for (int i = 0; i < 500 && !st.absorbed(); ++i) {
      st.step(stream);
      if (i % 50 == 0) REQUIRE(st.check_discordant_consistency());
    }
    CHECK(st.check_discordant_consistency());
  }
}

TEST_CASE("one-step race: SizeReached(1) iff the first event is a birth") {
  for (uint64_t s = 0; s < 100; ++s) {
    EventStream probe(5, s), runner(5, s);
    BvmState peek(kW3, 0.5, {Site{0, 0, 0}});
    peek.step(probe);
    const bool birth = peek.size() == 2;

    BvmState st(kW3, 0.5, {Site{0, 0, 0}});
    StopCondition stop;
    stop.extinct = true;
    stop.size_reached = 1;
    const RunResult r = run_until(st, stop, runner);
    CHECK(r.outcome == (birth ? Outcome::SizeReached : Outcome::Extinct));
    CHECK(r.events == 1);
  }
}

TEST_CASE("run_until validates stop conditions") {
  BvmState st(kW3, 0.1, {Site{0, 0, 0}});
  EventStream stream(1, 1);
  StopCondition none;
  CHECK_THROWS_AS(run_until(st, none, stream), std::invalid_argument);
  StopCondition only_extinct;
  only_extinct.extinct = true;
  CHECK_THROWS_AS(run_until(st, only_extinct, stream), std::invalid_argument);
  StopCondition plane_only;
  plane_only.plane_hit = 10;
  CHECK_THROWS_AS(run_until(st, plane_only, stream), std::invalid_argument);
}

TEST_CASE("time horizon freezes the configuration exactly") {
  LatticeGeometry torus(3, VerticalBc::Periodic, 6);
  EventStream stream(31, 0);
  BvmState st(torus, 0.2, {Site{0, 0, 0}});
  StopCondition stop;
  stop.time_reached = 2.5;
  const RunResult r = run_until(st, stop, stream);
  CHECK(r.outcome == Outcome::TimeReached);
  CHECK(r.final_time == 2.5);
  CHECK(st.time() == 2.5);
  CHECK(st.check_discordant_consistency());
}

TEST_CASE("max_abs_x tracks the first-passage extent") {
  BvmState st(kW3, 1.0, {Site{0, 0, 0}});
  EventStream stream(41, 0);
  StopCondition stop;
  stop.extinct = true;
  stop.plane_hit = 5;
  stop.time_reached = 1e6;
  const RunResult r = run_until(st, stop, stream);
  if (r.outcome == Outcome::PlaneHit) {
    CHECK(r.max_abs_x == 5);
    CHECK(r.final_size >= 5);
  } else {
    CHECK(r.outcome == Outcome::Extinct);
  }
}
