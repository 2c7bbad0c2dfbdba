#include <doctest.h>

#include "seirah/epidemic.hpp"
#include "toy.hpp"

using namespace seirah;

TEST_CASE("serial and parallel exposure kernels agree bit for bit") {
  const auto g = generate_newman_watts({5000, 6, 0.1}, 4);
  std::vector<Status> statuses(5000, Status::S);
  CounterRng rng(8, 0);
  for (auto& s : statuses) {
    const auto r = rng.below(10);
    s = r == 0 ? Status::I : r == 1 ? Status::E : r == 2 ? Status::A : r == 3 ? Status::H : Status::S;
  }
  std::vector<std::uint8_t> away(5000, 0);
  for (std::size_t i = 0; i < away.size(); i += 7) away[i] = 1;
  for (bool masked : {false, true}) {
    ZoneGraph zone{.graph = &g, .lane = 3};
    if (masked) zone.away = away;
    std::vector<std::uint8_t> a(5000, 0), b(5000, 0);
    const auto na = kernels::mark_exposures_serial(zone, statuses, 0.2, 99, 4, a);
    const auto nb = kernels::mark_exposures_parallel(zone, statuses, 0.2, 99, 4, b);
    CHECK(na == nb);
    CHECK(a == b);
    CHECK(na > 0);
  }
}

TEST_CASE("serial and parallel progression agree bit for bit") {
  std::vector<Status> statuses(20000);
  std::vector<std::int32_t> entered(20000, 0);
  for (std::size_t i = 0; i < statuses.size(); ++i) statuses[i] = Status(i % 6);
  auto s2 = statuses;
  auto e2 = entered;
  const auto probs = effective_probabilities(table2_thresholds());
  const auto ta = kernels::progress_serial(statuses, entered, probs, 5, 3);
  const auto tb = kernels::progress_parallel(s2, e2, probs, 5, 3);
  CHECK(statuses == s2);
  CHECK(entered == e2);
  CHECK(ta.e_to_a == tb.e_to_a);
  CHECK(ta.i_to_h == tb.i_to_h);
  CHECK(ta.h_to_r == tb.h_to_r);
}

TEST_CASE("whole-day simulation is identical under both execution modes") {
  const auto sc = testing::toy_scenario(3, 4);
  const auto topo = sc.build();
  auto a = sc.initial_state(topo);
  auto b = a;
  const std::vector<double> indicator{0.8};
  for (int d = 0; d < 40; ++d) {
    const auto da = simulate_day(a, topo, 0.2, indicator, sc.thresholds, {Execution::kSerial});
    const auto db = simulate_day(b, topo, 0.2, indicator, sc.thresholds, {Execution::kParallel});
    REQUIRE(da.counts == db.counts);
  }
  CHECK(std::equal(a.statuses().begin(), a.statuses().end(), b.statuses().begin()));
}
