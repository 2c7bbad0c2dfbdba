#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "seirah/data_io.hpp"
#include "seirah/error.hpp"
#include "seirah/inference.hpp"
#include "toy.hpp"

using namespace seirah;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("seirah_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& body) const {
    std::ofstream(path / name) << body;
    return file(name);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("dates") {
  CHECK(format_date(parse_date("2020-03-01")) == "2020-03-01");
  CHECK(parse_date("2020-03-01") + std::chrono::days{1} == parse_date("2020-03-02"));
  CHECK(parse_date("2020-02-29") + std::chrono::days{1} == parse_date("2020-03-01"));
  CHECK_THROWS_AS(parse_date("2020-3-01"), DataError);
  CHECK_THROWS_AS(parse_date("2021-02-29"), DataError);
  CHECK_THROWS_AS(parse_date("abcd-ef-gh"), DataError);
}

TEST_CASE("observed series round trip and validation") {
  TempDir tmp;
  const auto ok = tmp.write("h.csv", "date,h\n2020-03-02,4\n2020-03-01,3\n2020-03-03,0\n");
  const auto series = load_observed(ok);
  REQUIRE(series.size() == 3);
  CHECK(series.h == std::vector<std::uint64_t>{3, 4, 0});
  write_observed(series, tmp.file("copy.csv"));
  CHECK(load_observed(tmp.file("copy.csv")).h == series.h);

  CHECK_THROWS_AS(load_observed(tmp.write("neg.csv", "date,h\n2020-03-01,-1\n")), DataError);
  CHECK_THROWS_AS(load_observed(tmp.write("dup.csv", "date,h\n2020-03-01,1\n2020-03-01,2\n")), DataError);
  CHECK_THROWS_AS(load_observed(tmp.write("hdr.csv", "day,h\n2020-03-01,1\n")), DataError);
  CHECK_THROWS_AS(load_observed(tmp.write("txt.csv", "date,h\n2020-03-01,many\n")), DataError);
  CHECK_THROWS_AS(load_observed(tmp.file("missing.csv")), IoError);

  const auto gap = tmp.write("gap.csv", "date,h\n2020-03-01,1\n2020-03-03,2\n");
  CHECK_THROWS_AS(load_observed(gap), DataError);
  const auto filled = load_observed(gap, GapPolicy::kZeroFill);
  CHECK(filled.h == std::vector<std::uint64_t>{1, 0, 2});
}

TEST_CASE("indicator series") {
  TempDir tmp;
  const auto one = load_indicator(tmp.write("i.csv", "date,indicator\n2020-03-01,1.0\n2020-03-02,0.5\n"));
  CHECK(one.columns == std::vector<std::string>{"indicator"});
  CHECK(one.values[1][0] == 0.5);

  const auto multi = load_indicator(tmp.write("m.csv", "date,a,b\n2020-03-01,1,0.9\n2020-03-02,0.8,2.5\n"));
  CHECK(multi.columns.size() == 2);
  CHECK(multi.values[1][1] == 2.5);

  CHECK_THROWS_AS(load_indicator(tmp.write("bad.csv", "date,a\n2020-03-01,x\n")), DataError);
  CHECK_THROWS_AS(load_indicator(tmp.write("neg.csv", "date,a\n2020-03-01,-0.5\n")), DataError);

  const auto gap = tmp.write("g.csv", "date,a\n2020-03-01,0.9\n2020-03-03,0.7\n");
  CHECK_THROWS_AS(load_indicator(gap), DataError);
  CHECK(load_indicator(gap, GapPolicy::kZeroFill).values[1][0] == 0.9);

  const auto obs = load_observed(tmp.write("h.csv", "date,h\n2020-03-01,1\n2020-03-02,1\n"));
  CHECK_NOTHROW(check_aligned(obs, one));
  const auto shifted = load_indicator(tmp.write("s.csv", "date,a\n2020-03-02,1\n2020-03-03,1\n"));
  CHECK_THROWS_AS(check_aligned(obs, shifted), DataError);
}

TEST_CASE("timeseries export round trips") {
  TempDir tmp;
  const auto sc = testing::toy_scenario(1, 3);
  const auto topo = sc.build();
  auto state = sc.initial_state(topo);
  std::vector<double> betas(30, 0.2);
  const auto counts = simulate_horizon(state, topo, betas, testing::full_commute(30), 30, sc.thresholds);
  const Date start = parse_date("2020-04-01");
  export_timeseries(counts, start, tmp.file("ts.csv"));
  CHECK(load_timeseries(tmp.file("ts.csv")) == to_rows(counts, start));
  export_timeseries(counts, start, tmp.file("ts2.csv"));
  CHECK(slurp(tmp.file("ts.csv")) == slurp(tmp.file("ts2.csv")));
}

TEST_CASE("node history reconstructs the daily counts") {
  TempDir tmp;
  const auto sc = testing::toy_scenario(2, 4);
  const auto topo = sc.build();
  auto state = sc.initial_state(topo);
  HistoryRecorder recorder(topo, state);
  std::vector<DailyCounts> counts;
  const std::vector<double> ind{0.6};
  for (int d = 0; d < 40; ++d) counts.push_back(simulate_day(state, topo, 0.25, ind, sc.thresholds, {}, &recorder));

  CHECK_NOTHROW(validate_history(recorder.records()));
  export_node_history(recorder.records(), tmp.file("hist.csv"));
  const auto loaded = load_node_history(tmp.file("hist.csv"));
  CHECK(loaded == recorder.records());

  const auto rebuilt = reconstruct_counts(loaded, topo.node_count(), 0, 40);
  REQUIRE(rebuilt.size() == 40);
  for (int d = 0; d < 40; ++d) CHECK(rebuilt[d] == counts[d].counts);

  for (const auto& r : loaded) CHECK(r.region == topo.region_of(r.node));
}

TEST_CASE("illegal histories are rejected") {
  std::vector<NodeHistoryRecord> bad{{0, 0, -1, 2, Status::S}, {0, 0, 0, 1, Status::I}};
  CHECK_THROWS_AS(validate_history(bad), DataError);
  std::vector<NodeHistoryRecord> backwards{{0, 0, 3, 2, Status::S}, {0, 0, 1, 1, Status::E}};
  CHECK_THROWS_AS(validate_history(backwards), DataError);
  std::vector<NodeHistoryRecord> fine{{0, 0, -1, 2, Status::S}, {0, 0, 0, 1, Status::E}, {0, 0, 2, 2, Status::A}};
  CHECK_NOTHROW(validate_history(fine));
}

TEST_CASE("bundled 120-day fixture round trips bit for bit") {
  TempDir tmp;
  const fs::path data = fs::path(SEIRAH_SOURCE_DIR) / "data";
  const auto observed = data / "synthetic_observed.csv";
  const auto indicator = data / "synthetic_indicator.csv";
  const auto obs = load_observed(observed.string());
  const auto ind = load_indicator(indicator.string());
  CHECK(obs.size() == 120);
  CHECK(ind.size() == 120);
  CHECK_NOTHROW(check_aligned(obs, ind));
  write_observed(obs, tmp.file("o.csv"));
  write_indicator(ind, tmp.file("i.csv"));
  CHECK(slurp(tmp.file("o.csv")) == slurp(observed.string()));
  CHECK(slurp(tmp.file("i.csv")) == slurp(indicator.string()));
}

TEST_CASE("beta series export") {
  TempDir tmp;
  BetaSeries series;
  series.days.push_back({.beta = 0.125, .loss = 2.5, .iterations = 7, .predicted = {1.0, 2.0}});
  series.days.push_back({.beta = 0.0, .loss = 0.0, .iterations = 0, .zero_branch = true, .predicted = {0.0}});
  export_beta_series(series, parse_date("2020-03-01"), tmp.file("b.csv"), tmp.file("b.json"));
  CHECK(slurp(tmp.file("b.csv")) == "date,beta,loss,iterations\n2020-03-01,0.125,2.5,7\n2020-03-02,0,0,0\n");
}

TEST_CASE("double formatting is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
