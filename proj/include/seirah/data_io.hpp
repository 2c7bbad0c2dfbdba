#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seirah/epidemic.hpp"
#include "seirah/inference.hpp"
#include "seirah/sweep.hpp"
#include "seirah/topology.hpp"

namespace seirah {

using Date = std::chrono::sys_days;

/// Strict YYYY-MM-DD.
Date parse_date(std::string_view text);
std::string format_date(Date d);

enum class GapPolicy { kError, kZeroFill };

/// Daily new hospitalized (confirmed) counts.
struct ObservedSeries {
  std::vector<Date> dates;
  std::vector<std::uint64_t> h;

  std::size_t size() const noexcept { return dates.size(); }
  std::vector<double> values() const;
};

/// Commuting indicator relative to the pre-outbreak baseline, one column or
/// one column per region.
struct IndicatorSeries {
  std::vector<Date> dates;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[day][column]

  std::size_t size() const noexcept { return dates.size(); }
};

/// CSV with header "date,h". Rows may be unsorted; missing interior dates are
/// an error unless `gaps` is kZeroFill.
ObservedSeries load_observed(const std::string& path, GapPolicy gaps = GapPolicy::kError);
void write_observed(const ObservedSeries& series, const std::string& path);

/// CSV with header "date,indicator" or "date,<region>,<region>,...".
/// Negative values are rejected; values above 2 are accepted with a warning.
IndicatorSeries load_indicator(const std::string& path, GapPolicy gaps = GapPolicy::kError);
void write_indicator(const IndicatorSeries& series, const std::string& path);

/// Throws DataError unless both series cover the identical date span.
void check_aligned(const ObservedSeries& observed, const IndicatorSeries& indicator);

/// Per-day time series with header "date,s,e,i,r,a,h,new_h,beta".
struct TimeseriesRow {
  Date date;
  ClassCounts counts{};
  std::uint64_t new_h = 0;
  double beta = 0.0;
  friend bool operator==(const TimeseriesRow&, const TimeseriesRow&) = default;
};

std::vector<TimeseriesRow> to_rows(const std::vector<DailyCounts>& counts, Date start);
void export_timeseries(const std::vector<DailyCounts>& counts, Date start, const std::string& path);
std::vector<TimeseriesRow> load_timeseries(const std::string& path);

/// One status change of one person. Zone 1 is residence hours, zone 2 work
/// hours plus end-of-day progression. Each person's first record is their
/// initial status, stamped (start day - 1, zone 2).
struct NodeHistoryRecord {
  NodeId node = 0;
  std::uint32_t region = 0;
  std::int32_t day = 0;
  int zone = 1;
  Status status = Status::S;
  friend bool operator==(const NodeHistoryRecord&, const NodeHistoryRecord&) = default;
};

/// Collects run-length node histories while a simulation runs.
class HistoryRecorder : public StateObserver {
 public:
  HistoryRecorder(const MetroTopology& topology, const SimState& initial);
  void after_zone(const SimState& state, int zone) override;
  const std::vector<NodeHistoryRecord>& records() const noexcept { return records_; }

 private:
  const MetroTopology* topology_;
  std::vector<Status> last_;
  std::vector<NodeHistoryRecord> records_;
};

/// Throws DataError if any node's record sequence contains an illegal
/// transition, repeats a status or goes back in time.
void validate_history(const std::vector<NodeHistoryRecord>& records);

/// CSV "node,region,day,zone,status", validated before writing.
void export_node_history(const std::vector<NodeHistoryRecord>& records, const std::string& path);
std::vector<NodeHistoryRecord> load_node_history(const std::string& path);

/// End-of-day class counts for days first_day .. first_day + days - 1
/// rebuilt from a history covering `node_count` people.
std::vector<ClassCounts> reconstruct_counts(const std::vector<NodeHistoryRecord>& records,
                                            std::uint32_t node_count, std::int32_t first_day, std::size_t days);

/// "date,beta,loss,iterations" plus a JSON sidecar with per-day predicted windows.
void export_beta_series(const BetaSeries& series, Date start, const std::string& csv_path,
                        const std::string& json_path);

/// "p_r,p_w,rmse,mean_beta,appropriate" plus a JSON summary.
void export_sweep(const SweepResult& result, const std::string& csv_path, const std::string& json_path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace seirah
