#include "seirah/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "seirah/error.hpp"

namespace seirah {
namespace {

using Row = std::vector<std::string>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Row split(std::string_view line) {
  Row out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Reads a CSV into (line number, fields) rows, header first. Blank lines are skipped.
std::vector<std::pair<std::size_t, Row>> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::pair<std::size_t, Row>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    rows.emplace_back(number, split(line));
  }
  if (rows.empty()) throw DataError(path + ": file is empty");
  return rows;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write failed for '" + path + "'");
}

[[noreturn]] void row_error(const std::string& path, std::size_t line, const std::string& what) {
  throw DataError(path + ":" + std::to_string(line) + ": " + what);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::int64_t parse_int(const std::string& path, std::size_t line, std::string_view text, const char* what) {
  std::int64_t v = 0;
  if (!parse_number(text, v)) row_error(path, line, std::string("malformed ") + what + " '" + std::string(text) + "'");
  return v;
}

double parse_real(const std::string& path, std::size_t line, std::string_view text, const char* what) {
  double v = 0.0;
  if (!parse_number(text, v) || !std::isfinite(v)) {
    row_error(path, line, std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

Date parse_row_date(const std::string& path, std::size_t line, std::string_view text) {
  try {
    return parse_date(text);
  } catch (const DataError& e) {
    row_error(path, line, e.what());
  }
}

// Sorted, duplicate-free, gap-checked daily index.
template <class Value, class Fill>
void normalize(const std::string& path, std::map<Date, Value>& by_date, GapPolicy gaps, std::vector<Date>& dates,
               std::vector<Value>& values, Fill fill) {
  Date expected = by_date.begin()->first;
  for (const auto& [date, value] : by_date) {
    while (expected < date) {
      if (gaps == GapPolicy::kError) throw DataError(path + ": missing date " + format_date(expected));
      dates.push_back(expected);
      values.push_back(fill(values));
      expected += std::chrono::days{1};
    }
    dates.push_back(date);
    values.push_back(value);
    expected = date + std::chrono::days{1};
  }
}

}  // namespace

Date parse_date(std::string_view text) {
  using namespace std::chrono;
  auto bad = [&] { return DataError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_number(text.substr(0, 4), y) || !parse_number(text.substr(5, 2), m) ||
      !parse_number(text.substr(8, 2), d)) {
    throw bad();
  }
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw bad();
  return sys_days{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> ObservedSeries::values() const { return {h.begin(), h.end()}; }

ObservedSeries load_observed(const std::string& path, GapPolicy gaps) {
  const auto rows = read_csv(path);
  const auto& header = rows.front().second;
  if (header.size() != 2 || lower(header[0]) != "date" || lower(header[1]) != "h") {
    row_error(path, rows.front().first, "expected header 'date,h'");
  }
  std::map<Date, std::uint64_t> by_date;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& [line, row] = rows[i];
    if (row.size() != 2) row_error(path, line, "expected 2 fields, got " + std::to_string(row.size()));
    const Date date = parse_row_date(path, line, row[0]);
    const auto h = parse_int(path, line, row[1], "count");
    if (h < 0) row_error(path, line, "negative count " + std::to_string(h));
    if (!by_date.emplace(date, static_cast<std::uint64_t>(h)).second) {
      row_error(path, line, "duplicate date " + format_date(date));
    }
  }
  if (by_date.empty()) throw DataError(path + ": no data rows");
  ObservedSeries out;
  normalize(path, by_date, gaps, out.dates, out.h, [](const auto&) { return std::uint64_t{0}; });
  return out;
}

void write_observed(const ObservedSeries& series, const std::string& path) {
  auto os = open_out(path);
  os << "date,h\n";
  for (std::size_t i = 0; i < series.size(); ++i) os << format_date(series.dates[i]) << ',' << series.h[i] << '\n';
  finish(os, path);
}

IndicatorSeries load_indicator(const std::string& path, GapPolicy gaps) {
  const auto rows = read_csv(path);
  const auto& header = rows.front().second;
  if (header.size() < 2 || lower(header[0]) != "date") {
    row_error(path, rows.front().first, "expected header 'date,<indicator columns>'");
  }
  IndicatorSeries out;
  out.columns.assign(header.begin() + 1, header.end());
  std::map<Date, std::vector<double>> by_date;
  bool warned = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& [line, row] = rows[i];
    if (row.size() != header.size()) {
      row_error(path, line, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(row.size()));
    }
    const Date date = parse_row_date(path, line, row[0]);
    std::vector<double> values;
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double v = parse_real(path, line, row[c], "indicator");
      if (v < 0.0) row_error(path, line, "negative indicator " + row[c]);
      if (v > 2.0 && !warned) {
        spdlog::warn("{}:{}: indicator {} outside [0, 2]", path, line, v);
        warned = true;
      }
      values.push_back(v);
    }
    if (!by_date.emplace(date, std::move(values)).second) row_error(path, line, "duplicate date " + format_date(date));
  }
  if (by_date.empty()) throw DataError(path + ": no data rows");
  // Gaps in mobility data repeat the previous day.
  normalize(path, by_date, gaps, out.dates, out.values, [](const auto& so_far) { return so_far.back(); });
  return out;
}

void write_indicator(const IndicatorSeries& series, const std::string& path) {
  auto os = open_out(path);
  os << "date";
  for (const auto& c : series.columns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << format_date(series.dates[i]);
    for (double v : series.values[i]) os << ',' << format_double(v);
    os << '\n';
  }
  finish(os, path);
}

void check_aligned(const ObservedSeries& observed, const IndicatorSeries& indicator) {
  if (observed.dates != indicator.dates) {
    auto span = [](const std::vector<Date>& d) {
      return d.empty() ? std::string("(empty)") : format_date(d.front()) + ".." + format_date(d.back());
    };
    throw DataError("observed series covers " + span(observed.dates) + " but indicator series covers " +
                    span(indicator.dates));
  }
}

std::vector<TimeseriesRow> to_rows(const std::vector<DailyCounts>& counts, Date start) {
  std::vector<TimeseriesRow> rows;
  rows.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    rows.push_back({start + std::chrono::days{static_cast<int>(i)}, counts[i].counts, counts[i].new_h, counts[i].beta});
  }
  return rows;
}

void export_timeseries(const std::vector<DailyCounts>& counts, Date start, const std::string& path) {
  auto os = open_out(path);
  os << "date,s,e,i,r,a,h,new_h,beta\n";
  for (const auto& row : to_rows(counts, start)) {
    os << format_date(row.date);
    for (Status s : {Status::S, Status::E, Status::I, Status::R, Status::A, Status::H}) os << ',' << at(row.counts, s);
    os << ',' << row.new_h << ',' << format_double(row.beta) << '\n';
  }
  finish(os, path);
}

std::vector<TimeseriesRow> load_timeseries(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.front().second != Row{"date", "s", "e", "i", "r", "a", "h", "new_h", "beta"}) {
    row_error(path, rows.front().first, "expected header 'date,s,e,i,r,a,h,new_h,beta'");
  }
  std::vector<TimeseriesRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& [line, row] = rows[i];
    if (row.size() != 9) row_error(path, line, "expected 9 fields");
    TimeseriesRow r;
    r.date = parse_row_date(path, line, row[0]);
    const Status order[] = {Status::S, Status::E, Status::I, Status::R, Status::A, Status::H};
    for (int c = 0; c < 6; ++c) {
      const auto v = parse_int(path, line, row[1 + c], "count");
      if (v < 0) row_error(path, line, "negative count");
      at(r.counts, order[c]) = static_cast<std::uint64_t>(v);
    }
    const auto nh = parse_int(path, line, row[7], "new_h");
    if (nh < 0) row_error(path, line, "negative new_h");
    r.new_h = static_cast<std::uint64_t>(nh);
    r.beta = parse_real(path, line, row[8], "beta");
    out.push_back(r);
  }
  return out;
}

HistoryRecorder::HistoryRecorder(const MetroTopology& topology, const SimState& initial)
    : topology_(&topology), last_(initial.statuses().begin(), initial.statuses().end()) {
  if (initial.node_count() != topology.node_count()) throw ParameterError("recorder: state/topology size mismatch");
  records_.reserve(last_.size());
  for (NodeId v = 0; v < last_.size(); ++v) {
    records_.push_back({v, static_cast<std::uint32_t>(topology.region_of(v)), initial.day() - 1, 2, last_[v]});
  }
}

void HistoryRecorder::after_zone(const SimState& state, int zone) {
  const auto statuses = state.statuses();
  for (NodeId v = 0; v < statuses.size(); ++v) {
    if (statuses[v] == last_[v]) continue;
    last_[v] = statuses[v];
    records_.push_back({v, static_cast<std::uint32_t>(topology_->region_of(v)), state.day(), zone, statuses[v]});
  }
}

void validate_history(const std::vector<NodeHistoryRecord>& records) {
  std::map<NodeId, const NodeHistoryRecord*> last;
  for (const auto& r : records) {
    if (r.zone != 1 && r.zone != 2) throw DataError("node " + std::to_string(r.node) + ": zone must be 1 or 2");
    auto [it, fresh] = last.emplace(r.node, &r);
    if (fresh) continue;
    const auto& prev = *it->second;
    if (std::pair{r.day, r.zone} < std::pair{prev.day, prev.zone}) {
      throw DataError("node " + std::to_string(r.node) + ": records go back in time at day " + std::to_string(r.day));
    }
    if (!is_legal_transition(prev.status, r.status)) {
      throw DataError("node " + std::to_string(r.node) + ": illegal transition " + status_code(prev.status) + "->" +
                      status_code(r.status) + " on day " + std::to_string(r.day));
    }
    it->second = &r;
  }
}

void export_node_history(const std::vector<NodeHistoryRecord>& records, const std::string& path) {
  validate_history(records);
  auto os = open_out(path);
  os << "node,region,day,zone,status\n";
  for (const auto& r : records) {
    os << r.node << ',' << r.region << ',' << r.day << ',' << r.zone << ',' << status_code(r.status) << '\n';
  }
  finish(os, path);
}

std::vector<NodeHistoryRecord> load_node_history(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.front().second != Row{"node", "region", "day", "zone", "status"}) {
    row_error(path, rows.front().first, "expected header 'node,region,day,zone,status'");
  }
  std::vector<NodeHistoryRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& [line, row] = rows[i];
    if (row.size() != 5 || row[4].size() != 1) row_error(path, line, "malformed record");
    NodeHistoryRecord r;
    r.node = static_cast<NodeId>(parse_int(path, line, row[0], "node"));
    r.region = static_cast<std::uint32_t>(parse_int(path, line, row[1], "region"));
    r.day = static_cast<std::int32_t>(parse_int(path, line, row[2], "day"));
    r.zone = static_cast<int>(parse_int(path, line, row[3], "zone"));
    try {
      r.status = parse_status(row[4][0]);
    } catch (const DataError& e) {
      row_error(path, line, e.what());
    }
    out.push_back(r);
  }
  validate_history(out);
  return out;
}

std::vector<ClassCounts> reconstruct_counts(const std::vector<NodeHistoryRecord>& records, std::uint32_t node_count,
                                            std::int32_t first_day, std::size_t days) {
  // Bucket status changes by day, then replay.
  std::vector<Status> current(node_count, Status::S);
  std::vector<bool> seen(node_count, false);
  std::vector<std::vector<const NodeHistoryRecord*>> by_day(days);
  for (const auto& r : records) {
    if (r.node >= node_count) throw DataError("history node id out of range");
    if (r.day < first_day) {
      current[r.node] = r.status;
      seen[r.node] = true;
    } else if (r.day < first_day + static_cast<std::int32_t>(days)) {
      by_day[static_cast<std::size_t>(r.day - first_day)].push_back(&r);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DataError("history lacks an initial record for some node");
  }
  ClassCounts counts{};
  for (Status s : current) ++at(counts, s);
  std::vector<ClassCounts> out;
  for (std::size_t d = 0; d < days; ++d) {
    for (const auto* r : by_day[d]) {
      --at(counts, current[r->node]);
      ++at(counts, r->status);
      current[r->node] = r->status;
    }
    out.push_back(counts);
  }
  return out;
}

void export_beta_series(const BetaSeries& series, Date start, const std::string& csv_path,
                        const std::string& json_path) {
  auto os = open_out(csv_path);
  os << "date,beta,loss,iterations\n";
  nlohmann::json days = nlohmann::json::array();
  for (std::size_t t = 0; t < series.days.size(); ++t) {
    const auto& d = series.days[t];
    const auto date = format_date(start + std::chrono::days{static_cast<int>(t)});
    os << date << ',' << format_double(d.beta) << ',' << format_double(d.loss) << ',' << d.iterations << '\n';
    days.push_back({{"date", date},
                    {"beta", d.beta},
                    {"loss", d.loss},
                    {"iterations", d.iterations},
                    {"converged", d.converged},
                    {"zero_branch", d.zero_branch},
                    {"predicted_new_h", d.predicted},
                    {"canonical_new_h", t < series.canonical.size() ? series.canonical[t].new_h : 0}});
  }
  finish(os, csv_path);
  auto js = open_out(json_path);
  js << nlohmann::json{{"days", days}}.dump(2) << '\n';
  finish(js, json_path);
}

void export_sweep(const SweepResult& result, const std::string& csv_path, const std::string& json_path) {
  auto os = open_out(csv_path);
  os << "p_r,p_w,rmse,mean_beta,appropriate\n";
  nlohmann::json cells = nlohmann::json::array();
  std::size_t appropriate = 0, failed = 0;
  for (const auto& c : result.cells) {
    os << format_double(c.p_r) << ',' << format_double(c.p_w) << ',' << format_double(c.rmse) << ','
       << format_double(c.mean_beta) << ',' << (c.failed ? "failed" : (c.appropriate ? "true" : "false")) << '\n';
    nlohmann::json cell{{"p_r", c.p_r}, {"p_w", c.p_w}, {"rmse", c.rmse}, {"mean_beta", c.mean_beta},
                        {"appropriate", c.appropriate}, {"failed", c.failed}};
    if (c.failed) cell["error"] = c.error;
    cells.push_back(std::move(cell));
    appropriate += c.appropriate ? 1 : 0;
    failed += c.failed ? 1 : 0;
  }
  finish(os, csv_path);
  auto js = open_out(json_path);
  js << nlohmann::json{{"rmse_threshold", result.threshold},
                       {"cell_count", result.cells.size()},
                       {"appropriate_count", appropriate},
                       {"failed_count", failed},
                       {"cells", cells}}
            .dump(2)
     << '\n';
  finish(js, json_path);
}

}  // namespace seirah
