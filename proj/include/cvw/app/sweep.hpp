#pragma once

// Parameter grids, parallel evaluation and table output.
//
// A range is "start:stop:step" (stop included when hit within rounding), a
// comma list "0.1,0.5,0.9", or a single number. Grid rows are ordered
// lexicographically over (p, lambda, mu, t, phi) whatever order the workers
// finish in.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cvw/app/measures.hpp"

namespace cvw::app {

/// Text of a double at 12 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Rounds to what format_number prints.
inline double round12(double v) { return std::stod(format_number(v)); }

inline std::vector<double> parse_range(const std::string& text) {
  if (text.empty()) throw domain_error("empty range");
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw domain_error("bad number '" + s + "' in range '" + text + "'");
    }
    if (used != s.size()) throw domain_error("bad number '" + s + "' in range '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw domain_error("range '" + text + "' is not start:stop:step");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0)) throw domain_error("range step must be positive");
    if (stop < start) throw domain_error("range stop below start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) out.push_back(round12(start + static_cast<double>(i) * step));
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  }
  return out;
}

struct SweepSpec {
  std::string measure;
  std::vector<double> p{0.5};
  std::vector<double> lambda{0.5};
  std::vector<double> mu{0.0};
  std::vector<double> t{0.0};
  std::vector<double> phi{0.0};
  PointParams base;  // cutoff, tolerances, seed
  std::size_t threads = 0;  // 0: hardware concurrency capped by CVW_THREADS
};

struct SweepRow {
  PointParams params;
  MeasureReport report;
  std::string error;  // empty on success
};

struct SweepTable {
  const MeasureInfo* info = nullptr;
  std::vector<SweepRow> rows;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); }));
  }
};

inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CVW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

/// Expands the grid over the parameters the measure uses; unused axes keep
/// their first value.
inline std::vector<PointParams> expand_grid(const SweepSpec& spec, const MeasureInfo& info) {
  auto axis = [&](const char* name, const std::vector<double>& values) {
    const bool used = std::find(info.inputs.begin(), info.inputs.end(), name) != info.inputs.end();
    if (values.empty()) throw domain_error(std::string("empty range for ") + name);
    return used ? values : std::vector<double>{values.front()};
  };
  const auto ps = axis("p", spec.p);
  const auto ls = axis("lambda", spec.lambda);
  const auto ms = axis("mu", spec.mu);
  const auto ts = axis("t", spec.t);
  const auto fs = axis("phi", spec.phi);
  std::vector<PointParams> grid;
  for (double p : ps)
    for (double l : ls)
      for (double m : ms)
        for (double t : ts)
          for (double f : fs) {
            PointParams pt = spec.base;
            pt.p = p;
            pt.lambda = l;
            pt.mu = m;
            pt.t = t;
            pt.phi = f;
            grid.push_back(pt);
          }
  return grid;
}

inline SweepTable run_sweep(const SweepSpec& spec) {
  SweepTable table;
  table.info = &find_measure(spec.measure);
  const auto grid = expand_grid(spec, *table.info);
  table.rows.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      auto& row = table.rows[i];
      row.params = grid[i];
      try {
        row.report = compute(spec.measure, grid[i]);
      } catch (const std::exception& e) {
        row.error = e.what();
        row.report.measure = spec.measure;
      }
    }
  };
  const auto n = worker_count(spec.threads, grid.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return table;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::vector<std::string> csv_header(const MeasureInfo& info) {
  std::vector<std::string> h(info.inputs.begin(), info.inputs.end());
  for (const auto& r : info.results) h.push_back(column_unit(r).empty() ? r : r + "[" + column_unit(r) + "]");
  for (const auto& l : info.labels) h.push_back(l);
  h.push_back("n_max");
  h.push_back("error_budget[nats]");
  h.push_back("error");
  return h;
}

inline void write_csv(std::ostream& out, const SweepTable& table) {
  const auto& info = *table.info;
  const auto header = csv_header(info);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    std::vector<std::string> f;
    for (const auto& k : info.inputs) f.push_back(format_number(input_value(row.params, k)));
    const bool ok = row.error.empty();
    for (const auto& k : info.results) f.push_back(ok ? format_number(row.report.result(k)) : "");
    for (const auto& l : info.labels) {
      std::string v;
      for (const auto& [k, s] : row.report.labels)
        if (k == l) v = s;
      f.push_back(v);
    }
    f.push_back(ok ? std::to_string(row.report.n_max) : "");
    f.push_back(ok ? format_number(row.report.error_budget) : "");
    f.push_back(detail::csv_field(row.error));
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
}

/// Parsed CSV: header plus rows of raw fields (quotes removed).
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range("no CSV column " + name);
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline CsvData read_csv(std::istream& in) {
  CsvData d;
  std::string line;
  if (!std::getline(in, line)) throw domain_error("empty CSV");
  d.header = split_csv_line(line);
  while (std::getline(in, line))
    if (!line.empty()) d.rows.push_back(split_csv_line(line));
  return d;
}

inline nlohmann::json to_json(const MeasureReport& r) {
  nlohmann::json j;
  j["measure"] = r.measure;
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = round12(v);
  for (const auto& [k, v] : r.results) {
    j["results"][k] = round12(v);
    if (!column_unit(k).empty()) j["units"][k] = column_unit(k);
  }
  for (const auto& [k, v] : r.labels) j["results"][k] = v;
  j["n_max"] = r.n_max;
  j["error_budget"] = round12(r.error_budget);
  j["wall_seconds"] = round12(r.wall_seconds);
  return j;
}

inline nlohmann::json to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.error.empty()) {
      rows.push_back(to_json(row.report));
    } else {
      nlohmann::json j;
      j["measure"] = table.info->name;
      for (const auto& k : table.info->inputs) j["inputs"][k] = round12(input_value(row.params, k));
      j["error"] = row.error;
      rows.push_back(j);
    }
  }
  return rows;
}

}  // namespace cvw::app
