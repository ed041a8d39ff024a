// Copyright 2026 The socsense Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "socsense/signals/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "socsense/error.hpp"
#include "socsense/provenance.hpp"

namespace socsense {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool is_missing(std::string_view field) {
  return field.empty() || field == "nan" || field == "NaN" || field == "NA" || field == "null";
}

double parse_number(std::string_view field, std::size_t line, std::string_view column) {
  double v = 0.0;
  const char* first = field.data();
  if (!field.empty() && field.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": column '" + std::string(column) +
                     "': cannot parse '" + std::string(field) + "' as a number");
  }
  return v;
}

struct Range {
  double lo;
  double hi;
  const char* unit;
};

Range plausible_range(ChannelId id) {
  switch (id) {
    case ChannelId::current:
      return {-1000.0, 1000.0, "A"};
    case ChannelId::voltage:
      return {-1.0, 10.0, "V"};
    case ChannelId::expansion:
      return {-1e5, 1e5, "um"};
    case ChannelId::temp_surface:
    case ChannelId::temp_hf:
    case ChannelId::temp_lf:
    case ChannelId::temp_internal:
      return {-60.0, 150.0, "degC"};
    case ChannelId::intensity:
      return {-1e9, 1e9, "a.u."};
    case ChannelId::wavelength:
      return {100.0, 5000.0, "nm"};
    case ChannelId::cathode:
    case ChannelId::anode:
      return {-2.0, 6.0, "V"};
    case ChannelId::force:
      return {-1e6, 1e6, "N"};
    case ChannelId::pressure:
      return {0.0, 1e5, "kPa"};
  }
  return {-1e300, 1e300, ""};
}

enum class Role { time, soc, cycle, phase, channel };

struct Column {
  std::string name;
  Role role;
  ChannelId channel{};
};

// Linear interpolation over missing entries, by source time. Leading and
// trailing gaps take the nearest valid value.
std::size_t fill_missing(std::vector<double>& values, const std::vector<bool>& missing,
                         const std::vector<double>& t, const std::string& column) {
  std::size_t filled = 0;
  std::ptrdiff_t prev = -1;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (missing[i]) continue;
    if (prev + 1 < i) {
      for (std::ptrdiff_t j = prev + 1; j < i; ++j) {
        if (prev < 0) {
          values[j] = values[i];
        } else {
          const double w = (t[j] - t[prev]) / (t[i] - t[prev]);
          values[j] = values[prev] + w * (values[i] - values[prev]);
        }
        ++filled;
      }
    }
    prev = i;
  }
  if (prev < 0) throw InputError("column '" + column + "' has no values");
  for (std::ptrdiff_t j = prev + 1; j < n; ++j, ++filled) values[j] = values[prev];
  return filled;
}

}  // namespace

CsvSchema CsvSchema::canonical() {
  CsvSchema s;
  for (ChannelId id : kAllChannels) {
    if (auto col = channel_column(id)) s.columns.emplace(std::string(*col), id);
  }
  return s;
}

SignalMatrix parse_csv(std::string_view text, const CsvSchema& schema, CsvLoadReport* report) {
  if (!(schema.sample_period_s > 0.0)) throw InputError("sample period must be positive");

  std::vector<Column> columns;
  std::vector<std::vector<double>> numeric;  // per column, unused for phase
  std::vector<std::vector<bool>> missing;
  std::vector<std::string> phases;
  std::size_t time_col = 0;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t rows = 0;

  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_fields(line);
    if (!have_header) {
      bool has_time = false;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string name(fields[i]);
        Column col{name, Role::channel};
        if (name == schema.time_column) {
          col.role = Role::time;
          time_col = i;
          has_time = true;
        } else if (name == schema.soc_column) {
          col.role = Role::soc;
        } else if (name == schema.cycle_column) {
          col.role = Role::cycle;
        } else if (name == schema.phase_column) {
          col.role = Role::phase;
        } else if (auto it = schema.columns.find(name); it != schema.columns.end()) {
          col.channel = it->second;
        } else {
          throw InputError("unknown column '" + name + "'");
        }
        for (const auto& other : columns) {
          if (other.name == name || (col.role == Role::channel && other.role == Role::channel &&
                                     other.channel == col.channel)) {
            throw InputError("duplicate column '" + name + "'");
          }
        }
        columns.push_back(col);
      }
      if (!has_time) throw InputError("missing time column '" + schema.time_column + "'");
      numeric.resize(columns.size());
      missing.resize(columns.size());
      have_header = true;
      continue;
    }

    if (fields.size() != columns.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const Column& col = columns[i];
      if (col.role == Role::phase) {
        phases.emplace_back(fields[i]);
        continue;
      }
      if (is_missing(fields[i])) {
        if (col.role == Role::time) {
          throw InputError("line " + std::to_string(line_no) + ": missing timestamp");
        }
        if (schema.missing == MissingValuePolicy::reject) {
          throw InputError("line " + std::to_string(line_no) + ": missing value in column '" +
                           col.name + "'");
        }
        numeric[i].push_back(0.0);
        missing[i].push_back(true);
        continue;
      }
      const double v = parse_number(fields[i], line_no, col.name);
      if (schema.check_units) {
        if (col.role == Role::soc && (v < 0.0 || v > 1.0)) {
          throw InputError("line " + std::to_string(line_no) + ": soc " + std::string(fields[i]) +
                           " outside [0, 1] (expected a fraction)");
        }
        if (col.role == Role::channel) {
          const Range r = plausible_range(col.channel);
          if (v < r.lo || v > r.hi) {
            throw InputError("line " + std::to_string(line_no) + ": " + col.name + " = " +
                             std::string(fields[i]) + " outside plausible range for unit " +
                             r.unit);
          }
        }
      }
      numeric[i].push_back(v);
      missing[i].push_back(false);
    }
    const auto& t = numeric[time_col];
    if (rows > 0 && !(t[rows] > t[rows - 1])) {
      throw InputError("line " + std::to_string(line_no) + ": timestamp " +
                       std::string(fields[time_col]) + " is not after the previous one");
    }
    if (rows > 0 && t[rows] - t[rows - 1] > schema.max_gap_s) {
      throw InputError("line " + std::to_string(line_no) + ": gap of " +
                       std::to_string(t[rows] - t[rows - 1]) + " s exceeds max_gap_s " +
                       std::to_string(schema.max_gap_s));
    }
    ++rows;
  }
  if (!have_header) throw InputError("empty CSV: no header row");
  if (rows == 0) throw InputError("CSV has a header but no data rows");

  std::size_t interpolated = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].role == Role::phase || columns[i].role == Role::time) continue;
    interpolated += fill_missing(numeric[i], missing[i], numeric[time_col], columns[i].name);
  }

  // Resample onto t0 + j*dt.
  const auto& src_t = numeric[time_col];
  const double dt = schema.sample_period_s;
  const double t0 = src_t.front();
  const std::size_t out_rows =
      static_cast<std::size_t>(std::floor((src_t.back() - t0) / dt + 1e-9)) + 1;
  std::vector<double> grid(out_rows);
  std::vector<std::size_t> lower(out_rows);
  std::vector<double> weight(out_rows);
  {
    std::size_t j = 0;
    for (std::size_t r = 0; r < out_rows; ++r) {
      const double t = t0 + static_cast<double>(r) * dt;
      grid[r] = t;
      while (j + 1 < rows && src_t[j + 1] <= t) ++j;
      lower[r] = j;
      weight[r] = (j + 1 < rows) ? (t - src_t[j]) / (src_t[j + 1] - src_t[j]) : 0.0;
    }
  }
  auto resample = [&](const std::vector<double>& v) {
    std::vector<double> out(out_rows);
    for (std::size_t r = 0; r < out_rows; ++r) {
      const std::size_t j = lower[r];
      out[r] = weight[r] == 0.0 ? v[j] : v[j] + weight[r] * (v[j + 1] - v[j]);
    }
    return out;
  };

  std::vector<ChannelId> channel_ids;
  std::vector<std::vector<double>> channel_values;
  std::optional<std::vector<double>> soc;
  std::optional<std::vector<int>> cycle;
  std::optional<std::vector<std::string>> phase;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    switch (columns[i].role) {
      case Role::time:
        break;
      case Role::channel:
        channel_ids.push_back(columns[i].channel);
        channel_values.push_back(resample(numeric[i]));
        break;
      case Role::soc:
        soc = resample(numeric[i]);
        break;
      case Role::cycle: {
        std::vector<int> c(out_rows);
        for (std::size_t r = 0; r < out_rows; ++r) {
          c[r] = static_cast<int>(std::lround(numeric[i][lower[r]]));
        }
        cycle = std::move(c);
        break;
      }
      case Role::phase: {
        std::vector<std::string> p(out_rows);
        for (std::size_t r = 0; r < out_rows; ++r) p[r] = phases[lower[r]];
        phase = std::move(p);
        break;
      }
    }
  }

  Matrix values(out_rows, channel_ids.size());
  for (std::size_t c = 0; c < channel_ids.size(); ++c) {
    for (std::size_t r = 0; r < out_rows; ++r) values(r, c) = channel_values[c][r];
  }
  SignalMatrix out(std::move(grid), std::move(channel_ids), std::move(values));
  if (soc) out.set_soc(std::move(*soc));
  if (cycle) out.set_cycle(std::move(*cycle));
  if (phase) out.set_phase(std::move(*phase));
  if (report) *report = {rows, out_rows, interpolated};
  return out;
}

SignalMatrix load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                      CsvLoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv(buf.str(), schema, report);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

void write_csv(const std::filesystem::path& path, const SignalMatrix& matrix,
               const std::string& comment) {
  std::vector<std::size_t> cols;
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "time_s";
  for (std::size_t c = 0; c < matrix.channel_count(); ++c) {
    if (auto name = channel_column(matrix.channels()[c])) {
      out += ',';
      out += *name;
      cols.push_back(c);
    }
  }
  if (matrix.soc()) out += ",soc";
  if (matrix.cycle()) out += ",cycle";
  if (matrix.phase()) out += ",phase";
  out += '\n';
  for (std::size_t r = 0; r < matrix.steps(); ++r) {
    append_number(out, matrix.timestamps()[r]);
    for (std::size_t c : cols) {
      out += ',';
      append_number(out, matrix.values()(r, c));
    }
    if (matrix.soc()) {
      out += ',';
      append_number(out, (*matrix.soc())[r]);
    }
    if (matrix.cycle()) {
      out += ',';
      out += std::to_string((*matrix.cycle())[r]);
    }
    if (matrix.phase()) {
      out += ',';
      out += (*matrix.phase())[r];
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace socsense
