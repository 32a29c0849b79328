// Copyright 2026 The ssmr-smc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssmr/record_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace ssmr {
namespace {

std::array<double, kRecordColumns.size()> RowValues(const ExperimentRow& r) {
  return {r.t,
          r.desired.x(),
          r.desired.y(),
          r.desired.theta(),
          r.actual.x(),
          r.actual.y(),
          r.actual.theta(),
          r.global.x,
          r.global.y,
          r.global.theta,
          r.local.along,
          r.local.cross,
          r.local.heading,
          r.manifolds.s1,
          r.manifolds.s2,
          r.command.v_r,
          r.command.omega_r,
          r.command.v_c,
          r.command.omega_c,
          r.truth.s_v,
          r.truth.sigma_v,
          r.estimate.s_v,
          r.estimate.sigma_v,
          r.dis};
}

ExperimentRow RowFromValues(const std::array<double, kRecordColumns.size()>& v) {
  ExperimentRow r;
  r.t = v[0];
  r.desired = Pose2D(v[1], v[2], v[3]);
  r.actual = Pose2D(v[4], v[5], v[6]);
  r.global = {v[7], v[8], v[9]};
  r.local = {v[10], v[11], v[12]};
  r.manifolds = {v[13], v[14]};
  r.command = {v[15], v[16], v[17], v[18]};
  r.truth = {v[19], v[20]};
  r.estimate = {v[21], v[22]};
  r.dis = v[23];
  return r;
}

}  // namespace

std::string FormatRecordCsv(const ExperimentRecord& record) {
  std::string out = absl::StrJoin(kRecordColumns, ",");
  out += '\n';
  char buf[32];
  for (const ExperimentRow& row : record.rows) {
    bool first = true;
    for (double value : RowValues(row)) {
      if (!first) out += ',';
      first = false;
      std::snprintf(buf, sizeof(buf), "%.9g", value);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

absl::StatusOr<ExperimentRecord> ParseRecordCsv(absl::string_view text) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(text, '\n', absl::SkipEmpty());
  if (lines.empty()) return absl::InvalidArgumentError("empty record file");
  if (lines[0] != absl::StrJoin(kRecordColumns, ",")) {
    return absl::InvalidArgumentError("record header does not match schema");
  }
  ExperimentRecord record;
  record.rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<absl::string_view> cells = absl::StrSplit(lines[i], ',');
    if (cells.size() != kRecordColumns.size()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected %d columns, got %d", i + 1,
                          kRecordColumns.size(), cells.size()));
    }
    std::array<double, kRecordColumns.size()> values;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!absl::SimpleAtod(cells[c], &values[c])) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "line %d: bad number '%s' in column %s", i + 1, cells[c],
            kRecordColumns[c]));
      }
    }
    record.rows.push_back(RowFromValues(values));
  }
  if (record.rows.size() >= 2) {
    record.dt = record.rows[1].t - record.rows[0].t;
  }
  return record;
}

absl::Status WriteFileAtomic(const std::filesystem::path& path,
                             absl::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::UnavailableError(
          absl::StrFormat("cannot open %s for writing", tmp.string()));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      return absl::UnavailableError(
          absl::StrFormat("write to %s failed", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return absl::UnavailableError(
        absl::StrFormat("cannot rename onto %s", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrFormat("cannot open %s", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteRecordCsv(const ExperimentRecord& record,
                            const std::filesystem::path& path) {
  return WriteFileAtomic(path, FormatRecordCsv(record));
}

absl::StatusOr<ExperimentRecord> ReadRecordCsv(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseRecordCsv(*text);
}

}  // namespace ssmr
