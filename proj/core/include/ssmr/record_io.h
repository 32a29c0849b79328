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

#ifndef SSMR_RECORD_IO_H_
#define SSMR_RECORD_IO_H_

// CSV serialization of experiment records and atomic file output.

#include <array>
#include <filesystem>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ssmr/simulator.h"

namespace ssmr {

inline constexpr std::array<const char*, 24> kRecordColumns = {
    "t",        "x_d",     "y_d",          "theta_d",      "x",
    "y",        "theta",   "e_x",          "e_y",          "e_theta",
    "eps1",     "eps2",    "eps3",         "s1",           "s2",
    "v_r",      "omega_r", "v_c",          "omega_c",      "s_v_true",
    "sigma_v_true", "s_v_hat", "sigma_v_hat", "dis"};

// Header line plus one line per row, each value printed with %.9g.
std::string FormatRecordCsv(const ExperimentRecord& record);

// Inverse of FormatRecordCsv up to the 9-digit rounding. Columns not in the
// schema (plant twist, plant parameters) are left at their defaults; dt is
// taken from the first two rows.
absl::StatusOr<ExperimentRecord> ParseRecordCsv(absl::string_view text);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
absl::Status WriteFileAtomic(const std::filesystem::path& path,
                             absl::string_view contents);

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

absl::Status WriteRecordCsv(const ExperimentRecord& record,
                            const std::filesystem::path& path);
absl::StatusOr<ExperimentRecord> ReadRecordCsv(
    const std::filesystem::path& path);

}  // namespace ssmr

#endif  // SSMR_RECORD_IO_H_
