// Copyright 2026 The cvhbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvhbt/experiment_sim.hpp"
#include "cvhbt/hom_temporal.hpp"

namespace cvhbt::io {

/// Shortest decimal string that parses back to exactly `x`.
std::string shortest(double x);

/// printf("%.12g")-style rendering.
std::string significant12(double x);

/// Header `setting,expected_rate,counts`, one row per record in input order,
/// floats with 12 significant digits.
void write_count_records_csv(std::ostream& out, std::span<const CountRecord> records);

/// `# key=value` metadata lines followed by a header and the columns, all
/// numbers in shortest round-trip form. Columns must have equal length.
void write_columns_csv(std::ostream& out,
                       std::span<const std::pair<std::string, std::string>> metadata,
                       std::span<const std::string> header,
                       std::span<const std::vector<double>> columns);

/// Header `T,p`.
void write_dip_curve_csv(std::ostream& out, const DipCurve& curve);

}  // namespace cvhbt::io
