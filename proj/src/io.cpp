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

#include "cvhbt/io.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include "cvhbt/errors.hpp"

namespace cvhbt::io {

std::string shortest(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (res.ec != std::errc{}) throw std::runtime_error("shortest: to_chars failed");
  return std::string(buf.data(), res.ptr);
}

std::string significant12(double x) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
  if (res.ec != std::errc{}) throw std::runtime_error("significant12: to_chars failed");
  return std::string(buf.data(), res.ptr);
}

void write_count_records_csv(std::ostream& out, std::span<const CountRecord> records) {
  out << "setting,expected_rate,counts\n";
  for (const auto& r : records) {
    out << significant12(r.setting) << ',' << significant12(r.expected_rate) << ',' << r.counts
        << '\n';
  }
}

void write_columns_csv(std::ostream& out,
                       std::span<const std::pair<std::string, std::string>> metadata,
                       std::span<const std::string> header,
                       std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) {
    throw InvalidParameter("write_columns_csv: header/column count mismatch");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw InvalidParameter("write_columns_csv: ragged columns");
  }
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << shortest(columns[c][r]);
    }
    out << '\n';
  }
}

void write_dip_curve_csv(std::ostream& out, const DipCurve& curve) {
  const std::array<std::string, 2> header{"T", "p"};
  const std::array<std::vector<double>, 2> cols{curve.times, curve.values};
  write_columns_csv(out, {}, header, cols);
}

}  // namespace cvhbt::io
