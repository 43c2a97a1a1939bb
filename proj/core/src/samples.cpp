// Copyright 2026 The valgame Authors
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

#include "valgame/samples.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "valgame/error.hpp"

namespace valgame {

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kTrueEval ? "true_eval" : "predicted";
}

Provenance ParseProvenance(std::string_view text) {
  if (text == "true_eval") return Provenance::kTrueEval;
  if (text == "predicted") return Provenance::kPredicted;
  Fail(ErrorCode::kParse, "unknown provenance '" + std::string(text) + "'");
}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void WriteSamplesCsv(std::ostream& out, std::span<const UtilitySample> samples) {
  out << "mask,value,provenance\n";
  for (const UtilitySample& s : samples) {
    out << s.coalition.ToString() << ',' << FormatDouble(s.value) << ','
        << ProvenanceName(s.provenance) << '\n';
  }
}

void WriteSamplesCsv(const std::filesystem::path& path, std::span<const UtilitySample> samples) {
  std::ofstream out(path);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  WriteSamplesCsv(out, samples);
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

double ParseDouble(std::string_view text, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  Require(ec == std::errc() && ptr == text.data() + text.size(), ErrorCode::kParse,
          "line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::vector<UtilitySample> ReadSamplesCsv(std::istream& in) {
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse, "empty sample file");
  Require(Trim(line) == "mask,value,provenance", ErrorCode::kParse,
          "line 1: expected header 'mask,value,provenance'");
  std::vector<UtilitySample> out;
  int line_no = 1;
  int n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = Trim(line);
    if (row.empty()) continue;
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    Require(c2 != std::string_view::npos, ErrorCode::kParse,
            "line " + std::to_string(line_no) + ": expected 3 fields");
    Coalition c = Coalition::Parse(row.substr(0, c1));
    Require(n < 0 || c.n() == n, ErrorCode::kParse,
            "line " + std::to_string(line_no) + ": mask width differs from earlier rows");
    n = c.n();
    const double v = ParseDouble(row.substr(c1 + 1, c2 - c1 - 1), line_no);
    out.push_back({std::move(c), v, ParseProvenance(row.substr(c2 + 1))});
  }
  return out;
}

std::vector<UtilitySample> ReadSamplesCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  return ReadSamplesCsv(in);
}

void WriteTableCsv(std::ostream& out, int n, std::span<const double> table) {
  Require(n >= 1 && n <= kMaxEnumerationPlayers && table.size() == (std::size_t{1} << n),
          ErrorCode::kInvalidArgument, "table size must be 2^n");
  out << "mask,value,provenance\n";
  for (std::size_t m = 0; m < table.size(); ++m) {
    out << Coalition::FromMask(n, m).ToString() << ',' << FormatDouble(table[m]) << ",true_eval\n";
  }
}

std::vector<double> ReadTableCsv(std::istream& in, int* n_out) {
  const std::vector<UtilitySample> rows = ReadSamplesCsv(in);
  Require(!rows.empty(), ErrorCode::kParse, "table file has no rows");
  const int n = rows.front().coalition.n();
  Require(n <= kMaxEnumerationPlayers, ErrorCode::kEnumerationTooLarge, "table too large");
  const std::size_t count = std::size_t{1} << n;
  Require(rows.size() == count, ErrorCode::kParse,
          "table has " + std::to_string(rows.size()) + " rows, expected 2^" + std::to_string(n));
  std::vector<double> table(count);
  std::vector<bool> seen(count, false);
  for (const UtilitySample& s : rows) {
    const auto m = static_cast<std::size_t>(s.coalition.mask());
    Require(!seen[m], ErrorCode::kParse, "duplicate row for " + s.coalition.ToString());
    seen[m] = true;
    table[m] = s.value;
  }
  if (n_out != nullptr) *n_out = n;
  return table;
}

}  // namespace valgame
