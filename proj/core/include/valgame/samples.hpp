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

#ifndef VALGAME_SAMPLES_HPP_
#define VALGAME_SAMPLES_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valgame/coalition.hpp"

namespace valgame {

enum class Provenance { kTrueEval, kPredicted };

std::string_view ProvenanceName(Provenance p);
Provenance ParseProvenance(std::string_view text);

struct UtilitySample {
  Coalition coalition;
  double value;
  Provenance provenance = Provenance::kTrueEval;
};

// CSV with header `mask,value,provenance`. Values are written with 17
// significant digits, so a write/read cycle is bit-exact.
void WriteSamplesCsv(std::ostream& out, std::span<const UtilitySample> samples);
void WriteSamplesCsv(const std::filesystem::path& path, std::span<const UtilitySample> samples);
std::vector<UtilitySample> ReadSamplesCsv(std::istream& in);
std::vector<UtilitySample> ReadSamplesCsv(const std::filesystem::path& path);

// Full tables use the same format: one true_eval row per coalition.
void WriteTableCsv(std::ostream& out, int n, std::span<const double> table);
std::vector<double> ReadTableCsv(std::istream& in, int* n_out);

std::string FormatDouble(double value);

}  // namespace valgame

#endif  // VALGAME_SAMPLES_HPP_
