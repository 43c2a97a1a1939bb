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

#include "valgame/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "valgame/error.hpp"
#include "valgame/rng.hpp"

namespace valgame {

void Dataset::Validate() const {
  Require(dim >= 1, ErrorCode::kInvalidArgument, "dataset needs dim >= 1");
  Require(features.size() == labels.size() * static_cast<std::size_t>(dim),
          ErrorCode::kInvalidArgument, "feature matrix does not match label count");
  for (int y : labels) {
    Require(y == 1 || y == -1, ErrorCode::kInvalidArgument, "labels must be +1 or -1");
  }
  std::vector<char> used(labels.size(), 0);
  auto mark = [&](const std::vector<int>& idx, char tag) {
    for (int r : idx) {
      Require(r >= 0 && r < rows(), ErrorCode::kInvalidArgument, "split index out of range");
      Require(used[static_cast<std::size_t>(r)] == 0, ErrorCode::kInvalidArgument,
              "train pool and test set overlap");
      used[static_cast<std::size_t>(r)] = tag;
    }
  };
  mark(train, 1);
  mark(test, 2);
}

namespace {

int SignLabel(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum >= 0.0 ? 1 : -1;
}

void AppendPoint(Dataset& d, std::span<const double> x) {
  d.features.insert(d.features.end(), x.begin(), x.end());
  d.labels.push_back(SignLabel(x));
}

}  // namespace

Dataset MakeSyntheticSmall(std::uint64_t seed) {
  constexpr int kTrain = 10;
  constexpr int kTest = 1000;
  constexpr double kMean = 0.1;
  SeededRng rng = SeededRng(seed).Child("synthetic-small");
  Dataset d;
  d.dim = 2;
  std::vector<double> x(2);
  for (int r = 0; r < kTrain + kTest; ++r) {
    const double mean = rng.Coin() ? kMean : -kMean;
    for (double& v : x) v = mean + rng.Normal();
    AppendPoint(d, x);
    (r < kTrain ? d.train : d.test).push_back(r);
  }
  return d;
}

Dataset MakeSyntheticLarge(std::uint64_t seed) {
  constexpr int kTrain = 200;
  constexpr int kTest = 2000;
  constexpr int kDim = 50;
  SeededRng rng = SeededRng(seed).Child("synthetic-large");
  std::vector<double> means(kDim);
  for (double& m : means) m = rng.Uniform(-1.0, 1.0);
  Dataset d;
  d.dim = kDim;
  std::vector<double> x(kDim);
  for (int r = 0; r < kTrain + kTest; ++r) {
    for (int j = 0; j < kDim; ++j) x[static_cast<std::size_t>(j)] = means[j] + rng.Normal();
    AppendPoint(d, x);
    (r < kTrain ? d.train : d.test).push_back(r);
  }
  return d;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    const auto b = f.find_first_not_of(' ');
    const auto e = f.find_last_not_of(' ');
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

}  // namespace

Dataset LoadCsvDataset(const std::filesystem::path& path, const std::string& label_column,
                       double test_fraction, std::uint64_t seed) {
  Require(test_fraction > 0.0 && test_fraction < 1.0, ErrorCode::kInvalidArgument,
          "test_fraction must lie in (0, 1)");
  std::ifstream in(path);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot open dataset " + path.string());
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          path.string() + ": empty file");
  const std::vector<std::string> header = SplitCsvLine(line);
  int label_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) label_idx = static_cast<int>(i);
  }
  if (label_idx < 0) {
    int idx = -1;
    const auto [p, ec] =
        std::from_chars(label_column.data(), label_column.data() + label_column.size(), idx);
    Require(ec == std::errc() && p == label_column.data() + label_column.size() && idx >= 0 &&
                idx < static_cast<int>(header.size()),
            ErrorCode::kParse, path.string() + ": no label column '" + label_column + "'");
    label_idx = idx;
  }
  Require(header.size() >= 2, ErrorCode::kParse, path.string() + ": need at least one feature");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    Require(fields.size() == header.size(), ErrorCode::kParse,
            path.string() + ":" + std::to_string(line_no) + ": expected " +
                std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    std::vector<double> x;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (static_cast<int>(i) == label_idx) continue;
      double v = 0.0;
      const std::string& f = fields[i];
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      Require(!f.empty() && ec == std::errc() && p == f.data() + f.size() && std::isfinite(v),
              ErrorCode::kParse,
              path.string() + ":" + std::to_string(line_no) + ": non-numeric feature '" + f +
                  "' in column '" + header[i] + "'");
      x.push_back(v);
    }
    rows.push_back(std::move(x));
    raw_labels.push_back(fields[static_cast<std::size_t>(label_idx)]);
  }
  const std::set<std::string> classes(raw_labels.begin(), raw_labels.end());
  Require(classes.size() >= 2, ErrorCode::kInvalidArgument,
          path.string() + ": need at least two label classes");
  const std::string& positive = *classes.rbegin();
  const int total = static_cast<int>(rows.size());
  const int test_count = static_cast<int>(std::lround(test_fraction * total));
  Require(test_count >= 1 && test_count < total, ErrorCode::kInvalidArgument,
          path.string() + ": split leaves an empty train pool or test set");

  std::vector<int> order(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  SeededRng rng = SeededRng(seed).Child("csv-split");
  rng.Shuffle(std::span<int>(order));

  Dataset d;
  d.dim = static_cast<int>(header.size()) - 1;
  for (int r = 0; r < total; ++r) {
    const auto& x = rows[static_cast<std::size_t>(r)];
    d.features.insert(d.features.end(), x.begin(), x.end());
    d.labels.push_back(raw_labels[static_cast<std::size_t>(r)] == positive ? 1 : -1);
  }
  d.test.assign(order.begin(), order.begin() + test_count);
  d.train.assign(order.begin() + test_count, order.end());
  std::sort(d.train.begin(), d.train.end());
  std::sort(d.test.begin(), d.test.end());

  for (int j = 0; j < d.dim; ++j) {
    double mean = 0.0;
    for (int r : d.train) mean += d.row(r)[j];
    mean /= d.train_size();
    double var = 0.0;
    for (int r : d.train) var += (d.row(r)[j] - mean) * (d.row(r)[j] - mean);
    var /= d.train_size();
    const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (int r = 0; r < total; ++r) {
      double& v = d.features[static_cast<std::size_t>(r) * d.dim + j];
      v = (v - mean) * scale;
    }
  }
  d.Validate();
  return d;
}

}  // namespace valgame
