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

#ifndef VALGAME_DATASET_HPP_
#define VALGAME_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace valgame {

// Binary classification data. Rows of `features` are points; `train` lists
// the rows forming the player pool (player i is row train[i]) and `test` the
// held-out rows used to score a trained model.
struct Dataset {
  int dim = 0;
  std::vector<double> features;  // row-major, rows() x dim
  std::vector<int> labels;       // +1 / -1
  std::vector<int> train;
  std::vector<int> test;

  int rows() const { return static_cast<int>(labels.size()); }
  int train_size() const { return static_cast<int>(train.size()); }
  std::span<const double> row(int r) const {
    return {features.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  // Throws kInvalidArgument on shape mismatch, bad labels or overlapping splits.
  void Validate() const;
};

// 10 train points and 1000 test points in 2-D. Each point is drawn from one of
// two unit-covariance Gaussians centred at (+0.1, +0.1) and (-0.1, -0.1) with
// equal probability; the label is the sign of the feature sum (0 maps to +1).
Dataset MakeSyntheticSmall(std::uint64_t seed);

// 200 train points and 2000 test points in 50-D from a unit-covariance Gaussian
// whose per-dimension means are drawn from U[-1, 1]; sign-of-sum labels.
Dataset MakeSyntheticLarge(std::uint64_t seed);

// Reads a headered CSV. `label_column` is a column name or a 0-based index.
// Features are standardised with the train-pool mean and deviation.
Dataset LoadCsvDataset(const std::filesystem::path& path, const std::string& label_column,
                       double test_fraction, std::uint64_t seed);

}  // namespace valgame

#endif  // VALGAME_DATASET_HPP_
