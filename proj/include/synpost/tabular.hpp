//
// Copyright 2026 The synpost Authors
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
//

#ifndef SYNPOST_TABULAR_HPP_
#define SYNPOST_TABULAR_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synpost/matrix.hpp"

namespace synpost {

enum class FeatureKind { kNumeric, kCategorical };

struct FeatureMeta {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  // For categorical columns a cell stores an index into this pool. The pool
  // order is first occurrence for loaded data and lexicographic after
  // preprocessing.
  std::vector<std::string> categories;
};

// A table of n records over d features. Cells are doubles; categorical cells
// index their column's category pool. After preprocessing all cells lie in
// [0, 1] and `normalized()` is true. A designated target column, when set,
// may only take values 0 and 1.
class Dataset {
 public:
  Dataset() = default;
  Dataset(Matrix records, std::vector<FeatureMeta> meta,
          std::optional<std::size_t> target_index = std::nullopt,
          bool normalized = false);

  std::size_t n() const { return records_.rows(); }
  std::size_t d() const { return records_.cols(); }
  const Matrix& records() const { return records_; }
  double cell(std::size_t i, std::size_t j) const { return records_(i, j); }
  std::span<const double> row(std::size_t i) const { return records_.row(i); }
  const std::vector<FeatureMeta>& meta() const { return meta_; }
  const FeatureMeta& feature(std::size_t j) const { return meta_[j]; }
  std::optional<std::size_t> target_index() const { return target_index_; }
  bool normalized() const { return normalized_; }

  std::optional<std::size_t> feature_index(const std::string& name) const;

 private:
  Matrix records_;
  std::vector<FeatureMeta> meta_;
  std::optional<std::size_t> target_index_;
  bool normalized_ = false;
};

// Optional sidecar declaring per-column kinds and the target column.
struct CsvSchema {
  struct Column {
    std::string name;
    FeatureKind kind = FeatureKind::kNumeric;
  };
  std::vector<Column> columns;  // empty -> kinds are sniffed per column
  std::optional<std::string> target;
};

// Reads a UTF-8, comma-separated file with one header row. Raw values are
// retained: numeric cells are parsed, categorical cells are interned in
// first-occurrence order. Preprocessing is a separate step.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<CsvSchema>& schema = std::nullopt);

// Per-feature transform into [0, 1]: min-max for numeric columns,
// lexicographic ordinal codes followed by min-max for categorical columns.
// Constant columns map to 0.
class Preprocessor {
 public:
  struct ColumnTransform {
    std::string name;
    FeatureKind kind = FeatureKind::kNumeric;
    double min = 0.0;
    double max = 0.0;
    std::vector<std::string> categories;  // sorted lexicographically
  };

  Preprocessor() = default;

  bool fitted() const { return fitted_; }
  const std::vector<ColumnTransform>& columns() const { return columns_; }

  static Preprocessor fit(const Dataset& data);
  Dataset apply(const Dataset& data) const;
  // Maps normalized cells back to original units (numeric within 1e-9,
  // categorical exactly).
  Dataset invert(const Dataset& data) const;

 private:
  std::vector<ColumnTransform> columns_;
  bool fitted_ = false;
};

Preprocessor fit_preprocessor(const Dataset& data);
Dataset apply_preprocessor(const Preprocessor& pre, const Dataset& data);

// Deterministic seeded shuffle, then a (floor(fraction * n), remainder) split
// with disjoint row coverage.
std::pair<Dataset, Dataset> split_real(const Dataset& data, double train_fraction,
                                       std::uint64_t seed);

// The empirical distribution over the unique records of a dataset.
struct SupportDistribution {
  Matrix support;                               // S x d, first-occurrence order
  std::vector<double> probs;                    // multiplicity / n
  std::vector<std::size_t> multiplicity;        // counts per support point
  std::vector<std::size_t> record_to_support;   // length n

  std::size_t size() const { return probs.size(); }
};

SupportDistribution support(const Dataset& data);

// Writes a dataset as CSV. When `invert_with` is given, cells are mapped back
// to original units first (category labels restored).
void write_csv(const Dataset& data, const std::filesystem::path& path,
               const Preprocessor* invert_with = nullptr);

}  // namespace synpost

#endif  // SYNPOST_TABULAR_HPP_
