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

#include "synpost/tabular.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "synpost/rng.hpp"

namespace synpost {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Minimal RFC-4180 row splitter: quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"' && cell.empty()) {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  if (quoted) {
    throw std::runtime_error("load_csv: unterminated quote on line " +
                             std::to_string(line_no));
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_row(std::span<const double> row) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (double v : row) {
    if (v == 0.0) v = 0.0;  // canonicalize -0.0
    h = mix64(h ^ std::bit_cast<std::uint64_t>(v));
  }
  return h;
}

bool rows_equal(std::span<const double> a, std::span<const double> b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] != b[j]) return false;
  }
  return true;
}

void format_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

}  // namespace

Dataset::Dataset(Matrix records, std::vector<FeatureMeta> meta,
                 std::optional<std::size_t> target_index, bool normalized)
    : records_(std::move(records)),
      meta_(std::move(meta)),
      target_index_(target_index),
      normalized_(normalized) {
  if (meta_.size() != records_.cols()) {
    throw std::invalid_argument("Dataset: feature metadata does not match column count");
  }
  if (target_index_) {
    if (*target_index_ >= records_.cols()) {
      throw std::invalid_argument("Dataset: target index out of range");
    }
    for (std::size_t i = 0; i < records_.rows(); ++i) {
      const double v = records_(i, *target_index_);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("Dataset: target column must be binary {0,1}");
      }
    }
  }
}

std::optional<std::size_t> Dataset::feature_index(const std::string& name) const {
  for (std::size_t j = 0; j < meta_.size(); ++j) {
    if (meta_[j].name == name) return j;
  }
  return std::nullopt;
}

Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<CsvSchema>& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open file: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_csv: empty file: " + path.string());
  }
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB &&
      static_cast<unsigned char>(line[2]) == 0xBF) {
    line.erase(0, 3);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_row(line, 1);
  const std::size_t d = header.size();

  if (schema && !schema->columns.empty()) {
    if (schema->columns.size() != d) {
      throw std::runtime_error("load_csv: schema declares " +
                               std::to_string(schema->columns.size()) +
                               " columns, file has " + std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (schema->columns[j].name != header[j]) {
        throw std::runtime_error("load_csv: schema column '" + schema->columns[j].name +
                                 "' does not match header '" + header[j] + "'");
      }
    }
  }

  std::vector<std::vector<std::string>> raw;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::vector<std::string> cells = split_csv_row(line, line_no);
    if (cells.size() != d) {
      throw std::runtime_error("load_csv: ragged row at line " + std::to_string(line_no) +
                               " (" + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(d) + ")");
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (cells[j].empty()) {
        throw std::runtime_error("load_csv: missing value at line " +
                                 std::to_string(line_no) + ", column '" + header[j] + "'");
      }
    }
    raw.push_back(std::move(cells));
  }
  const std::size_t n = raw.size();
  if (n == 0) {
    throw std::runtime_error("load_csv: no data rows in " + path.string());
  }

  // Decide per-column kinds: declared by schema, or numeric iff every cell
  // parses as a double.
  std::vector<FeatureKind> kinds(d, FeatureKind::kNumeric);
  for (std::size_t j = 0; j < d; ++j) {
    if (schema && !schema->columns.empty()) {
      kinds[j] = schema->columns[j].kind;
    } else {
      double tmp;
      for (std::size_t i = 0; i < n; ++i) {
        if (!parse_double(raw[i][j], tmp)) {
          kinds[j] = FeatureKind::kCategorical;
          break;
        }
      }
    }
  }

  Matrix records(n, d);
  std::vector<FeatureMeta> meta(d);
  for (std::size_t j = 0; j < d; ++j) {
    meta[j].name = header[j];
    meta[j].kind = kinds[j];
    if (kinds[j] == FeatureKind::kNumeric) {
      for (std::size_t i = 0; i < n; ++i) {
        double v;
        if (!parse_double(raw[i][j], v)) {
          throw std::runtime_error("load_csv: unparseable numeric cell '" + raw[i][j] +
                                   "' at line " + std::to_string(i + 2) + ", column '" +
                                   header[j] + "'");
        }
        records(i, j) = v;
      }
    } else {
      std::unordered_map<std::string, std::size_t> pool;
      for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = pool.emplace(raw[i][j], meta[j].categories.size());
        if (inserted) meta[j].categories.push_back(raw[i][j]);
        records(i, j) = static_cast<double>(it->second);
      }
    }
  }

  std::optional<std::size_t> target;
  if (schema && schema->target) {
    bool found = false;
    for (std::size_t j = 0; j < d; ++j) {
      if (header[j] == *schema->target) {
        target = j;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("load_csv: target column '" + *schema->target +
                               "' not in header");
    }
  }
  return Dataset(std::move(records), std::move(meta), target, /*normalized=*/false);
}

Preprocessor Preprocessor::fit(const Dataset& data) {
  if (data.n() == 0) {
    throw std::invalid_argument("fit_preprocessor: empty dataset");
  }
  Preprocessor pre;
  pre.columns_.resize(data.d());
  for (std::size_t j = 0; j < data.d(); ++j) {
    ColumnTransform& col = pre.columns_[j];
    col.name = data.feature(j).name;
    col.kind = data.feature(j).kind;
    if (col.kind == FeatureKind::kNumeric) {
      double lo = data.cell(0, j), hi = data.cell(0, j);
      for (std::size_t i = 1; i < data.n(); ++i) {
        lo = std::min(lo, data.cell(i, j));
        hi = std::max(hi, data.cell(i, j));
      }
      col.min = lo;
      col.max = hi;
    } else {
      col.categories = data.feature(j).categories;
      std::sort(col.categories.begin(), col.categories.end());
      col.min = 0.0;
      col.max = static_cast<double>(col.categories.size()) - 1.0;
    }
  }
  pre.fitted_ = true;
  return pre;
}

Dataset Preprocessor::apply(const Dataset& data) const {
  if (!fitted_) {
    throw std::invalid_argument("apply_preprocessor: preprocessor is not fitted");
  }
  if (columns_.size() != data.d()) {
    throw std::invalid_argument("apply_preprocessor: schema mismatch (expected " +
                                std::to_string(columns_.size()) + " columns, got " +
                                std::to_string(data.d()) + ")");
  }
  Matrix out(data.n(), data.d());
  std::vector<FeatureMeta> meta(data.d());
  for (std::size_t j = 0; j < data.d(); ++j) {
    const ColumnTransform& col = columns_[j];
    if (col.kind != data.feature(j).kind ||
        (!col.name.empty() && !data.feature(j).name.empty() &&
         col.name != data.feature(j).name)) {
      throw std::invalid_argument("apply_preprocessor: schema mismatch at column " +
                                  std::to_string(j));
    }
    meta[j].name = data.feature(j).name;
    meta[j].kind = col.kind;
    if (col.kind == FeatureKind::kNumeric) {
      const double range = col.max - col.min;
      for (std::size_t i = 0; i < data.n(); ++i) {
        double v = range == 0.0 ? 0.0 : (data.cell(i, j) - col.min) / range;
        out(i, j) = std::clamp(v, 0.0, 1.0);
      }
    } else {
      meta[j].categories = col.categories;
      const auto& pool = data.feature(j).categories;
      const double denom = col.max > 0.0 ? col.max : 1.0;
      for (std::size_t i = 0; i < data.n(); ++i) {
        const auto idx = static_cast<std::size_t>(data.cell(i, j));
        if (idx >= pool.size()) {
          throw std::invalid_argument("apply_preprocessor: bad category index in column " +
                                      std::to_string(j));
        }
        const std::string& label = pool[idx];
        const auto it =
            std::lower_bound(col.categories.begin(), col.categories.end(), label);
        if (it == col.categories.end() || *it != label) {
          throw std::invalid_argument("apply_preprocessor: unseen category '" + label +
                                      "' in column '" + meta[j].name + "'");
        }
        const double code =
            static_cast<double>(std::distance(col.categories.begin(), it));
        out(i, j) = col.max == 0.0 ? 0.0 : code / denom;
      }
    }
  }
  return Dataset(std::move(out), std::move(meta), data.target_index(),
                 /*normalized=*/true);
}

Dataset Preprocessor::invert(const Dataset& data) const {
  if (!fitted_) {
    throw std::invalid_argument("Preprocessor::invert: preprocessor is not fitted");
  }
  if (columns_.size() != data.d()) {
    throw std::invalid_argument("Preprocessor::invert: schema mismatch");
  }
  Matrix out(data.n(), data.d());
  std::vector<FeatureMeta> meta(data.d());
  for (std::size_t j = 0; j < data.d(); ++j) {
    const ColumnTransform& col = columns_[j];
    meta[j].name = col.name.empty() ? data.feature(j).name : col.name;
    meta[j].kind = col.kind;
    if (col.kind == FeatureKind::kNumeric) {
      for (std::size_t i = 0; i < data.n(); ++i) {
        out(i, j) = col.min + data.cell(i, j) * (col.max - col.min);
      }
    } else {
      meta[j].categories = col.categories;
      for (std::size_t i = 0; i < data.n(); ++i) {
        const double code = std::round(data.cell(i, j) * col.max);
        const auto idx = static_cast<std::size_t>(code);
        if (idx >= col.categories.size()) {
          throw std::invalid_argument("Preprocessor::invert: bad code in column " +
                                      std::to_string(j));
        }
        out(i, j) = static_cast<double>(idx);
      }
    }
  }
  // Inverted target cells may leave {0,1} only for numeric targets whose
  // original units were not binary; re-validation happens on construction.
  std::optional<std::size_t> target = data.target_index();
  if (target) {
    const ColumnTransform& col = columns_[*target];
    if (col.kind == FeatureKind::kNumeric && (col.min != 0.0 || col.max > 1.0)) {
      target = std::nullopt;
    }
  }
  return Dataset(std::move(out), std::move(meta), target, /*normalized=*/false);
}

Preprocessor fit_preprocessor(const Dataset& data) { return Preprocessor::fit(data); }

Dataset apply_preprocessor(const Preprocessor& pre, const Dataset& data) {
  return pre.apply(data);
}

std::pair<Dataset, Dataset> split_real(const Dataset& data, double train_fraction,
                                       std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_real: fraction must lie in (0, 1)");
  }
  if (data.n() < 2) {
    throw std::invalid_argument("split_real: need at least two rows");
  }
  std::vector<std::size_t> idx(data.n());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(data.n())));
  auto take = [&](std::size_t begin, std::size_t end) {
    Matrix m(end - begin, data.d());
    for (std::size_t i = begin; i < end; ++i) {
      const auto src = data.row(idx[i]);
      std::copy(src.begin(), src.end(), m.row(i - begin).begin());
    }
    return Dataset(std::move(m), data.meta(), data.target_index(), data.normalized());
  };
  return {take(0, n_train), take(n_train, data.n())};
}

SupportDistribution support(const Dataset& data) {
  if (data.n() == 0) {
    throw std::invalid_argument("support: empty dataset");
  }
  const std::size_t n = data.n();
  SupportDistribution out;
  out.record_to_support.resize(n);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> first_row;  // support index -> first record index
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = data.row(i);
    const std::uint64_t h = hash_row(row);
    auto& bucket = buckets[h];
    bool found = false;
    for (std::size_t s : bucket) {
      if (rows_equal(data.row(first_row[s]), row)) {
        out.multiplicity[s] += 1;
        out.record_to_support[i] = s;
        found = true;
        break;
      }
    }
    if (!found) {
      const std::size_t s = first_row.size();
      first_row.push_back(i);
      out.multiplicity.push_back(1);
      bucket.push_back(s);
      out.record_to_support[i] = s;
    }
  }
  const std::size_t S = first_row.size();
  out.support = Matrix(S, data.d());
  out.probs.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    const auto src = data.row(first_row[s]);
    std::copy(src.begin(), src.end(), out.support.row(s).begin());
    out.probs[s] = static_cast<double>(out.multiplicity[s]) / static_cast<double>(n);
  }
  return out;
}

void write_csv(const Dataset& data, const std::filesystem::path& path,
               const Preprocessor* invert_with) {
  const Dataset* src = &data;
  Dataset inverted;
  if (invert_with != nullptr) {
    inverted = invert_with->invert(data);
    src = &inverted;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_csv: cannot open file for writing: " + path.string());
  }
  std::string buf;
  for (std::size_t j = 0; j < src->d(); ++j) {
    if (j > 0) buf.push_back(',');
    buf += src->feature(j).name;
  }
  buf.push_back('\n');
  for (std::size_t i = 0; i < src->n(); ++i) {
    for (std::size_t j = 0; j < src->d(); ++j) {
      if (j > 0) buf.push_back(',');
      const FeatureMeta& fm = src->feature(j);
      if (fm.kind == FeatureKind::kCategorical) {
        const auto idx = static_cast<std::size_t>(src->cell(i, j));
        const std::string& label = fm.categories.at(idx);
        if (needs_quoting(label)) {
          buf.push_back('"');
          for (char c : label) {
            if (c == '"') buf.push_back('"');
            buf.push_back(c);
          }
          buf.push_back('"');
        } else {
          buf += label;
        }
      } else {
        format_double(buf, src->cell(i, j));
      }
    }
    buf.push_back('\n');
    if (buf.size() > (1u << 20)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace synpost
