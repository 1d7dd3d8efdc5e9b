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

#ifndef SYNPOST_WORKLOAD_HPP_
#define SYNPOST_WORKLOAD_HPP_

#include <cstddef>
#include <vector>

#include "synpost/matrix.hpp"
#include "synpost/tabular.hpp"

namespace synpost {

enum class QueryKind { kFirstMoment, kSecondMoment };

// A scalar query over one record: x_i, or x_i * x_j with i <= j. On
// [0,1]-normalized data every query value lies in [0,1] and the range width
// is at most 1.
struct QueryDescriptor {
  QueryKind kind = QueryKind::kFirstMoment;
  std::size_t i = 0;
  std::size_t j = 0;  // second moments only

  double eval(std::span<const double> row) const {
    return kind == QueryKind::kFirstMoment ? row[i] : row[i] * row[j];
  }
  double range_width() const { return 1.0; }

  friend bool operator==(const QueryDescriptor&, const QueryDescriptor&) = default;
};

struct QueryWorkload {
  std::vector<QueryDescriptor> queries;
  std::vector<std::size_t> feature_subset;  // ascending feature indices

  std::size_t size() const { return queries.size(); }
  std::size_t max_feature_index() const;
};

enum class AnswerTag { kExact, kNoisy, kDenoised };

struct AnswerVector {
  std::vector<double> values;
  AnswerTag tag = AnswerTag::kExact;

  std::size_t size() const { return values.size(); }
};

// The target feature plus the m-1 features with the largest absolute
// correlation with it, computed on the (synthetic) dataset. Ties break by
// ascending feature index; m is clamped to d. Returned indices are ascending.
std::vector<std::size_t> select_features(const Dataset& syn, std::size_t target,
                                         std::size_t m);

// One first-moment query per feature, then one second-moment query per
// unordered pair (i <= j), lexicographic. K = (m+3)m/2.
QueryWorkload build_moment_workload(const std::vector<std::size_t>& features);

// Exact empirical means over records.
AnswerVector evaluate_queries(const QueryWorkload& w, const Dataset& data);
// Weighted means over a support distribution: q(P) = E_{X~P}[q(X)].
AnswerVector evaluate_queries(const QueryWorkload& w, const SupportDistribution& supp);

struct QueryMatrix {
  Matrix values;  // K x S, entry (k, s) = q_k(x_s)

  std::size_t num_queries() const { return values.rows(); }
  std::size_t support_size() const { return values.cols(); }
};

QueryMatrix query_matrix(const QueryWorkload& w, const SupportDistribution& supp);

// (1/n) (sum_k range(q_k)^p)^(1/p) for p in {1, 2}.
double sensitivity(const QueryWorkload& w, std::size_t n, int p);

}  // namespace synpost

#endif  // SYNPOST_WORKLOAD_HPP_
