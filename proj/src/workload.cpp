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

#include "synpost/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synpost {

std::size_t QueryWorkload::max_feature_index() const {
  std::size_t m = 0;
  for (const auto& q : queries) {
    m = std::max({m, q.i, q.j});
  }
  return m;
}

std::vector<std::size_t> select_features(const Dataset& syn, std::size_t target,
                                         std::size_t m) {
  if (target >= syn.d()) {
    throw std::invalid_argument("select_features: target feature index out of range");
  }
  if (m == 0) {
    throw std::invalid_argument("select_features: m must be positive");
  }
  m = std::min(m, syn.d());

  const std::size_t n = syn.n();
  std::vector<double> mean(syn.d(), 0.0), var(syn.d(), 0.0);
  for (std::size_t j = 0; j < syn.d(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += syn.cell(i, j);
    mean[j] = s / static_cast<double>(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dlt = syn.cell(i, j) - mean[j];
      v += dlt * dlt;
    }
    var[j] = v / static_cast<double>(n);
  }

  std::vector<std::pair<double, std::size_t>> scored;  // (|corr|, index)
  for (std::size_t j = 0; j < syn.d(); ++j) {
    if (j == target) continue;
    double corr = 0.0;
    if (var[j] > 0.0 && var[target] > 0.0) {
      double cov = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cov += (syn.cell(i, j) - mean[j]) * (syn.cell(i, target) - mean[target]);
      }
      cov /= static_cast<double>(n);
      corr = cov / (std::sqrt(var[j]) * std::sqrt(var[target]));
    }
    scored.emplace_back(std::fabs(corr), j);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<std::size_t> selected{target};
  for (std::size_t k = 0; k + 1 < m && k < scored.size(); ++k) {
    selected.push_back(scored[k].second);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

QueryWorkload build_moment_workload(const std::vector<std::size_t>& features) {
  if (features.empty()) {
    throw std::invalid_argument("build_moment_workload: empty feature set");
  }
  std::vector<std::size_t> f = features;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());

  QueryWorkload w;
  w.feature_subset = f;
  for (std::size_t i : f) {
    w.queries.push_back({QueryKind::kFirstMoment, i, 0});
  }
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a; b < f.size(); ++b) {
      w.queries.push_back({QueryKind::kSecondMoment, f[a], f[b]});
    }
  }
  return w;
}

AnswerVector evaluate_queries(const QueryWorkload& w, const Dataset& data) {
  if (data.n() == 0) {
    throw std::invalid_argument("evaluate_queries: empty dataset");
  }
  if (w.max_feature_index() >= data.d()) {
    throw std::invalid_argument("evaluate_queries: workload features exceed dataset width");
  }
  AnswerVector out;
  out.tag = AnswerTag::kExact;
  out.values.resize(w.size(), 0.0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto row = data.row(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      out.values[k] += w.queries[k].eval(row);
    }
  }
  for (double& v : out.values) v /= static_cast<double>(data.n());
  return out;
}

AnswerVector evaluate_queries(const QueryWorkload& w, const SupportDistribution& supp) {
  if (supp.size() == 0) {
    throw std::invalid_argument("evaluate_queries: empty support");
  }
  if (w.max_feature_index() >= supp.support.cols()) {
    throw std::invalid_argument("evaluate_queries: workload features exceed support width");
  }
  AnswerVector out;
  out.tag = AnswerTag::kExact;
  out.values.resize(w.size(), 0.0);
  for (std::size_t s = 0; s < supp.size(); ++s) {
    const auto row = supp.support.row(s);
    for (std::size_t k = 0; k < w.size(); ++k) {
      out.values[k] += supp.probs[s] * w.queries[k].eval(row);
    }
  }
  return out;
}

QueryMatrix query_matrix(const QueryWorkload& w, const SupportDistribution& supp) {
  if (w.max_feature_index() >= supp.support.cols()) {
    throw std::invalid_argument("query_matrix: workload features exceed support width");
  }
  QueryMatrix qm;
  qm.values = Matrix(w.size(), supp.size());
  for (std::size_t s = 0; s < supp.size(); ++s) {
    const auto row = supp.support.row(s);
    for (std::size_t k = 0; k < w.size(); ++k) {
      qm.values(k, s) = w.queries[k].eval(row);
    }
  }
  return qm;
}

double sensitivity(const QueryWorkload& w, std::size_t n, int p) {
  if (n == 0) {
    throw std::invalid_argument("sensitivity: n must be positive");
  }
  if (p != 1 && p != 2) {
    throw std::invalid_argument("sensitivity: p must be 1 or 2");
  }
  double acc = 0.0;
  for (const auto& q : w.queries) {
    const double width = q.range_width();
    acc += p == 1 ? width : width * width;
  }
  const double norm = p == 1 ? acc : std::sqrt(acc);
  return norm / static_cast<double>(n);
}

}  // namespace synpost
