// Copyright 2026 The ARN Simulator Authors
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

#include "arn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "arn/errors.hpp"

namespace arn {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.n = xs.size();
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

Comparison compare(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw InsufficientSamples("compare needs at least 2 samples per group, got " +
                              std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  Comparison c;
  c.n_a = a.size();
  c.n_b = b.size();
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(a.size() + b.size());
  for (double x : a) pooled.push_back({x, 0});
  for (double x : b) pooled.push_back({x, 1});
  std::sort(pooled.begin(), pooled.end());

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second == 0) rank_sum_a += midrank;
    }
    tie_term += t * t * t - t;
    i = j;
  }
  c.u_statistic = rank_sum_a - na * (na + 1.0) / 2.0;
  const double mu = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var > 0.0) {
    const double dev = std::max(0.0, std::abs(c.u_statistic - mu) - 0.5);
    c.z = dev / std::sqrt(var);
    c.p_value = std::min(1.0, std::erfc(c.z / std::sqrt(2.0)));
  }

  const Summary sa = summarize(a);
  const Summary sb = summarize(b);
  c.mean_diff = sa.mean - sb.mean;
  const double va = sa.sd * sa.sd / na;
  const double vb = sb.sd * sb.sd / nb;
  if (va + vb > 0.0) {
    c.welch_t = c.mean_diff / std::sqrt(va + vb);
    c.welch_df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    boost::math::students_t dist(c.welch_df);
    c.welch_p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(c.welch_t)));
  } else {
    c.welch_p = c.mean_diff == 0.0 ? 1.0 : 0.0;
  }
  return c;
}

}  // namespace arn
