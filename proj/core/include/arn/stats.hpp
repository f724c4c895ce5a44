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

#ifndef ARN_STATS_HPP_
#define ARN_STATS_HPP_

#include <cstddef>
#include <vector>

namespace arn {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator; 0 when n < 2
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(const std::vector<double>& xs);

struct Comparison {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double u_statistic = 0.0;  // U of sample a
  double z = 0.0;
  double p_value = 1.0;      // two-sided Mann-Whitney, normal approximation
  double mean_diff = 0.0;    // mean(a) - mean(b)
  double welch_t = 0.0;
  double welch_df = 0.0;
  double welch_p = 1.0;
};

// Two-sided Mann-Whitney U test with midranks, tie-corrected variance and a
// continuity correction; Welch's t as a secondary figure. Throws
// InsufficientSamples when either sample has fewer than 2 values.
Comparison compare(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace arn

#endif  // ARN_STATS_HPP_
