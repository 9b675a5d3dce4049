// Copyright 2026 The cfgperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfgperf/statistics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "cfgperf/error.h"

namespace cfgperf {

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

WilcoxonResult WilcoxonOneSided(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "paired samples must have equal length");
  }
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
  }
  WilcoxonResult r;
  r.n = d.size();
  if (d.empty()) {
    r.warning = "all differences are zero";
    return r;
  }
  if (r.n < 3) r.warning = "fewer than 3 non-zero differences";

  // Average ranks of |d|, kept doubled so they stay integral.
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::fabs(d[x]) < std::fabs(d[y]);
  });
  std::vector<long> rank2(d.size());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]])) ++j;
    const long doubled = static_cast<long>(i + 1 + j + 1);  // 2 * average rank
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = doubled;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  long w2 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) w2 += rank2[i];
  }
  r.w_plus = static_cast<double>(w2) / 2.0;

  const double n = static_cast<double>(r.n);
  if (r.n <= kWilcoxonExactLimit) {
    // counts[s] = number of sign vectors with doubled W+ equal to s.
    long total = 0;
    for (long x : rank2) total += x;
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    long reach = 0;
    for (long x : rank2) {
      for (long s = reach; s >= 0; --s) {
        counts[static_cast<std::size_t>(s + x)] += counts[static_cast<std::size_t>(s)];
      }
      reach += x;
    }
    double below = 0.0;
    for (long s = 0; s <= w2; ++s) below += counts[static_cast<std::size_t>(s)];
    r.p_value = below / std::ldexp(1.0, static_cast<int>(r.n));
    r.exact = true;
  } else {
    const double mean = n * (n + 1) / 4.0;
    const double var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0;
    r.p_value = var > 0 ? NormalCdf((r.w_plus - mean + 0.5) / std::sqrt(var)) : 1.0;
    r.exact = false;
  }
  r.p_value = std::min(1.0, r.p_value);
  return r;
}

std::string MagnitudeName(EffectMagnitude m) {
  switch (m) {
    case EffectMagnitude::kNegligible: return "negligible";
    case EffectMagnitude::kSmall: return "small";
    case EffectMagnitude::kMedium: return "medium";
    case EffectMagnitude::kLarge: return "large";
  }
  return "";
}

EffectMagnitude ClassifyDelta(double delta) {
  const double m = std::fabs(delta);
  if (m < 0.147) return EffectMagnitude::kNegligible;
  if (m < 0.33) return EffectMagnitude::kSmall;
  if (m < 0.474) return EffectMagnitude::kMedium;
  return EffectMagnitude::kLarge;
}

CliffsDelta ComputeCliffsDelta(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "Cliff's delta needs non-empty samples");
  }
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sb.begin(), sb.end());
  long long more = 0, less = 0;
  for (double x : a) {
    more += std::lower_bound(sb.begin(), sb.end(), x) - sb.begin();
    less += sb.end() - std::upper_bound(sb.begin(), sb.end(), x);
  }
  CliffsDelta c;
  c.delta = static_cast<double>(more - less) /
            (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  c.magnitude = ClassifyDelta(c.delta);
  return c;
}

std::vector<ParetoPoint> ParetoFront(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& x, const ParetoPoint& y) {
    return std::tie(x.relative_size, x.mean_error, x.id) <
           std::tie(y.relative_size, y.mean_error, y.id);
  });
  std::vector<ParetoPoint> front;
  double best = INFINITY;  // lowest error among strictly smaller sizes
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].relative_size == sorted[i].relative_size) ++j;
    const double group_min = sorted[i].mean_error;
    if (group_min < best) {
      for (std::size_t k = i; k < j && sorted[k].mean_error == group_min; ++k) {
        front.push_back(sorted[k]);
      }
      best = group_min;
    }
    i = j;
  }
  std::sort(front.begin(), front.end(), [](const ParetoPoint& x, const ParetoPoint& y) {
    return std::tie(x.mean_error, x.relative_size, x.id) <
           std::tie(y.mean_error, y.relative_size, y.id);
  });
  return front;
}

StatsComparison CompareGroups(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& samples) {
  if (names.size() != samples.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one sample per group name is required");
  }
  StatsComparison c;
  c.names = names;
  const std::size_t k = names.size();
  c.p_value.assign(k, std::vector<double>(k, 1.0));
  c.delta.assign(k, std::vector<CliffsDelta>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      c.p_value[i][j] = WilcoxonOneSided(samples[i], samples[j]).p_value;
      // No paired observations: leave p = 1 and report an undefined delta.
      c.delta[i][j] = samples[i].empty() ? CliffsDelta{NAN, EffectMagnitude::kNegligible}
                                         : ComputeCliffsDelta(samples[i], samples[j]);
    }
  }
  return c;
}

}  // namespace cfgperf
