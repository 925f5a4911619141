#include "webnav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "webnav/errors.hpp"

namespace webnav {

namespace {

// Index k with ratio^k <= x < ratio^(k+1).
long bin_index(double x, double ratio) {
  long k = static_cast<long>(std::floor(std::log(x) / std::log(ratio)));
  while (std::pow(ratio, k) > x) --k;
  while (std::pow(ratio, k + 1) <= x) ++k;
  return k;
}

void fill_densities(Histogram& h) {
  for (auto& bin : h.bins)
    bin.density = static_cast<double>(bin.count) / ((bin.hi - bin.lo) * static_cast<double>(h.total));
}

}  // namespace

Histogram log_histogram(std::span<const std::uint64_t> samples, double ratio) {
  if (samples.empty()) throw DataError("histogram of an empty sample");
  if (!(ratio > 1.0)) throw ConfigError("bin ratio must exceed 1");
  std::map<long, std::uint64_t> counts;
  for (auto x : samples) {
    if (x < 1) throw DataError("log-binned samples must be positive");
    ++counts[bin_index(static_cast<double>(x), ratio)];
  }
  Histogram h;
  h.total = samples.size();
  const long first = counts.begin()->first;
  const long last = counts.rbegin()->first;
  for (long k = first; k <= last; ++k) {
    auto it = counts.find(k);
    h.bins.push_back({std::pow(ratio, k), std::pow(ratio, k + 1), it == counts.end() ? 0 : it->second, 0.0});
  }
  fill_densities(h);
  return h;
}

Histogram linear_histogram(std::span<const double> samples, double width) {
  if (samples.empty()) throw DataError("histogram of an empty sample");
  if (!(width > 0.0)) throw ConfigError("bin width must be positive");
  std::map<long, std::uint64_t> counts;
  for (double x : samples) ++counts[static_cast<long>(std::floor(x / width))];
  Histogram h;
  h.total = samples.size();
  for (long k = counts.begin()->first; k <= counts.rbegin()->first; ++k) {
    auto it = counts.find(k);
    h.bins.push_back({k * width, (k + 1) * width, it == counts.end() ? 0 : it->second, 0.0});
  }
  fill_densities(h);
  return h;
}

PowerLawFit fit_power_law(std::span<const std::uint64_t> samples, std::uint64_t xmin) {
  if (xmin < 1) throw ConfigError("xmin must be at least 1");
  const double shift = static_cast<double>(xmin) - 0.5;
  std::size_t n = 0;
  double log_sum = 0.0;
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (auto x : samples) {
    if (x < xmin) continue;
    ++n;
    log_sum += std::log(static_cast<double>(x) / shift);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (n < kMinTailSamples)
    throw StatisticsError("power-law fit needs at least 10 samples >= xmin, got " + std::to_string(n));
  if (lo == hi) throw StatisticsError("power-law fit on a degenerate tail (all samples equal)");
  const double alpha = 1.0 + static_cast<double>(n) / log_sum;
  return {alpha, xmin, n, (alpha - 1.0) / std::sqrt(static_cast<double>(n))};
}

std::vector<CcdfPoint> ccdf(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CcdfPoint> out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    out.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
  }
  return out;
}

std::vector<CcdfPoint> ccdf(std::span<const std::uint64_t> samples) {
  std::vector<double> values(samples.begin(), samples.end());
  return ccdf(values);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DataError("KS statistic of an empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double mean(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

}  // namespace webnav
