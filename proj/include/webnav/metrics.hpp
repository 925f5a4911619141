#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace webnav {

// Ten bins per decade.
inline constexpr double kDefaultBinRatio = 1.2589254117941673;  // 10^0.1

struct HistogramBin {
  double lo;
  double hi;
  std::uint64_t count;
  double density;  // count / (width * total)
};

struct Histogram {
  std::vector<HistogramBin> bins;
  std::uint64_t total = 0;
};

/// Geometric bins [r^k, r^(k+1)) starting at 1, covering the first through
/// the last non-empty bin. Samples must be >= 1. Throws DataError on empty
/// input and ConfigError for ratio <= 1.
Histogram log_histogram(std::span<const std::uint64_t> samples, double ratio = kDefaultBinRatio);

// Equal-width bins [lo + k*w, lo + (k+1)*w) from floor(min/w)*w upward.
Histogram linear_histogram(std::span<const double> samples, double width);

struct PowerLawFit {
  double alpha;
  std::uint64_t xmin;
  std::size_t n_tail;
  double std_error;  // (alpha - 1) / sqrt(n_tail)
};

inline constexpr std::size_t kMinTailSamples = 10;

/// Discrete power-law exponent by the approximate maximum-likelihood rule
///   alpha = 1 + n / sum ln(x_i / (xmin - 1/2)),  over x_i >= xmin.
/// Throws StatisticsError with fewer than 10 tail samples or when every tail
/// sample has the same value.
PowerLawFit fit_power_law(std::span<const std::uint64_t> samples, std::uint64_t xmin);

struct CcdfPoint {
  double value;
  double probability;  // P(X >= value)
};

// One point per distinct value, ascending; the first probability is 1.
std::vector<CcdfPoint> ccdf(std::span<const double> samples);
std::vector<CcdfPoint> ccdf(std::span<const std::uint64_t> samples);

// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> samples);

}  // namespace webnav
