#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qrand {

/// Summary statistics of a Monte Carlo sample. `std_error` is the sample
/// standard deviation over sqrt(count); zero for count < 2.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> values);

double median(std::span<const double> values);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)|.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic KS critical value for sample size n at significance 0.01.
double ks_critical_1pct(std::size_t n);

/// Two-sample KS statistic.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample critical value at significance 0.01.
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

}  // namespace qrand
