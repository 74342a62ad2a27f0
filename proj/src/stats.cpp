#include "qrand/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrand {

double median(std::span<const double> values)
{
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

Summary summarize(std::span<const double> values)
{
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  s.median = median(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double variance = ss / static_cast<double>(s.count - 1);
    s.std_error = std::sqrt(variance / static_cast<double>(s.count));
  }
  return s;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf)
{
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_critical_1pct(std::size_t n)
{
  return 1.6276 / std::sqrt(static_cast<double>(n));
}

double ks_two_sample(std::span<const double> a, std::span<const double> b)
{
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    const double fx = static_cast<double>(i) / static_cast<double>(x.size());
    const double fy = static_cast<double>(j) / static_cast<double>(y.size());
    d = std::max(d, std::abs(fx - fy));
  }
  return d;
}

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m)
{
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.6276 * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace qrand
