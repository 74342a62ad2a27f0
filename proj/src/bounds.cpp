#include "qrand/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qrand/parallel.hpp"
#include "qrand/randomizer.hpp"

namespace qrand {

namespace {

void check_convex(const std::function<double(double)>& f, double lo, double hi)
{
  constexpr int kGrid = 64;
  const double h = (hi - lo) / kGrid;
  for (int k = 1; k < kGrid; ++k) {
    const double x = lo + k * h;
    const double mid = f(x);
    const double chord = 0.5 * (f(x - h) + f(x + h));
    if (mid > chord + 1e-12 * std::max(1.0, std::abs(chord))) {
      throw ContractError("cramer bound: rate function is not convex on the search interval");
    }
  }
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({f(lo), f(hi), f(0.5 * (a + b))});
}

TailBound cramer_tail(long n, double lo, double hi, const std::function<double(double)>& rate)
{
  if (n < 1) throw DomainError("cramer bound: requires n >= 1");
  if (!(hi >= lo)) throw DomainError("cramer bound: empty search interval");
  TailBound bound;
  if (hi > lo) check_convex(rate, lo, hi);
  bound.infimum = std::max(0.0, hi > lo ? golden_section_min(rate, lo, hi) : rate(lo));
  const double nats = static_cast<double>(n) * bound.infimum;
  bound.natural = TailTerm{ExpBase::natural, nats, std::exp(-nats)};
  const double bits = nats / std::numbers::ln2;
  bound.base2 = TailTerm{ExpBase::two, bits, std::exp2(-bits)};
  return bound;
}

}  // namespace

double rate_function_exp(double x)
{
  if (!(x > 0.0)) throw DomainError("rate_function_exp: requires x > 0");
  return x - 1.0 - std::log(x);
}

TailBound cramer_upper_tail(long n, double a, const std::function<double(double)>& rate,
                            double search_limit)
{
  return cramer_tail(n, a, search_limit, rate);
}

TailBound cramer_lower_tail(long n, double a, const std::function<double(double)>& rate,
                            double search_limit)
{
  return cramer_tail(n, search_limit, a, rate);
}

double binary_divergence(double alpha, double mu)
{
  if (!(alpha >= 0.0 && alpha <= 1.0 && mu >= 0.0 && mu <= 1.0)) {
    throw DomainError("binary_divergence: requires alpha, mu in [0,1]");
  }
  auto term = [](double x, double y) {
    if (x == 0.0) return 0.0;
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    return x * std::log2(x / y);
  };
  return term(alpha, mu) + term(1.0 - alpha, 1.0 - mu);
}

TailBound azuma_tail(long n, double t, double increment_cap)
{
  if (n < 1 || !(t >= 0.0) || !(increment_cap > 0.0)) {
    throw DomainError("azuma_tail: requires n >= 1, t >= 0, cap > 0");
  }
  const double exponent = static_cast<double>(n) * t * t / (2.0 * increment_cap * increment_cap);
  TailBound bound;
  bound.infimum = exponent / static_cast<double>(n);
  bound.natural = TailTerm{ExpBase::natural, exponent, std::exp(-exponent)};
  bound.base2 = TailTerm{ExpBase::two, exponent, std::exp2(-exponent)};
  return bound;
}

double entropy_chernoff_exponent(Index d, double epsilon, double reduced_levy_constant)
{
  if (d < 2) throw DomainError("entropy_chernoff_exponent: requires d >= 2");
  const double log_d = std::log2(static_cast<double>(d));
  return epsilon * static_cast<double>(d) * reduced_levy_constant / (2.0 * log_d * log_d) - 1.0;
}

namespace {

double trace_deviation(const RandomizingMap& map, const PureState& phi)
{
  ComplexMatrix delta = map.apply_pure(phi.amplitudes());
  delta.diagonal().array() -= 1.0 / static_cast<double>(map.dim());
  return trace_norm(hermitian_part(delta));
}

}  // namespace

PauliTraceNormReport pauli_trace_norm_experiment(Index d, Index n, std::size_t draws,
                                                 std::size_t states_per_draw,
                                                 const SeededStream& stream)
{
  if (n < 1 || draws < 1 || states_per_draw < 1) {
    throw DomainError("pauli_trace_norm_experiment: n, draws and states must be positive");
  }
  PauliTraceNormReport report;
  report.draw_means.resize(draws);
  std::vector<std::vector<double>> per_draw(draws);
  parallel_for(draws, [&](std::size_t k) {
    const SeededStream draw = stream.derive(k);
    const RandomizingMap map(build_ensemble(d, n, EnsembleKind::pauli, draw.derive(0)));
    per_draw[k].resize(states_per_draw);
    for (std::size_t s = 0; s < states_per_draw; ++s) {
      SeededStream state_stream = draw.derive(1).derive(s);
      per_draw[k][s] = trace_deviation(map, haar_pure_state(d, state_stream));
    }
  });
  std::vector<double> all;
  all.reserve(draws * states_per_draw);
  for (std::size_t k = 0; k < draws; ++k) {
    report.draw_means[k] = summarize(per_draw[k]).mean;
    all.insert(all.end(), per_draw[k].begin(), per_draw[k].end());
  }
  // Draws are the independent unit; states within one draw share an ensemble.
  report.grand_mean = summarize(all).mean;
  report.std_error = summarize(report.draw_means).std_error;
  report.bound = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
  report.within_bound = report.grand_mean <= report.bound + 3.0 * report.std_error;
  return report;
}

TraceNormCheck trace_norm_randomizing_check(Index d, Index n, std::size_t states,
                                            const SeededStream& stream)
{
  if (n < 1 || states < 1) throw DomainError("trace_norm_randomizing_check: n and states must be positive");
  TraceNormCheck check;
  const double dd = static_cast<double>(d);
  check.epsilon_theory = std::sqrt(dd * std::log2(dd) / static_cast<double>(n));
  const RandomizingMap map(build_ensemble(d, n, EnsembleKind::pauli, stream.derive(0)));
  check.deviations.resize(states);
  parallel_for(states, [&](std::size_t s) {
    SeededStream state_stream = stream.derive(1).derive(s);
    check.deviations[s] = trace_deviation(map, haar_pure_state(d, state_stream));
  });
  check.summary = summarize(check.deviations);
  return check;
}

}  // namespace qrand
