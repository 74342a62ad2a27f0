#pragma once

// Large-deviation bound evaluators and the trace-norm randomization
// experiments for ensembles that only randomize on average.
//
// Tail bounds are reported in two bases. The "base2" form reads exp as 2^x,
// the convention under which the bounds were stated; the "natural" form is the
// textbook e^x statement. For Cramer bounds the 1/ln 2 in the exponent makes
// the two coincide numerically.

#include <functional>
#include <vector>

#include "qrand/matcore.hpp"
#include "qrand/sampler.hpp"
#include "qrand/stats.hpp"

namespace qrand {

/// Rate function of a unit-mean exponential variable (|g|^2 for complex
/// standard normal g): x - 1 - ln x, in nats.
double rate_function_exp(double x);

enum class ExpBase { two, natural };

struct TailTerm {
  ExpBase base = ExpBase::natural;
  double exponent = 0.0;  ///< bound = base^(-exponent)
  double value = 1.0;
};

struct TailBound {
  TailTerm base2;
  TailTerm natural;
  double infimum = 0.0;  ///< inf of the rate function over the tail region (nats)
};

/// Pr((1/n) sum X >= a) <= 2^(-n inf_{x>=a} rate(x) / ln 2). The infimum is
/// found by golden-section search on [a, search_limit]; convexity is checked
/// on a sample grid first and a ContractError is thrown if it fails.
TailBound cramer_upper_tail(long n, double a, const std::function<double(double)>& rate,
                            double search_limit);

/// Lower-tail twin: infimum over [search_limit, a].
TailBound cramer_lower_tail(long n, double a, const std::function<double(double)>& rate,
                            double search_limit);

/// alpha log(alpha/mu) + (1-alpha) log((1-alpha)/(1-mu)) in bits; +inf where
/// the supports disagree.
double binary_divergence(double alpha, double mu);

/// Azuma tail Pr(S_n/n >= t) for martingale increments bounded by
/// `increment_cap`: natural form e^(-n t^2 / (2 c^2)); base2 form 2^(-n t^2/(2 c^2)).
TailBound azuma_tail(long n, double t, double increment_cap = 1.0);

/// Exponent eps d C''/(2 (log d)^2) - 1 of the Chernoff step for measurement
/// entropies. Formula only; the constants are not tight.
double entropy_chernoff_exponent(Index d, double epsilon, double reduced_levy_constant);

struct PauliTraceNormReport {
  std::vector<double> draw_means;  ///< mean deviation per ensemble draw
  double grand_mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  ///< sqrt(d/n)
  bool within_bound = false;  ///< grand_mean <= bound + 3 s.e.
};

/// For each draw: n uniform Pauli words; for each state slot a fresh Haar
/// state; records ||(1/n) sum U phi U^dagger - I/d||_1.
PauliTraceNormReport pauli_trace_norm_experiment(Index d, Index n, std::size_t draws,
                                                 std::size_t states_per_draw,
                                                 const SeededStream& stream);

struct TraceNormCheck {
  double epsilon_theory = 0.0;  ///< sqrt(d log d / n)
  std::vector<double> deviations;
  Summary summary;
};

/// One Pauli ensemble of size n, `states` Haar states; trace-norm deviations.
TraceNormCheck trace_norm_randomizing_check(Index d, Index n, std::size_t states,
                                            const SeededStream& stream);

}  // namespace qrand
