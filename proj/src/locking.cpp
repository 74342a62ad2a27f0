#include "qrand/locking.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qrand/parallel.hpp"

namespace qrand {

namespace {

constexpr Index kBasisCandidateLimit = 65536;

RealVector probabilities_of(const ComplexVector& w)
{
  RealVector p = w.cwiseAbs2();
  return p / p.sum();
}

// Entropy and gradient with respect to conj(phi).
struct Evaluation {
  double value = 0.0;
  ComplexVector gradient;
};

double entropy_of(const BasisEnsembleState& state, const ComplexVector& phi)
{
  double total = 0.0;
  for (Index j = 0; j < state.bases(); ++j) {
    total += shannon_entropy(probabilities_of(state.ensemble().apply_adjoint(j, phi)));
  }
  return total / static_cast<double>(state.bases());
}

Evaluation evaluate(const BasisEnsembleState& state, const ComplexVector& phi)
{
  const Index d = state.dim();
  Evaluation e;
  e.gradient = ComplexVector::Zero(d);
  for (Index j = 0; j < state.bases(); ++j) {
    const ComplexVector w = state.ensemble().apply_adjoint(j, phi);
    const RealVector p = probabilities_of(w);
    e.value += shannon_entropy(p);
    ComplexVector weighted(d);
    for (Index i = 0; i < d; ++i) {
      const double q = std::max(p(i), kProbabilityFloor);
      weighted(i) = -(1.0 + std::log(q)) / std::numbers::ln2 * w(i);
    }
    e.gradient += state.ensemble().apply(j, weighted);
  }
  const double n = static_cast<double>(state.bases());
  e.value /= n;
  e.gradient /= n;
  return e;
}

struct Descent {
  ComplexVector state;
  double value = 0.0;
  std::size_t evaluations = 0;
};

Descent descend(const BasisEnsembleState& state, ComplexVector phi, const OptimizerConfig& config)
{
  phi.normalize();
  Evaluation current = evaluate(state, phi);
  Descent out{phi, current.value, 1};
  double step = config.initial_step;
  for (std::size_t it = 0; it < config.iterations && step > 1e-12; ++it) {
    const Complex radial = phi.dot(current.gradient);
    ComplexVector tangent = current.gradient - radial.real() * phi;
    const double norm = tangent.norm();
    if (!(norm > 1e-14)) break;
    ComplexVector trial = phi - (step / norm) * tangent;
    trial.normalize();
    const double value = entropy_of(state, trial);
    ++out.evaluations;
    if (value < current.value) {
      phi = trial;
      current = evaluate(state, phi);
      ++out.evaluations;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  out.state = phi;
  out.value = current.value;
  return out;
}

}  // namespace

PureState BasisEnsembleState::conditional_state(Index i, Index j) const
{
  if (i < 0 || i >= dim()) throw std::out_of_range("conditional_state: basis label out of range");
  ComplexVector e = ComplexVector::Zero(dim());
  e(i) = 1.0;
  return PureState::normalized(ensemble_.apply(j, e));
}

ComplexMatrix BasisEnsembleState::materialize() const
{
  const Index d = dim();
  const Index n = bases();
  const Index alice = d * n;
  if (alice * d > 4096) throw DomainError("BasisEnsembleState::materialize: dn*d exceeds 4096");
  ComplexMatrix rho = ComplexMatrix::Zero(alice * d, alice * d);
  const double weight = 1.0 / static_cast<double>(alice);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index label = i * n + j;
      const ComplexVector b = conditional_state(i, j).amplitudes();
      rho.block(label * d, label * d, d, d) = weight * b * b.adjoint();
    }
  }
  return rho;
}

BasisEnsembleState fourier_pair_state(Index d)
{
  return BasisEnsembleState(
      UnitaryEnsemble::from_members({ComplexMatrix::Identity(d, d), fourier_matrix(d)}));
}

MeasurementDistribution measurement_distribution(const BasisEnsembleState& state, const PureState& phi)
{
  if (phi.dim() != state.dim()) throw DimensionError("measurement_distribution: dimension mismatch");
  MeasurementDistribution m;
  m.per_basis.reserve(static_cast<std::size_t>(state.bases()));
  for (Index j = 0; j < state.bases(); ++j) {
    m.per_basis.push_back(probabilities_of(state.ensemble().apply_adjoint(j, phi.amplitudes())));
  }
  return m;
}

double average_measurement_entropy(const BasisEnsembleState& state, const PureState& phi)
{
  if (phi.dim() != state.dim()) throw DimensionError("average_measurement_entropy: dimension mismatch");
  return entropy_of(state, phi.amplitudes());
}

LockingReport ic_upper_bound(const BasisEnsembleState& state, const OptimizerConfig& config,
                             const SeededStream& stream)
{
  if (config.restarts == 0 && !config.basis_candidates) {
    throw DomainError("ic_upper_bound: optimizer budget must be positive");
  }
  if (config.iterations == 0) throw DomainError("ic_upper_bound: optimizer budget must be positive");
  const Index d = state.dim();
  const Index n = state.bases();

  LockingReport report;
  report.best_average_entropy = std::numeric_limits<double>::infinity();
  auto consider = [&report](const ComplexVector& phi, double value) {
    if (value < report.best_average_entropy) {
      report.best_average_entropy = value;
      report.best_state = phi;
    }
  };

  if (config.basis_candidates && n * d <= kBasisCandidateLimit) {
    ComplexVector best_candidate;
    double best_value = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < d; ++i) {
        const ComplexVector phi = state.conditional_state(i, j).amplitudes();
        const double value = entropy_of(state, phi);
        ++report.evaluations;
        ++report.candidates;
        consider(phi, value);
        if (value < best_value) {
          best_value = value;
          best_candidate = phi;
        }
      }
    }
    const Descent polished = descend(state, best_candidate, config);
    report.evaluations += polished.evaluations;
    consider(polished.state, polished.value);
  }

  std::vector<Descent> runs(config.restarts);
  parallel_for(config.restarts, [&](std::size_t r) {
    SeededStream child = stream.derive(r);
    runs[r] = descend(state, haar_pure_state(d, child).amplitudes(), config);
  });
  for (const auto& run : runs) {
    report.evaluations += run.evaluations;
    consider(run.state, run.value);
  }
  report.restarts = config.restarts;

  report.ic_unlocked = std::log2(static_cast<double>(d)) + std::log2(static_cast<double>(n));
  report.ic_upper = std::log2(static_cast<double>(d)) - report.best_average_entropy;
  report.r1_upper = std::numeric_limits<double>::quiet_NaN();
  report.r2_upper = std::numeric_limits<double>::quiet_NaN();
  if (report.ic_unlocked > report.ic_upper) {
    const FiguresOfMerit merit =
        figures_of_merit(report.ic_upper, report.ic_unlocked, std::log2(static_cast<double>(n)));
    report.r1_upper = merit.r1;
    report.r2_upper = merit.r2;
  }
  report.semantic =
      "heuristic: best average entropy found by local search is an upper bound on the minimum, "
      "so ic_upper is a lower estimate of log d - min average entropy";
  return report;
}

FiguresOfMerit figures_of_merit(double ic_upper, double ic_unlocked, double communicated_bits)
{
  if (!(ic_unlocked > ic_upper)) {
    throw DomainError("figures_of_merit: requires ic_unlocked > ic_upper");
  }
  if (!(ic_unlocked > 0.0)) throw DomainError("figures_of_merit: requires ic_unlocked > 0");
  return FiguresOfMerit{ic_upper / ic_unlocked, communicated_bits / (ic_unlocked - ic_upper)};
}

double delta_d(Index d)
{
  if (d < 2) throw DomainError("delta_d: requires d >= 2");
  long double tail = 0.0L;
  for (Index k = d; k >= 2; --k) tail += 1.0L / static_cast<long double>(k);
  const long double ln2 = std::log(2.0L);
  return static_cast<double>(std::log2(static_cast<long double>(d)) - tail / ln2);
}

double harmonic_gap(Index d)
{
  if (d < 1) throw DomainError("harmonic_gap: requires d >= 1");
  long double h = 0.0L;
  for (Index k = d; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  constexpr long double euler_gamma = 0.577215664901532860606512090082402431L;
  return static_cast<double>(h - std::log(static_cast<long double>(d)) - euler_gamma);
}

double expected_entropy_haar(Index d)
{
  return std::log2(static_cast<double>(d)) - delta_d(d);
}

std::vector<double> haar_measurement_entropies(Index d, std::size_t samples, const SeededStream& stream)
{
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t s) {
    SeededStream child = stream.derive(s);
    const PureState psi = haar_pure_state(d, child);
    values[s] = shannon_entropy(probabilities_of(psi.amplitudes()));
  });
  return values;
}

double entropy_gradient_norm_sq(const RealVector& q)
{
  double total = 0.0;
  for (double x : q) {
    if (x > kProbabilityFloor) {
      const double t = 1.0 + std::log(x);
      total += x * t * t;
    }
  }
  return 4.0 / (std::numbers::ln2 * std::numbers::ln2) * total;
}

LipschitzAudit lipschitz_audit(Index d, std::size_t samples, const SeededStream& stream)
{
  if (d < 3) throw DomainError("lipschitz_audit: requires d >= 3");
  LipschitzAudit audit;
  const double log_d = std::log2(static_cast<double>(d));
  audit.bound = 8.0 * log_d * log_d;
  audit.uniform_value =
      entropy_gradient_norm_sq(RealVector::Constant(d, 1.0 / static_cast<double>(d)));
  audit.max_observed = audit.uniform_value;
  for (std::size_t s = 0; s < samples; ++s) {
    SeededStream child = stream.derive(s);
    const PureState psi = haar_pure_state(d, child);
    audit.max_observed =
        std::max(audit.max_observed, entropy_gradient_norm_sq(psi.amplitudes().cwiseAbs2()));
  }
  audit.within_bound = audit.max_observed <= audit.bound + 1e-6;
  return audit;
}

ConcentrationReport entropy_concentration_experiment(Index d, Index n, std::size_t trials,
                                                     const SeededStream& stream,
                                                     const OptimizerConfig& config,
                                                     const std::vector<double>& epsilon_grid)
{
  if (static_cast<double>(n) * static_cast<double>(d) * static_cast<double>(d) > kMaterializeLimit) {
    throw DomainError("entropy_concentration_experiment: n*d^2 exceeds the memory budget");
  }
  ConcentrationReport report;
  report.best_averages.resize(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const SeededStream trial = stream.derive(t);
    const BasisEnsembleState state(build_ensemble(d, n, EnsembleKind::haar, trial.derive(0)));
    report.best_averages[t] = ic_upper_bound(state, config, trial.derive(1)).best_average_entropy;
  }
  report.summary = summarize(report.best_averages);
  const double log_d = std::log2(static_cast<double>(d));
  for (double eps : epsilon_grid) {
    ThresholdFraction f;
    f.epsilon = eps;
    f.threshold = (1.0 - eps / 2.0) * log_d - 3.0;
    std::size_t below = 0;
    for (double v : report.best_averages) {
      if (v < f.threshold) ++below;
    }
    f.fraction_below = trials == 0 ? 0.0 : static_cast<double>(below) / static_cast<double>(trials);
    report.thresholds.push_back(f);
  }
  return report;
}

FannesBound fannes_bound(double epsilon, Index d)
{
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("fannes_bound: requires 0 < eps <= 1");
  const double half = epsilon / 2.0;
  const double log_d = std::log2(static_cast<double>(d));
  return FannesBound{half * log_d - half * std::log2(half), half * log_d + 1.0};
}

}  // namespace qrand
