#pragma once

// Locked classical correlations: states (1/dn) sum_ij |ij><ij| (x) U_j|i><i|U_j^dagger,
// the accessible-information bound log d - min_phi (1/n) sum_j H(p_j), and the
// measurement-entropy statistics of Haar-random states.

#include <string>
#include <vector>

#include "qrand/matcore.hpp"
#include "qrand/sampler.hpp"
#include "qrand/stats.hpp"

namespace qrand {

/// Levy's lemma constant: only the lower bound C' > 1/(220 ln 2) is known.
inline constexpr double kLevyConstantLower = 1.0 / (220.0 * 0.69314718055994530942);
/// C'' = C'/8 with C' at its lower bound.
inline constexpr double kLevyConstantReduced = kLevyConstantLower / 8.0;

/// Classical-quantum locking state, kept implicit: only the conditional states
/// U_j|i> are ever formed.
class BasisEnsembleState {
 public:
  explicit BasisEnsembleState(UnitaryEnsemble ensemble) : ensemble_(std::move(ensemble)) {}

  Index dim() const { return ensemble_.dim(); }
  Index bases() const { return ensemble_.size(); }
  const UnitaryEnsemble& ensemble() const { return ensemble_; }

  /// Bob's state U_j|i> given Alice's label (i, j).
  PureState conditional_state(Index i, Index j) const;

  /// Full rho_AB on C^{dn} (x) C^d. Refused when dn*d > 4096.
  ComplexMatrix materialize() const;

 private:
  UnitaryEnsemble ensemble_;
};

/// Computational basis plus the discrete Fourier basis: a mutually unbiased pair.
BasisEnsembleState fourier_pair_state(Index d);

/// p_j(i) = |<i|U_j^dagger|phi>|^2, one vector per basis.
struct MeasurementDistribution {
  std::vector<RealVector> per_basis;
};

MeasurementDistribution measurement_distribution(const BasisEnsembleState& state, const PureState& phi);

/// (1/n) sum_j H(p_j), in bits.
double average_measurement_entropy(const BasisEnsembleState& state, const PureState& phi);

struct OptimizerConfig {
  std::size_t restarts = 50;
  std::size_t iterations = 500;
  double initial_step = 0.3;
  /// Also evaluate every basis vector U_j|i> as a candidate (when n*d <= 65536)
  /// and polish the best one.
  bool basis_candidates = true;
};

struct LockingReport {
  double best_average_entropy = 0.0;
  double ic_upper = 0.0;     ///< log d - best_average_entropy
  double ic_unlocked = 0.0;  ///< log d + log n
  double r1_upper = 0.0;     ///< NaN when the denominator degenerates
  double r2_upper = 0.0;
  ComplexVector best_state;
  std::size_t restarts = 0;
  std::size_t candidates = 0;
  std::size_t evaluations = 0;
  /// The optimizer finds an upper bound on the minimum average entropy, so
  /// ic_upper is a lower estimate of the true accessible-information bound.
  std::string semantic;
};

/// Minimizes the average measurement entropy by multi-restart projected
/// gradient descent on the unit sphere (step halving on non-improvement).
LockingReport ic_upper_bound(const BasisEnsembleState& state, const OptimizerConfig& config,
                             const SeededStream& stream);

struct FiguresOfMerit {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// r1 = ic/ic_unlocked and r2 = bits/(ic_unlocked - ic). Throws DomainError
/// when ic_unlocked <= ic.
FiguresOfMerit figures_of_merit(double ic_upper, double ic_unlocked, double communicated_bits);

/// log d - (1/2 + 1/3 + ... + 1/d)/ln 2, summed in extended precision.
double delta_d(Index d);

/// H_d - ln d - gamma, the quantity sandwiched by 1/(2(d+1)) and 1/(2d).
double harmonic_gap(Index d);

/// Mean measurement entropy of a Haar state: log d - delta_d(d).
double expected_entropy_haar(Index d);

/// Measurement entropy H(q), q_i = |<i|psi>|^2, of `samples` Haar states.
std::vector<double> haar_measurement_entropies(Index d, std::size_t samples, const SeededStream& stream);

/// Squared gradient norm of H(q) on the sphere: (4/(ln 2)^2) sum_i q_i (1 + ln q_i)^2,
/// with q_i below 1e-15 dropped.
double entropy_gradient_norm_sq(const RealVector& q);

struct LipschitzAudit {
  double max_observed = 0.0;
  double uniform_value = 0.0;
  double bound = 0.0;  ///< 8 (log d)^2
  bool within_bound = false;
};

LipschitzAudit lipschitz_audit(Index d, std::size_t samples, const SeededStream& stream);

struct ThresholdFraction {
  double epsilon = 0.0;
  double threshold = 0.0;  ///< (1 - eps/2) log d - 3
  double fraction_below = 0.0;
};

struct ConcentrationReport {
  std::vector<double> best_averages;
  Summary summary;
  std::vector<ThresholdFraction> thresholds;
};

/// For each trial draws n Haar bases on C^d and minimizes the average entropy.
ConcentrationReport entropy_concentration_experiment(Index d, Index n, std::size_t trials,
                                                     const SeededStream& stream,
                                                     const OptimizerConfig& config,
                                                     const std::vector<double>& epsilon_grid);

struct FannesBound {
  double tight = 0.0;    ///< (eps/2) log d - (eps/2) log(eps/2)
  double relaxed = 0.0;  ///< (eps/2) log d + 1
};

FannesBound fannes_bound(double epsilon, Index d);

}  // namespace qrand
