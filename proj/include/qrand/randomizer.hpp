#pragma once

// Randomizing maps R(rho) = (1/n) sum_j U_j rho U_j^dagger, their empirical
// epsilon, greedy state nets and entanglement probes.

#include <cstdint>
#include <string_view>
#include <vector>

#include "qrand/matcore.hpp"
#include "qrand/sampler.hpp"

namespace qrand {

/// Uniform mixture of the conjugations by an ensemble's members.
class RandomizingMap {
 public:
  explicit RandomizingMap(UnitaryEnsemble ensemble) : ensemble_(std::move(ensemble)) {}

  const UnitaryEnsemble& ensemble() const { return ensemble_; }
  Index dim() const { return ensemble_.dim(); }
  Index size() const { return ensemble_.size(); }

  /// (1/n) sum_j U_j m U_j^dagger for any square matrix m.
  ComplexMatrix apply(const ComplexMatrix& m) const;
  /// R(|psi><psi|) as (1/n) V V^dagger with V = [U_1 psi, ..., U_n psi].
  ComplexMatrix apply_pure(const ComplexVector& psi) const;
  /// Adjoint map (1/n) sum_j U_j^dagger m U_j.
  ComplexMatrix apply_adjoint(const ComplexMatrix& m) const;

 private:
  UnitaryEnsemble ensemble_;
};

DensityOperator apply_map(const RandomizingMap& map, const DensityOperator& rho);

/// d * ||R(phi) - I/d||_inf for one pure state.
double state_deviation(const RandomizingMap& map, const PureState& phi);

enum class StateSource { haar_samples, net, adversarial_restarts };
std::string_view to_string(StateSource source);

/// Empirical epsilon over a finite set of states. This is a lower bound on the
/// map's true epsilon (a supremum over all states); `source` records how the
/// states were chosen.
struct DeviationReport {
  double epsilon_emp = 0.0;
  std::size_t sample_count = 0;
  StateSource source = StateSource::haar_samples;
  std::vector<double> deviations;

  /// Associative merge: max of epsilons, concatenation of deviations.
  void merge(const DeviationReport& other);
};

DeviationReport measure_epsilon(const RandomizingMap& map, const std::vector<PureState>& states,
                                StateSource source);

/// Evaluates `count` Haar states drawn from stream.derive(k).
DeviationReport measure_epsilon_haar(const RandomizingMap& map, std::size_t count,
                                     const SeededStream& stream);

/// Multi-restart ascent: from a Haar start, alternately take the extreme
/// eigenvector v of R(phi) - I/d and replace phi by the extreme eigenvector of
/// the adjoint map applied to |v><v| (top for a positive extreme, bottom for a
/// negative one). Each restart reports its best deviation.
DeviationReport measure_epsilon_adversarial(const RandomizingMap& map, std::size_t restarts,
                                            const SeededStream& stream,
                                            std::size_t max_iterations = 50);

/// ceil(134 d log d / eps^2). Requires eps in (0,1) and d > 10/eps.
std::uint64_t theoretical_n(Index d, double epsilon);

/// log d + log log d + log(1/eps^2) + 8, in bits.
double key_length(Index d, double epsilon);

/// Greedy packing of pure states with pairwise pure_trace_distance >= radius.
struct StateNet {
  Index dim = 0;
  double radius = 0.0;
  std::vector<PureState> points;
  std::size_t candidates_drawn = 0;
};

inline constexpr std::size_t kNetRejectionStreak = 50000;

/// Samples Haar states and admits those at distance >= radius from all admitted
/// points; stops after `rejection_streak` consecutive rejections. Guarded to
/// dim <= 4 and radius >= 0.3.
StateNet build_state_net(Index dim, double radius, const SeededStream& stream,
                         std::size_t rejection_streak = kNetRejectionStreak);

/// Smallest pairwise distance between net points (infinity for < 2 points).
double min_pairwise_distance(const StateNet& net);

struct CoveringAudit {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  double worst_distance = 0.0;  ///< max over samples of the distance to the nearest net point
};

/// Draws fresh Haar states and measures their distance to the net.
CoveringAudit audit_covering(const StateNet& net, std::size_t samples, const SeededStream& stream);

struct EntanglementProbe {
  Index choi_rank = 0;
  double trace_distance = 0.0;  ///< ||(R (x) I)(Phi) - I/d^2||_1
  double distance_floor = 0.0;  ///< 2 (1 - rank/d^2)
  bool rank_within_n = false;
  bool distance_above_floor = false;
};

/// (R (x) I)(Phi) for the maximally entangled Phi on C^d (x) C^d, assembled as
/// (1/(n d)) sum_j w_j w_j^dagger with w_j the vectorization of U_j.
ComplexMatrix choi_state(const RandomizingMap& map);

/// Rank (eigenvalues > 1e-8 of the largest) and distance from I/d^2 of the
/// Choi state. Guarded to d^2 <= 4096.
EntanglementProbe entangled_probe(const RandomizingMap& map);

/// One term p * |phi><phi| (x) |psi><psi| of a separable mixture.
struct ProductTerm {
  double weight = 0.0;
  PureState local_a;
  PureState local_b;
};

struct SeparableDestruction {
  double distance = 0.0;            ///< ||(R (x) I)(rho) - I/d (x) rho_B||_1
  double component_epsilon = 0.0;   ///< max empirical epsilon over the A components
  bool within_component_epsilon = false;
  bool certified_exact = false;     ///< map is the full Weyl set (epsilon = 0)
};

SeparableDestruction separable_destruction_check(const RandomizingMap& map,
                                                 const std::vector<ProductTerm>& mixture);

}  // namespace qrand
