#pragma once

// Keyed encryption over a randomizing map and Holevo accounting of what an
// eavesdropper without the key can learn.

#include <utility>
#include <vector>

#include "qrand/randomizer.hpp"

namespace qrand {

/// Index j into the map's ensemble.
struct ChannelKey {
  Index index = 0;
};

/// Two-index Weyl key (j, k) for X^j Z^k, flattened to j*d + k.
ChannelKey weyl_key(Index d, Index j, Index k);

inline constexpr std::size_t kMaxHolevoInputs = 64;

/// Probability-weighted list of input states.
class StateEnsembleInput {
 public:
  /// Throws ContractError unless weights are nonnegative and sum to 1 within
  /// 1e-9 and there are at most 64 members of one dimension.
  explicit StateEnsembleInput(std::vector<std::pair<double, DensityOperator>> members);

  const std::vector<std::pair<double, DensityOperator>>& members() const { return members_; }
  Index dim() const { return members_.front().second.dim(); }

 private:
  std::vector<std::pair<double, DensityOperator>> members_;
};

/// U_j rho U_j^dagger
DensityOperator encrypt(const RandomizingMap& map, ChannelKey key, const DensityOperator& rho);
/// U_j^dagger sigma U_j
DensityOperator decrypt(const RandomizingMap& map, ChannelKey key, const DensityOperator& sigma);

/// What a party without the key holds: R(rho).
DensityOperator eavesdropper_view(const RandomizingMap& map, const DensityOperator& rho);

/// S(sum_i p_i R(rho_i)) - sum_i p_i S(R(rho_i)), in bits.
double holevo_quantity(const RandomizingMap& map, const StateEnsembleInput& inputs);

struct HolevoBound {
  double log_form = 0.0;     ///< log2(1 + eps)
  double linear_form = 0.0;  ///< eps / ln 2
};

HolevoBound holevo_bound(double epsilon);

}  // namespace qrand
