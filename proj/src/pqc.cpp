#include "qrand/pqc.hpp"

#include <cmath>
#include <numbers>

namespace qrand {

namespace {

void check_key(const RandomizingMap& map, ChannelKey key)
{
  if (key.index < 0 || key.index >= map.size()) {
    throw std::out_of_range("channel key " + std::to_string(key.index) + " outside [0, " +
                            std::to_string(map.size()) + ")");
  }
}

void check_state(const RandomizingMap& map, const DensityOperator& rho)
{
  if (rho.dim() != map.dim()) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) + " does not match map dimension " +
                         std::to_string(map.dim()));
  }
}

}  // namespace

ChannelKey weyl_key(Index d, Index j, Index k)
{
  if (j < 0 || j >= d || k < 0 || k >= d) throw std::out_of_range("weyl_key: exponent out of range");
  return ChannelKey{j * d + k};
}

StateEnsembleInput::StateEnsembleInput(std::vector<std::pair<double, DensityOperator>> members)
    : members_(std::move(members))
{
  if (members_.empty()) throw ContractError("StateEnsembleInput: no members");
  if (members_.size() > kMaxHolevoInputs) throw ContractError("StateEnsembleInput: more than 64 members");
  double total = 0.0;
  for (const auto& [p, rho] : members_) {
    if (p < 0.0) throw ContractError("StateEnsembleInput: negative probability");
    if (rho.dim() != members_.front().second.dim()) {
      throw DimensionError("StateEnsembleInput: members differ in dimension");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("StateEnsembleInput: probabilities sum to " + std::to_string(total));
  }
}

DensityOperator encrypt(const RandomizingMap& map, ChannelKey key, const DensityOperator& rho)
{
  check_key(map, key);
  check_state(map, rho);
  return DensityOperator::trusted(map.ensemble().conjugate(key.index, rho.matrix()));
}

DensityOperator decrypt(const RandomizingMap& map, ChannelKey key, const DensityOperator& sigma)
{
  check_key(map, key);
  check_state(map, sigma);
  return DensityOperator::trusted(map.ensemble().conjugate_adjoint(key.index, sigma.matrix()));
}

DensityOperator eavesdropper_view(const RandomizingMap& map, const DensityOperator& rho)
{
  return apply_map(map, rho);
}

double holevo_quantity(const RandomizingMap& map, const StateEnsembleInput& inputs)
{
  if (inputs.dim() != map.dim()) throw DimensionError("holevo_quantity: dimension mismatch");
  ComplexMatrix average = ComplexMatrix::Zero(map.dim(), map.dim());
  double conditional = 0.0;
  for (const auto& [p, rho] : inputs.members()) {
    const DensityOperator out = apply_map(map, rho);
    average += p * out.matrix();
    conditional += p * von_neumann_entropy(out);
  }
  average /= average.trace().real();
  return std::max(0.0, von_neumann_entropy(DensityOperator::trusted(average)) - conditional);
}

HolevoBound holevo_bound(double epsilon)
{
  if (!(epsilon >= 0.0)) throw DomainError("holevo_bound: requires eps >= 0");
  return HolevoBound{std::log2(1.0 + epsilon), epsilon / std::numbers::ln2};
}

}  // namespace qrand
