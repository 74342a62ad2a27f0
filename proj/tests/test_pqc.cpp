#include <doctest.h>

#include "oracles.hpp"
#include "qrand/pqc.hpp"

using namespace qrand;

namespace {

StateEnsembleInput random_inputs(Index d, std::size_t count, std::uint64_t seed)
{
  std::vector<std::pair<double, DensityOperator>> members;
  for (std::uint64_t k = 0; k < count; ++k) {
    SeededStream s(seed, {k});
    members.emplace_back(1.0 / static_cast<double>(count), DensityOperator::from_pure(haar_pure_state(d, s)));
  }
  return StateEnsembleInput(std::move(members));
}

}  // namespace

TEST_CASE("encryption round trip is exact for every key")
{
  const RandomizingMap map(build_ensemble(3, 9, EnsembleKind::weyl, SeededStream(1)));
  SeededStream s(2);
  const DensityOperator rho = DensityOperator::from_pure(haar_pure_state(3, s));
  for (Index j = 0; j < 3; ++j) {
    for (Index k = 0; k < 3; ++k) {
      const ChannelKey key = weyl_key(3, j, k);
      CHECK(key.index == j * 3 + k);
      const DensityOperator back = decrypt(map, key, encrypt(map, key, rho));
      CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
      const ComplexMatrix u = weyl_operator(3, j, k);
      CHECK((encrypt(map, key, rho).matrix() - u * rho.matrix() * u.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  CHECK_THROWS_AS(encrypt(map, ChannelKey{9}, rho), std::out_of_range);
  CHECK_THROWS_AS(weyl_key(3, 3, 0), std::out_of_range);
}

TEST_CASE("the eavesdropper sees the maximally mixed state under Weyl keys")
{
  const RandomizingMap map(build_ensemble(4, 16, EnsembleKind::weyl, SeededStream(1)));
  SeededStream s(3);
  const DensityOperator view = eavesdropper_view(map, DensityOperator::from_pure(haar_pure_state(4, s)));
  CHECK((view.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(holevo_quantity(map, random_inputs(4, 16, 4)) < 1e-12);
}

TEST_CASE("Holevo quantity matches the oracle entropy")
{
  const RandomizingMap map(build_ensemble(4, 3, EnsembleKind::haar, SeededStream(5)));
  const StateEnsembleInput inputs = random_inputs(4, 5, 6);
  ComplexMatrix average = ComplexMatrix::Zero(4, 4);
  double conditional = 0.0;
  for (const auto& [p, rho] : inputs.members()) {
    const ComplexMatrix out = eavesdropper_view(map, rho).matrix();
    average += p * out;
    conditional += p * oracle::entropy_bits(out);
  }
  CHECK(holevo_quantity(map, inputs) == doctest::Approx(oracle::entropy_bits(average) - conditional).epsilon(1e-9));
}

TEST_CASE("Holevo quantity stays below log(1 + eps) for the measured states")
{
  const RandomizingMap map(build_ensemble(8, 40, EnsembleKind::haar, SeededStream(7)));
  std::vector<PureState> states;
  std::vector<std::pair<double, DensityOperator>> members;
  for (std::uint64_t k = 0; k < 8; ++k) {
    SeededStream s(8, {k});
    states.push_back(haar_pure_state(8, s));
    members.emplace_back(0.125, DensityOperator::from_pure(states.back()));
  }
  const double chi = holevo_quantity(map, StateEnsembleInput(std::move(members)));
  const double eps = measure_epsilon(map, states, StateSource::haar_samples).epsilon_emp;
  CHECK(chi <= holevo_bound(eps).log_form + 1e-9);
}

TEST_CASE("Holevo bound forms")
{
  const HolevoBound b = holevo_bound(0.1);
  CHECK(b.log_form == doctest::Approx(0.137504).epsilon(1e-5));
  CHECK(b.linear_form == doctest::Approx(0.144270).epsilon(1e-5));
  CHECK(b.log_form <= b.linear_form);
  CHECK(holevo_bound(0.0).log_form == 0.0);
  CHECK_THROWS_AS(holevo_bound(-0.1), DomainError);
}

TEST_CASE("input ensembles are validated")
{
  const DensityOperator rho = DensityOperator::maximally_mixed(2);
  CHECK_THROWS_AS(StateEnsembleInput({{0.5, rho}}), ContractError);
  CHECK_THROWS_AS(StateEnsembleInput({{0.5, rho}, {0.5, DensityOperator::maximally_mixed(3)}}), DimensionError);
  std::vector<std::pair<double, DensityOperator>> many(65, {1.0 / 65.0, rho});
  CHECK_THROWS_AS(StateEnsembleInput(std::move(many)), ContractError);
}
