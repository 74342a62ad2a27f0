#include <doctest.h>

#include "oracles.hpp"
#include "qrand/randomizer.hpp"

using namespace qrand;

namespace {

std::vector<ComplexMatrix> dense_members(const UnitaryEnsemble& e)
{
  std::vector<ComplexMatrix> out;
  for (Index j = 0; j < e.size(); ++j) out.push_back(e.member(j));
  return out;
}

}  // namespace

TEST_CASE("map application matches the naive twirl")
{
  const RandomizingMap map(build_ensemble(5, 7, EnsembleKind::haar, SeededStream(1)));
  const ComplexMatrix rho = oracle::lcg_hermitian(5, 1);
  const ComplexMatrix expected = oracle::twirl(dense_members(map.ensemble()), rho);
  CHECK((map.apply(rho) - expected).cwiseAbs().maxCoeff() < 1e-13);

  SeededStream s(2);
  const PureState phi = haar_pure_state(5, s);
  CHECK((map.apply_pure(phi.amplitudes()) - map.apply(phi.projector())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("adjoint map satisfies Tr(A R(B)) = Tr(R*(A) B)")
{
  const RandomizingMap map(build_ensemble(4, 6, EnsembleKind::pauli, SeededStream(3)));
  const ComplexMatrix a = oracle::lcg_hermitian(4, 5);
  const ComplexMatrix b = oracle::lcg_hermitian(4, 6);
  const Complex lhs = (a * map.apply(b)).trace();
  const Complex rhs = (map.apply_adjoint(a) * b).trace();
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("state deviation matches the oracle operator norm")
{
  const RandomizingMap map(build_ensemble(6, 10, EnsembleKind::haar, SeededStream(4)));
  SeededStream s(5);
  const PureState phi = haar_pure_state(6, s);
  ComplexMatrix diff = oracle::twirl(dense_members(map.ensemble()), phi.projector());
  diff -= ComplexMatrix::Identity(6, 6) / 6.0;
  CHECK(state_deviation(map, phi) == doctest::Approx(6.0 * oracle::operator_norm(diff)).epsilon(1e-10));
}

TEST_CASE("the full Weyl set randomizes exactly")
{
  for (Index d = 2; d <= 6; ++d) {
    const RandomizingMap map(build_ensemble(d, d * d, EnsembleKind::weyl, SeededStream(6)));
    CHECK(measure_epsilon_haar(map, 20, SeededStream(7)).epsilon_emp < 1e-12);
  }
}

TEST_CASE("a single unitary has deviation d - 1 on every state")
{
  const RandomizingMap map(build_ensemble(4, 1, EnsembleKind::haar, SeededStream(8)));
  const DeviationReport samples = measure_epsilon_haar(map, 10, SeededStream(9));
  CHECK(samples.epsilon_emp == doctest::Approx(3.0));
  const DeviationReport adversarial = measure_epsilon_adversarial(map, 3, SeededStream(10));
  CHECK(adversarial.epsilon_emp == doctest::Approx(3.0));
  CHECK(adversarial.source == StateSource::adversarial_restarts);
}

TEST_CASE("adversarial search does at least as well as its starting states")
{
  const RandomizingMap map(build_ensemble(8, 12, EnsembleKind::haar, SeededStream(11)));
  const DeviationReport adversarial = measure_epsilon_adversarial(map, 5, SeededStream(12));
  std::vector<PureState> starts;
  for (std::uint64_t r = 0; r < 5; ++r) {
    SeededStream child = SeededStream(12).derive(r);
    starts.push_back(haar_pure_state(8, child));
  }
  const DeviationReport baseline = measure_epsilon(map, starts, StateSource::haar_samples);
  CHECK(adversarial.epsilon_emp >= baseline.epsilon_emp - 1e-12);
}

TEST_CASE("deviation reports merge by max and concatenation")
{
  DeviationReport a{0.3, 2, StateSource::haar_samples, {0.1, 0.3}};
  const DeviationReport b{0.5, 1, StateSource::haar_samples, {0.5}};
  a.merge(b);
  CHECK(a.epsilon_emp == 0.5);
  CHECK(a.sample_count == 3);
  CHECK(a.deviations == std::vector<double>{0.1, 0.3, 0.5});
  CHECK_THROWS_AS(measure_epsilon(RandomizingMap(build_ensemble(2, 1, EnsembleKind::haar, SeededStream(1))), {},
                                  StateSource::net),
                  ContractError);
}

TEST_CASE("theoretical ensemble size and key length")
{
  // 134 * 64 * 6 / 0.25
  CHECK(theoretical_n(64, 0.5) == 205824u);
  // 134 * 1024 * 10 / 0.25
  CHECK(theoretical_n(1024, 0.5) == 5488640u);
  CHECK_THROWS_AS(theoretical_n(16, 0.5), DomainError);  // needs d > 20
  CHECK_THROWS_AS(theoretical_n(64, 1.0), DomainError);
  // 10 + log2(10) + 2 + 8
  CHECK(key_length(1024, 0.5) == doctest::Approx(23.321928).epsilon(1e-7));
  CHECK(key_length(2, 1.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(key_length(1, 0.5), DomainError);
}

TEST_CASE("greedy nets pack and cover")
{
  const StateNet net = build_state_net(2, 0.6, SeededStream(13), 5000);
  CHECK(net.points.size() >= 2);
  CHECK(min_pairwise_distance(net) >= 0.6);
  const CoveringAudit audit = audit_covering(net, 2000, SeededStream(14));
  CHECK(audit.samples == 2000);
  CHECK(audit.worst_distance <= 0.6 + 0.05);
  CHECK_THROWS_AS(build_state_net(5, 0.5, SeededStream(1)), DomainError);
  CHECK_THROWS_AS(build_state_net(2, 0.2, SeededStream(1)), DomainError);
}

TEST_CASE("Choi state of a small ensemble")
{
  const Index d = 4;
  const RandomizingMap weyl(build_ensemble(d, d * d, EnsembleKind::weyl, SeededStream(1)));
  const ComplexMatrix choi = choi_state(weyl);
  CHECK((choi - ComplexMatrix::Identity(d * d, d * d) / 16.0).cwiseAbs().maxCoeff() < 1e-14);
  const EntanglementProbe exact = entangled_probe(weyl);
  CHECK(exact.choi_rank == 16);
  CHECK(exact.trace_distance < 1e-12);

  const RandomizingMap haar(build_ensemble(d, 5, EnsembleKind::haar, SeededStream(15)));
  const EntanglementProbe probe = entangled_probe(haar);
  CHECK(probe.choi_rank == 5);
  CHECK(probe.rank_within_n);
  CHECK(probe.distance_floor == doctest::Approx(2.0 * (1.0 - 5.0 / 16.0)));
  CHECK(probe.trace_distance >= probe.distance_floor - 1e-12);
  CHECK(probe.trace_distance == doctest::Approx(oracle::trace_norm(
                                    choi_state(haar) - ComplexMatrix::Identity(16, 16) / 16.0)).epsilon(1e-10));

  // Oracle: (R (x) I)(Phi) with Phi = (1/d) sum |ii><jj|, built index by index.
  ComplexMatrix phi = ComplexMatrix::Zero(16, 16);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0 / d;
  ComplexMatrix expected = ComplexMatrix::Zero(16, 16);
  for (const auto& u : dense_members(haar.ensemble())) {
    const ComplexMatrix big = oracle::kron(u, ComplexMatrix::Identity(d, d));
    expected += big * phi * big.adjoint() / 5.0;
  }
  CHECK((choi_state(haar) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("separable inputs lose their A-side correlations")
{
  SeededStream s(16);
  std::vector<ProductTerm> mixture;
  for (int k = 0; k < 3; ++k) mixture.push_back({1.0 / 3.0, haar_pure_state(3, s), haar_pure_state(2, s)});
  const RandomizingMap weyl(build_ensemble(3, 9, EnsembleKind::weyl, SeededStream(1)));
  const SeparableDestruction exact = separable_destruction_check(weyl, mixture);
  CHECK(exact.certified_exact);
  CHECK(exact.distance < 1e-12);

  const RandomizingMap haar(build_ensemble(3, 20, EnsembleKind::haar, SeededStream(17)));
  const SeparableDestruction approx = separable_destruction_check(haar, mixture);
  CHECK_FALSE(approx.certified_exact);
  CHECK(approx.within_component_epsilon);

  mixture[0].weight = 0.5;
  CHECK_THROWS_AS(separable_destruction_check(haar, mixture), ContractError);
}
