#include <doctest.h>

#include "oracles.hpp"
#include "qrand/sampler.hpp"
#include "qrand/stats.hpp"

using namespace qrand;

namespace {

ComplexMatrix shift(Index d)
{
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

ComplexMatrix clock(Index d)
{
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  return z;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, Index e)
{
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (Index k = 0; k < e; ++k) out = out * m;
  return out;
}

}  // namespace

TEST_CASE("seeded streams are reproducible and independent across paths")
{
  SeededStream a(42, {1, 2});
  SeededStream b(42, {1, 2});
  SeededStream c(42, {1, 3});
  const double first = a.normal();
  CHECK(first == b.normal());
  CHECK(first != c.normal());
  CHECK(SeededStream(42).derive(1).derive(2).path() == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("Ginibre entries have the complex standard normal moments")
{
  SeededStream s(3);
  const ComplexMatrix g = ginibre(200, s);
  const double m2 = g.cwiseAbs2().mean();
  const double m4 = g.cwiseAbs2().cwiseAbs2().mean();
  // 40000 entries: s.e. of |g|^2 is 1/200, of |g|^4 about 0.02.
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(m4 == doctest::Approx(2.0).epsilon(0.06));
  CHECK(std::abs(g.mean()) < 0.02);
}

TEST_CASE("Haar unitaries are unitary with uniformly spread entries")
{
  SeededStream s(5);
  Eigen::MatrixXd second_moment = Eigen::MatrixXd::Zero(4, 4);
  for (int k = 0; k < 2000; ++k) {
    const ComplexMatrix u = haar_unitary(4, s);
    REQUIRE(unitarity_residual(u) < 1e-12);
    second_moment += u.cwiseAbs2();
  }
  second_moment /= 2000.0;
  CHECK((second_moment.array() - 0.25).abs().maxCoeff() < 0.03);
}

TEST_CASE("Haar state overlaps follow Beta(1, d-1)")
{
  const Index d = 6;
  std::vector<double> overlaps;
  for (std::uint64_t k = 0; k < 3000; ++k) {
    SeededStream s(9, {k});
    overlaps.push_back(std::norm(haar_pure_state(d, s).amplitudes()(2)));
  }
  const double ks = ks_statistic(overlaps, [d](double x) { return 1.0 - std::pow(1.0 - x, d - 1); });
  CHECK(ks < ks_critical_1pct(overlaps.size()));
}

TEST_CASE("Haar unitary columns give Haar states")
{
  const Index d = 4;
  std::vector<double> column;
  std::vector<double> direct;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    SeededStream s(10, {k});
    column.push_back(std::norm(haar_unitary(d, s)(0, 1)));
    SeededStream t(11, {k});
    direct.push_back(std::norm(haar_pure_state(d, t).amplitudes()(0)));
  }
  CHECK(ks_two_sample(column, direct) < ks_two_sample_critical_1pct(column.size(), direct.size()));
}

TEST_CASE("Weyl monomials match shift and clock products")
{
  for (Index d : {2, 3, 5}) {
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < d; ++b) {
        const ComplexMatrix expected = matrix_power(shift(d), a) * matrix_power(clock(d), b);
        CHECK((weyl_operator(d, a, b) - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(weyl_operator(3, 3, 0), DomainError);
}

TEST_CASE("monomial conjugation equals dense conjugation")
{
  const MonomialUnitary m = weyl_monomial(5, 2, 3);
  const ComplexMatrix rho = oracle::lcg_hermitian(5, 4);
  const ComplexMatrix u = m.dense();
  CHECK((m.conjugate(rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((m.conjugate_adjoint(rho) - u.adjoint() * rho * u).cwiseAbs().maxCoeff() < 1e-13);
  const ComplexVector v = rho.col(0);
  CHECK((m.apply(v) - u * v).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((m.apply_adjoint(v) - u.adjoint() * v).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Pauli words are tensor products with qubit 0 leftmost")
{
  ComplexMatrix x(2, 2), z(2, 2), y(2, 2), id = ComplexMatrix::Identity(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  y = x * z;  // the X^x Z^z convention, no factor of i
  const ComplexMatrix expected = oracle::kron(oracle::kron(x, z), oracle::kron(y, id));
  CHECK((pauli_word_unitary(PauliWord::from_strings("1010", "0110")) - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(PauliWord::from_strings("10", "1"), DimensionError);
  CHECK_THROWS_AS(PauliWord::from_strings("12", "10"), FormatError);
}

TEST_CASE("the full Weyl set twirls every operator to its trace")
{
  const Index d = 4;
  const UnitaryEnsemble e = build_ensemble(d, d * d, EnsembleKind::weyl, SeededStream(1));
  CHECK(e.full_weyl());
  std::vector<ComplexMatrix> members;
  for (Index j = 0; j < e.size(); ++j) members.push_back(e.member(j));
  const ComplexMatrix m = oracle::lcg_hermitian(d, 2);
  const ComplexMatrix twirled = oracle::twirl(members, m);
  const ComplexMatrix expected = m.trace() / static_cast<double>(d) * ComplexMatrix::Identity(d, d);
  CHECK((twirled - expected).cwiseAbs().maxCoeff() < 1e-13);
  // Ordering j = a*d + b.
  CHECK((e.member(1 * d + 3) - weyl_operator(d, 1, 3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ensembles are deterministic and lazily regenerated members agree")
{
  const UnitaryEnsemble a = build_ensemble(3, 5, EnsembleKind::haar, SeededStream(7));
  const UnitaryEnsemble b = build_ensemble(3, 5, EnsembleKind::haar, SeededStream(7));
  CHECK(a.materialized());
  for (Index j = 0; j < 5; ++j) CHECK(a.member(j) == b.member(j));
  SeededStream child = SeededStream(7).derive(2);
  CHECK(a.member(2) == haar_unitary(3, child));
  CHECK_THROWS_AS(a.member(5), std::out_of_range);

  const UnitaryEnsemble p = build_ensemble(8, 20, EnsembleKind::pauli, SeededStream(8));
  for (Index j = 0; j < p.size(); ++j) CHECK(unitarity_residual(p.member(j)) < 1e-15);
  CHECK_THROWS_AS(build_ensemble(6, 4, EnsembleKind::pauli, SeededStream(8)), DomainError);
}

TEST_CASE("explicit ensembles reject non-unitary members")
{
  CHECK_THROWS_AS(UnitaryEnsemble::from_members({2.0 * ComplexMatrix::Identity(2, 2)}), ContractError);
  const UnitaryEnsemble e = UnitaryEnsemble::from_members({ComplexMatrix::Identity(3, 3), fourier_matrix(3)});
  CHECK(e.kind() == EnsembleKind::explicit_members);
  CHECK(unitarity_residual(fourier_matrix(7)) < 1e-14);
  CHECK(parse_ensemble_kind(to_string(EnsembleKind::pauli)) == EnsembleKind::pauli);
  CHECK_THROWS_AS(parse_ensemble_kind("gaussian"), DomainError);
}
