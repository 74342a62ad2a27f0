#include "qrand/matcore.hpp"

#include <algorithm>
#include <numeric>

namespace qrand {

namespace {

// Applies f to the eigenvalues of the Hermitian part of m; eigenvalues at or
// below the support cutoff go through `null_value` instead.
template <typename F>
ComplexMatrix spectral_map(const ComplexMatrix& m, const char* what, F&& f, bool zero_null)
{
  detail::require_square(m, what);
  if (m.size() == 0) return m;
  if (hermitian_deviation(m) > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw ContractError(std::string(what) + ": input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  const RealVector& lambda = solver.eigenvalues();
  const double cutoff = kSupportCutoff * std::max(0.0, lambda.maxCoeff());
  RealVector mapped(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) {
    if (zero_null && !(lambda(k) > cutoff)) {
      mapped(k) = 0.0;
    } else {
      mapped(k) = f(std::max(0.0, lambda(k)));
    }
  }
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix out = v * mapped.asDiagonal() * v.adjoint();
  return hermitian_part(out);
}

}  // namespace

ComplexMatrix support_projector(const ComplexMatrix& m)
{
  return spectral_map(m, "support_projector", [](double) { return 1.0; }, true);
}

ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& m)
{
  return spectral_map(m, "hermitian_inv_sqrt", [](double x) { return 1.0 / std::sqrt(x); }, true);
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m)
{
  return spectral_map(m, "hermitian_sqrt", [](double x) { return std::sqrt(x); }, false);
}

Index numerical_rank(const ComplexMatrix& hermitian, double relative_cutoff)
{
  const RealVector lambda = hermitian_eigenvalues(hermitian);
  if (lambda.size() == 0) return 0;
  const double cutoff = relative_cutoff * lambda.cwiseAbs().maxCoeff();
  return static_cast<Index>(std::count_if(lambda.begin(), lambda.end(),
                                          [cutoff](double x) { return x > cutoff; }));
}

double shannon_entropy(std::span<const double> p)
{
  double total = 0.0;
  for (double x : p) {
    if (x < -1e-12) {
      throw ContractError("shannon_entropy: negative probability " + std::to_string(x));
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("shannon_entropy: probabilities sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double x : p) {
    const double q = std::clamp(x, 0.0, 1.0);
    if (q > kProbabilityFloor) h -= q * std::log2(q);
  }
  return std::max(0.0, h);
}

double shannon_entropy(const RealVector& p)
{
  return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes))
{
  if (amplitudes_.size() < 1) throw DimensionError("PureState: empty amplitude vector");
  if (!amplitudes_.allFinite()) throw ContractError("PureState: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > kPureNormTolerance) {
    throw ContractError("PureState: norm deviates from 1 by more than 1e-12");
  }
}

PureState PureState::normalized(const ComplexVector& v)
{
  const double norm = v.norm();
  if (!(norm > 0.0)) throw ContractError("PureState::normalized: zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index k)
{
  if (k < 0 || k >= dim) throw DimensionError("PureState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

DensityOperator::DensityOperator(const ComplexMatrix& matrix, TrustedTag)
{
  detail::require_square(matrix, "DensityOperator");
  if (matrix.rows() < 1) throw DimensionError("DensityOperator: empty matrix");
  if (!matrix.allFinite()) throw ContractError("DensityOperator: non-finite entry");
  if (hermitian_deviation(matrix) > kHermitianTolerance) {
    throw ContractError("DensityOperator: not Hermitian within 1e-10");
  }
  const double trace = matrix.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw ContractError("DensityOperator: trace " + std::to_string(trace) + " differs from 1");
  }
  matrix_ = hermitian_part(matrix);
}

DensityOperator::DensityOperator(const ComplexMatrix& matrix)
    : DensityOperator(matrix, TrustedTag{})
{
  if (hermitian_eigenvalues(matrix_).minCoeff() < -kPositivityTolerance) {
    throw ContractError("DensityOperator: negative eigenvalue below -1e-9");
  }
}

DensityOperator DensityOperator::trusted(const ComplexMatrix& matrix)
{
  return DensityOperator(matrix, TrustedTag{});
}

DensityOperator DensityOperator::from_pure(const PureState& psi)
{
  return trusted(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(Index dim)
{
  return trusted(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteSpace space, Subsystem traced)
{
  detail::require_square(m, "partial_trace");
  if (space.dim_a < 1 || space.dim_b < 1 || m.rows() != space.total()) {
    throw DimensionError("partial_trace: matrix dimension " + std::to_string(m.rows()) +
                         " does not factor as " + std::to_string(space.dim_a) + "x" +
                         std::to_string(space.dim_b));
  }
  const Index da = space.dim_a;
  const Index db = space.dim_b;
  if (traced == Subsystem::b) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Index a = 0; a < da; ++a) {
      for (Index a2 = 0; a2 < da; ++a2) {
        out(a, a2) = m.block(a * db, a2 * db, db, db).trace();
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, BipartiteSpace space, Subsystem traced)
{
  return DensityOperator::trusted(partial_trace(rho.matrix(), space, traced));
}

double pure_trace_distance(const PureState& phi, const PureState& psi)
{
  if (phi.dim() != psi.dim()) {
    throw DimensionError("pure_trace_distance: dimensions " + std::to_string(phi.dim()) + " and " +
                         std::to_string(psi.dim()));
  }
  const double overlap = std::norm(phi.overlap(psi));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap));
}

double von_neumann_entropy(const DensityOperator& rho)
{
  RealVector lambda = hermitian_eigenvalues(rho.matrix());
  for (double& x : lambda) x = std::max(0.0, x);
  lambda /= lambda.sum();
  return shannon_entropy(lambda);
}

}  // namespace qrand
