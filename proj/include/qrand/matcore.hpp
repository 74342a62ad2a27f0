#pragma once

// Dense complex linear algebra and entropy primitives.
//
// Generic routines take any Eigen expression and evaluate it once; the
// domain types (DensityOperator, PureState) hold plain dynamic matrices.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <string>

#include "qrand/errors.hpp"

namespace qrand {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kPureNormTolerance = 1e-12;
/// Relative eigenvalue cutoff separating support from null space.
inline constexpr double kSupportCutoff = 1e-10;
/// Probabilities below this are treated as exact zeros in entropies.
inline constexpr double kProbabilityFloor = 1e-15;

namespace detail {

template <typename Derived>
using PlainOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what)
{
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace detail

/// Largest entry of |M - M^dagger|.
template <typename Derived>
typename Derived::RealScalar hermitian_deviation(const Eigen::MatrixBase<Derived>& m)
{
  detail::require_square(m, "hermitian_deviation");
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// (M + M^dagger) / 2, used before every eigendecomposition of an operator
/// built by arithmetic.
template <typename Derived>
detail::PlainOf<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& m)
{
  detail::require_square(m, "hermitian_part");
  detail::PlainOf<Derived> out = m;
  out = (out + out.adjoint().eval()) / typename Derived::RealScalar(2);
  return out;
}

/// Ascending eigenvalues of the Hermitian part of m.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& m)
{
  Eigen::SelfAdjointEigenSolver<detail::PlainOf<Derived>> solver(hermitian_part(m),
                                                                 Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Trace norm Tr|M|: sum of singular values. Hermitian inputs take the
/// eigenvalue route.
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived>& m)
{
  using Real = typename Derived::RealScalar;
  detail::require_square(m, "trace_norm");
  if (m.size() == 0) return Real(0);
  const detail::PlainOf<Derived> dense = m;
  const Real scale = std::max(Real(1), dense.cwiseAbs().maxCoeff());
  if (hermitian_deviation(dense) <= Real(1e-12) * scale) {
    return hermitian_eigenvalues(dense).cwiseAbs().sum();
  }
  Eigen::BDCSVD<detail::PlainOf<Derived>> svd(dense);
  return svd.singularValues().sum();
}

/// Operator norm of a Hermitian matrix (largest |eigenvalue|).
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& m)
{
  using Real = typename Derived::RealScalar;
  detail::require_square(m, "operator_norm");
  if (m.size() == 0) return Real(0);
  const detail::PlainOf<Derived> dense = m;
  if (hermitian_deviation(dense) > Real(1e-9)) {
    throw ContractError("operator_norm: input is not Hermitian within 1e-9");
  }
  return hermitian_eigenvalues(dense).cwiseAbs().maxCoeff();
}

/// Kronecker product, first factor's index major: (A (x) B)(a*rb+b, a'*cb+b').
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor_product(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Projector onto the eigenvectors of a Hermitian PSD matrix whose eigenvalues
/// exceed kSupportCutoff times the largest one.
ComplexMatrix support_projector(const ComplexMatrix& m);

/// Pseudo-inverse square root of a Hermitian PSD matrix. Eigenvalues at or
/// below kSupportCutoff * lambda_max are treated as null space and mapped to
/// zero, so X * M * X equals support_projector(M).
ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& m);

/// Square root of a Hermitian PSD matrix; eigenvalues are clamped at zero.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m);

/// Number of eigenvalues above relative_cutoff * lambda_max.
Index numerical_rank(const ComplexMatrix& hermitian, double relative_cutoff);

/// Shannon entropy in bits with 0 log 0 = 0. Entries may dip to -1e-12 and the
/// total may be off by 1e-9; both are clamped.
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const RealVector& p);

/// A unit vector in C^dim.
class PureState {
 public:
  /// Throws ContractError if the norm is off by more than 1e-12.
  explicit PureState(ComplexVector amplitudes);
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Index dim, Index k);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  Complex overlap(const PureState& other) const { return amplitudes_.dot(other.amplitudes_); }

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
 public:
  /// Full validation, including the eigenvalue floor.
  explicit DensityOperator(const ComplexMatrix& matrix);
  /// For matrices that are positive by construction (conjugations, convex
  /// mixtures of states): checks Hermiticity and trace only, then symmetrizes.
  static DensityOperator trusted(const ComplexMatrix& matrix);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct TrustedTag {};
  DensityOperator(const ComplexMatrix& matrix, TrustedTag);
  ComplexMatrix matrix_;
};

struct BipartiteSpace {
  Index dim_a = 1;
  Index dim_b = 1;
  Index total() const { return dim_a * dim_b; }
};

enum class Subsystem { a, b };

/// Partial trace of a (dim_a*dim_b)-square matrix; `traced` is the factor removed.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteSpace space, Subsystem traced);
DensityOperator partial_trace(const DensityOperator& rho, BipartiteSpace space, Subsystem traced);

/// 2 sqrt(1 - |<phi|psi>|^2): trace norm of the difference of the projectors.
double pure_trace_distance(const PureState& phi, const PureState& psi);

/// Entropy of the eigenvalue spectrum, in bits.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace qrand
