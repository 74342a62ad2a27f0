#include "qrand/hiding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qrand {

ComplexMatrix HidingScheme::kraus(Index i) const
{
  if (i < 0 || i >= size()) throw std::out_of_range("HidingScheme::kraus: index out of range");
  return codewords_.middleCols(i * p_, p_).adjoint() * n_inv_sqrt_;
}

HidingScheme build_scheme(Index d, Index p, Index n, const SeededStream& stream, EnsembleKind kind)
{
  if (d < 1 || p < 1 || n < 1) throw DomainError("build_scheme: d, p and n must be positive");
  if (p > d) throw DomainError("build_scheme: requires p <= d");
  const Index big = d * d;
  if (kind == EnsembleKind::haar && n * p > big * big) {
    throw DomainError("build_scheme: requires n*p <= D^2");
  }
  if (kind != EnsembleKind::haar && kind != EnsembleKind::weyl) {
    throw DomainError("build_scheme: ensemble kind must be haar or weyl");
  }

  HidingScheme s;
  s.d_ = d;
  s.p_ = p;
  SeededStream subspace_stream = stream.derive(0);
  const ComplexMatrix rotation = haar_unitary(big, subspace_stream);
  s.basis_ = rotation.leftCols(p);
  s.ensemble_ = build_ensemble(big, n, kind, stream.derive(1));

  s.codewords_.resize(big, n * p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) s.codewords_.col(i * p + j) = s.ensemble_.apply(i, s.basis_.col(j));
  }
  s.n_ = hermitian_part(ComplexMatrix(s.codewords_ * s.codewords_.adjoint()));
  s.n_inv_sqrt_ = hermitian_inv_sqrt(s.n_);
  s.support_ = support_projector(s.n_);

  const ComplexMatrix sandwich = s.n_inv_sqrt_ * s.n_ * s.n_inv_sqrt_;
  if ((sandwich - s.support_).cwiseAbs().maxCoeff() > 1e-7) {
    throw ContractError("build_scheme: N^{-1/2} N N^{-1/2} differs from the support projector");
  }

  const ComplexMatrix identity = ComplexMatrix::Identity(big, big);
  const ComplexMatrix complement = hermitian_part(ComplexMatrix(identity - sandwich));
  if (hermitian_eigenvalues(complement).minCoeff() < -1e-8) {
    throw ContractError("build_scheme: I - sum D_i^dagger D_i is not positive semidefinite");
  }
  s.failure_ = hermitian_sqrt(complement);
  s.completeness_residual_ =
      (sandwich + s.failure_.adjoint() * s.failure_ - identity).cwiseAbs().maxCoeff();
  return s;
}

DensityOperator encode(const HidingScheme& scheme, const PureState& phi, std::optional<Index> key)
{
  const Index p = scheme.hidden_dim();
  if (phi.dim() != p) throw DimensionError("encode: hidden state must have dimension p");
  const ComplexMatrix& words = scheme.codewords();
  if (key) {
    if (*key < 0 || *key >= scheme.size()) throw std::out_of_range("encode: key out of range");
    const ComplexVector v = words.middleCols(*key * p, p) * phi.amplitudes();
    return DensityOperator::trusted(v * v.adjoint());
  }
  const Index big = scheme.total_dim();
  ComplexMatrix shares(big, scheme.size());
  for (Index i = 0; i < scheme.size(); ++i) shares.col(i) = words.middleCols(i * p, p) * phi.amplitudes();
  return DensityOperator::trusted(shares * shares.adjoint() / static_cast<double>(scheme.size()));
}

double DecoderOutcome::success_probability() const
{
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < branch_probabilities.size(); ++k) total += branch_probabilities[k];
  return total;
}

DecoderOutcome decode(const HidingScheme& scheme, const DensityOperator& sigma)
{
  const Index big = scheme.total_dim();
  const Index p = scheme.hidden_dim();
  if (sigma.dim() != big) throw DimensionError("decode: state must live on the D-dimensional space");
  const ComplexMatrix whitened = scheme.n_inv_sqrt() * sigma.matrix() * scheme.n_inv_sqrt();
  ComplexMatrix recovered = ComplexMatrix::Zero(p, p);
  std::vector<double> probabilities;
  probabilities.reserve(static_cast<std::size_t>(scheme.size()) + 1);
  for (Index i = 0; i < scheme.size(); ++i) {
    const auto block = scheme.codewords().middleCols(i * p, p);
    const ComplexMatrix branch = block.adjoint() * whitened * block;
    probabilities.push_back(branch.trace().real());
    recovered += branch;
  }
  const ComplexMatrix& k0 = scheme.failure_kraus();
  probabilities.push_back((k0 * sigma.matrix() * k0.adjoint()).trace().real());

  double total = 0.0;
  for (double q : probabilities) total += q;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("decode: branch probabilities sum to " + std::to_string(total));
  }
  const double success = recovered.trace().real();
  if (!(success > 1e-14)) throw ContractError("decode: success branches carry no weight");
  return DecoderOutcome{DensityOperator::trusted(recovered / success), std::move(probabilities)};
}

double decoded_fidelity(const DecoderOutcome& outcome, const PureState& phi)
{
  const ComplexVector& a = phi.amplitudes();
  return a.dot(outcome.recovered.matrix() * a).real();
}

std::vector<ComplexMatrix> pgm_povm(const HidingScheme& scheme)
{
  const Index big = scheme.total_dim();
  std::vector<ComplexMatrix> elements;
  elements.reserve(static_cast<std::size_t>(scheme.codewords().cols()) + 1);
  ComplexMatrix completion = ComplexMatrix::Identity(big, big);
  for (Index c = 0; c < scheme.codewords().cols(); ++c) {
    const ComplexVector v = scheme.n_inv_sqrt() * scheme.codewords().col(c);
    elements.push_back(v * v.adjoint());
    completion -= elements.back();
  }
  elements.push_back(hermitian_part(completion));
  return elements;
}

DeltaRecord delta_ij(const HidingScheme& scheme, Index i, Index j)
{
  const Index p = scheme.hidden_dim();
  if (i < 0 || i >= scheme.size() || j < 0 || j >= p) throw std::out_of_range("delta_ij: index out of range");
  const ComplexMatrix& words = scheme.codewords();
  const Index row = i * p + j;
  const ComplexVector v = words.col(row);
  const RealVector overlaps = (words.adjoint() * v).cwiseAbs2();

  DeltaRecord r;
  r.delta = overlaps.sum() - overlaps(row);
  for (Index jj = 0; jj < p; ++jj) {
    if (jj != j) r.same_block_max = std::max(r.same_block_max, overlaps(i * p + jj));
  }
  // <j| D_i U_i |j> = <v| N^{-1/2} |v> with v = U_i |j>
  r.decoding_deficit = 1.0 - std::norm(v.dot(scheme.n_inv_sqrt() * v));
  r.criterion_holds = r.decoding_deficit <= r.delta + 1e-9;
  return r;
}

DeltaSummary delta_summary(const HidingScheme& scheme)
{
  const Index p = scheme.hidden_dim();
  const ComplexMatrix& words = scheme.codewords();
  const Index count = words.cols();
  const Eigen::MatrixXd gram = (words.adjoint() * words).cwiseAbs2();
  const ComplexMatrix whitened = scheme.n_inv_sqrt() * words;

  DeltaSummary summary;
  double total = 0.0;
  for (Index row = 0; row < count; ++row) {
    const double delta = gram.row(row).sum() - gram(row, row);
    total += delta;
    const Index block = row / p;
    for (Index c = block * p; c < (block + 1) * p; ++c) {
      if (c != row) summary.max_same_block = std::max(summary.max_same_block, gram(row, c));
    }
    const double deficit = 1.0 - std::norm(words.col(row).dot(whitened.col(row)));
    if (deficit > delta + 1e-9) ++summary.criterion_violations;
  }
  summary.mean_delta = total / static_cast<double>(count);
  return summary;
}

double ProductPOVM::completeness_residual() const
{
  const Index d = local_dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& [x, y] : elements) sum += tensor_product(x, y);
  return (sum - ComplexMatrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff();
}

ProductPOVM random_product_povm(Index d, const SeededStream& stream)
{
  SeededStream left_stream = stream.derive(0);
  SeededStream right_stream = stream.derive(1);
  const ComplexMatrix left = haar_unitary(d, left_stream);
  const ComplexMatrix right = haar_unitary(d, right_stream);
  ProductPOVM povm;
  povm.elements.reserve(static_cast<std::size_t>(d * d));
  for (Index a = 0; a < d; ++a) {
    const ComplexMatrix x = left.col(a) * left.col(a).adjoint();
    for (Index b = 0; b < d; ++b) povm.elements.emplace_back(x, right.col(b) * right.col(b).adjoint());
  }
  return povm;
}

ProbeResult security_probe(const HidingScheme& scheme, const PureState& phi0, const PureState& phi1,
                           const ProductPOVM& povm)
{
  const Index d = scheme.local_dim();
  if (povm.local_dim() != d) throw DimensionError("security_probe: POVM local dimension mismatch");
  if (povm.completeness_residual() > 1e-8) throw ContractError("security_probe: POVM is not complete");
  const ComplexMatrix diff = encode(scheme, phi0).matrix() - encode(scheme, phi1).matrix();

  ProbeResult result;
  result.certified_exact = scheme.ensemble().full_weyl();
  for (const auto& [x, y] : povm.elements) {
    // Tr((X (x) Y) diff) = sum_{a,a'} X(a,a') Tr(Y diff_{a',a}) with diff_{a',a}
    // the d x d block at rows a', columns a.
    Complex value = 0.0;
    for (Index a = 0; a < d; ++a) {
      for (Index a2 = 0; a2 < d; ++a2) {
        const Complex xa = x(a, a2);
        if (xa == Complex(0.0)) continue;
        value += xa * (y.transpose().cwiseProduct(diff.block(a2 * d, a * d, d, d))).sum();
      }
    }
    result.l1_distance += std::abs(value.real());
  }
  return result;
}

double correctness_to_trace(double alpha)
{
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("correctness_to_trace: requires alpha in [0,1]");
  return 2.0 * std::sqrt(alpha);
}

HidingCapacity hiding_capacity(double d, double delta, double epsilon)
{
  if (!(d >= 2.0) || !(delta > 0.0) || !(epsilon > 0.0)) {
    throw DomainError("hiding_capacity: requires d >= 2 and positive delta, eps");
  }
  HidingCapacity cap;
  cap.constant_c = 1.0 / (6.0 * std::numbers::ln2);
  const double log_d = std::log2(d);
  cap.p_real = cap.constant_c * delta * delta * epsilon * epsilon * d / (1188.0 * log_d);
  cap.p = static_cast<long long>(std::floor(cap.p_real));
  cap.log_ratio = std::log2(cap.p_real) / std::log2(d * d);
  cap.theorem_n = 99.0 / (cap.constant_c * epsilon * epsilon) * d * log_d;
  const double threshold =
      std::max({36.0 / (cap.constant_c * delta * delta), std::sqrt(15.0 / epsilon), 21.0});
  cap.d_condition = d > threshold;
  cap.epsilon_condition = epsilon * epsilon * std::log2(40.0 / (delta * delta)) < 1.0;
  return cap;
}

}  // namespace qrand
