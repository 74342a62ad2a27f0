#pragma once

// Data hiding on C^d (x) C^d: a p-dimensional subspace S is randomized by a
// unitary ensemble on the joint space, and the legitimate receiver decodes
// with the transpose channel D_i = P U_i^dagger N^{-1/2}, N = sum_i U_i P U_i^dagger.

#include <optional>
#include <utility>
#include <vector>

#include "qrand/matcore.hpp"
#include "qrand/sampler.hpp"

namespace qrand {

class HidingScheme {
 public:
  Index local_dim() const { return d_; }
  Index total_dim() const { return d_ * d_; }
  Index hidden_dim() const { return p_; }
  Index size() const { return ensemble_.size(); }

  /// Orthonormal basis of S as the columns of a D x p matrix.
  const ComplexMatrix& subspace_basis() const { return basis_; }
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }
  const UnitaryEnsemble& ensemble() const { return ensemble_; }
  const ComplexMatrix& n_operator() const { return n_; }
  const ComplexMatrix& n_inv_sqrt() const { return n_inv_sqrt_; }
  const ComplexMatrix& support() const { return support_; }
  /// Failure Kraus element K0 = sqrt(I - sum_i D_i^dagger D_i).
  const ComplexMatrix& failure_kraus() const { return failure_; }
  /// Columns U_i |j> ordered i-major: column i*p + j.
  const ComplexMatrix& codewords() const { return codewords_; }
  /// D_i expressed in the subspace basis: a p x D matrix.
  ComplexMatrix kraus(Index i) const;
  /// max |sum_i D_i^dagger D_i + K0^dagger K0 - I|.
  double completeness_residual() const { return completeness_residual_; }

 private:
  friend HidingScheme build_scheme(Index, Index, Index, const SeededStream&, EnsembleKind);

  Index d_ = 0;
  Index p_ = 0;
  ComplexMatrix basis_;
  UnitaryEnsemble ensemble_;
  ComplexMatrix codewords_;
  ComplexMatrix n_;
  ComplexMatrix n_inv_sqrt_;
  ComplexMatrix support_;
  ComplexMatrix failure_;
  double completeness_residual_ = 0.0;
};

/// Builds a scheme with local dimension d, hidden dimension p <= d and n
/// unitaries on D = d^2. S is the span of the first p basis vectors rotated by
/// one Haar unitary drawn from stream.derive(0); the ensemble comes from
/// stream.derive(1). Haar ensembles are guarded by n*p <= D^2. A Weyl ensemble
/// on D (the exact baseline) is exempt because its members are never stored
/// densely.
HidingScheme build_scheme(Index d, Index p, Index n, const SeededStream& stream,
                          EnsembleKind kind = EnsembleKind::haar);

/// Embeds phi into S. With a key returns U_i iota(phi) U_i^dagger; without one
/// returns the average over the ensemble.
DensityOperator encode(const HidingScheme& scheme, const PureState& phi,
                       std::optional<Index> key = std::nullopt);

struct DecoderOutcome {
  DensityOperator recovered;                 ///< on C^p, success branches mixed and renormalized
  std::vector<double> branch_probabilities;  ///< n success branches, then the failure branch
  double success_probability() const;
};

DecoderOutcome decode(const HidingScheme& scheme, const DensityOperator& sigma);

/// <phi| recovered |phi>.
double decoded_fidelity(const DecoderOutcome& outcome, const PureState& phi);

/// Pretty good measurement elements M_ij = N^{-1/2} U_i|j><j|U_i^dagger N^{-1/2}
/// in i-major order, followed by the completion I - sum M_ij.
std::vector<ComplexMatrix> pgm_povm(const HidingScheme& scheme);

struct DeltaRecord {
  double delta = 0.0;            ///< sum over (i',j') != (i,j) of |<j|U_i^dagger U_i'|j'>|^2
  double same_block_max = 0.0;   ///< largest term with i' = i, j' != j (vanishes exactly)
  double decoding_deficit = 0.0; ///< 1 - |<j|D_i U_i|j>|^2
  bool criterion_holds = false;  ///< decoding_deficit <= delta + 1e-9
};

DeltaRecord delta_ij(const HidingScheme& scheme, Index i, Index j);

struct DeltaSummary {
  double mean_delta = 0.0;
  double max_same_block = 0.0;
  std::size_t criterion_violations = 0;
};

/// delta_ij for every (i, j) at once.
DeltaSummary delta_summary(const HidingScheme& scheme);

/// POVM whose elements are products X_k (x) Y_k of local PSD operators.
struct ProductPOVM {
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> elements;

  Index local_dim() const { return elements.empty() ? 0 : elements.front().first.rows(); }
  /// max |sum_k X_k (x) Y_k - I|.
  double completeness_residual() const;
};

/// {V|a><a|V^dagger (x) W|b><b|W^dagger} for independent Haar V, W.
ProductPOVM random_product_povm(Index d, const SeededStream& stream);

struct ProbeResult {
  double l1_distance = 0.0;
  bool certified_exact = false;  ///< ensemble is the full Weyl set, so encodings are identical
};

/// l1 distance between the POVM outcome distributions of the two unkeyed
/// encodings.
ProbeResult security_probe(const HidingScheme& scheme, const PureState& phi0, const PureState& phi1,
                           const ProductPOVM& povm);

/// 2 sqrt(alpha): trace distance implied by fidelity 1 - alpha.
double correctness_to_trace(double alpha);

struct HidingCapacity {
  double constant_c = 0.0;  ///< 1/(6 ln 2)
  double p_real = 0.0;
  long long p = 0;
  double log_ratio = 0.0;   ///< log p / log d^2 (from p_real)
  double theorem_n = 0.0;   ///< 99 d log d / (C eps^2)
  bool d_condition = false;        ///< d > max{36/(C delta^2), sqrt(15/eps), 21}
  bool epsilon_condition = false;  ///< eps^2 log(40/delta^2) < 1
};

/// p = C delta^2 eps^2 d / (1188 log d). Condition failures are flagged, not thrown.
HidingCapacity hiding_capacity(double d, double delta, double epsilon);

}  // namespace qrand
