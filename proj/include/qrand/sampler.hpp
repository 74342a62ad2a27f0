#pragma once

// Seeded sampling of Ginibre matrices, Haar unitaries and states, Weyl
// operators and Pauli words, plus the UnitaryEnsemble container.
//
// Basis labels run 0..d-1. The clock operator is Z|j> = exp(2 pi i j/d)|j>,
// which differs from a 1..d labelling only by a global phase on Z; every map
// in this library is a conjugation, so the phase never shows up.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qrand/matcore.hpp"

namespace qrand {

/// Deterministic random stream identified by a root seed and a derivation
/// path. Equal (root_seed, path) pairs produce bit-identical sequences.
/// Not thread-safe; derive one child per worker.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t root_seed, std::vector<std::uint64_t> path = {});

  SeededStream derive(std::uint64_t child) const;

  std::uint64_t root_seed() const { return root_seed_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  double normal();
  double uniform();
  std::uint64_t bits();
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  bool coin();

 private:
  std::uint64_t root_seed_;
  std::vector<std::uint64_t> path_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// dim x dim matrix of i.i.d. standard complex normals (each part variance 1/2),
/// filled row by row.
ComplexMatrix ginibre(Index dim, SeededStream& stream);

/// Haar unitary: QR of a Ginibre sample with the phases of R's diagonal moved
/// into Q, so that R has positive diagonal and the factorization is unique.
ComplexMatrix haar_unitary(Index dim, SeededStream& stream);

/// Normalized Ginibre column vector.
PureState haar_pure_state(Index dim, SeededStream& stream);

/// Unitary that maps each basis vector to a phase times another basis vector:
/// U|k> = phase[k] |target[k]>.
struct MonomialUnitary {
  std::vector<Index> target;
  std::vector<Complex> phase;

  Index dim() const { return static_cast<Index>(target.size()); }
  ComplexMatrix dense() const;
  ComplexVector apply(const ComplexVector& v) const;
  ComplexVector apply_adjoint(const ComplexVector& v) const;
  /// U rho U^dagger
  ComplexMatrix conjugate(const ComplexMatrix& rho) const;
  /// U^dagger rho U
  ComplexMatrix conjugate_adjoint(const ComplexMatrix& rho) const;
};

/// X^a Z^b as a monomial unitary.
MonomialUnitary weyl_monomial(Index dim, Index a, Index b);
/// Dense X^a Z^b with X|j> = |j+1 mod d>, Z|j> = exp(2 pi i j/d)|j>.
ComplexMatrix weyl_operator(Index dim, Index a, Index b);

/// Tensor product of X^x Z^z over qubits; qubit 0 is the most significant
/// (first) tensor factor.
struct PauliWord {
  std::vector<bool> x_mask;
  std::vector<bool> z_mask;

  /// Masks as '0'/'1' strings, qubit 0 first.
  static PauliWord from_strings(std::string_view x, std::string_view z);
  Index qubit_count() const { return static_cast<Index>(x_mask.size()); }
};

inline constexpr Index kMaxPauliQubits = 12;

MonomialUnitary pauli_monomial(const PauliWord& word);
ComplexMatrix pauli_word_unitary(const PauliWord& word);

enum class EnsembleKind { haar, weyl, pauli, explicit_members };

std::string_view to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(std::string_view name);

/// Ensembles with more complex entries than this are regenerated on demand.
inline constexpr double kMaterializeLimit = 1e8;

/// Ordered list of n unitaries on C^dim.
///
/// Haar members are derived from stream.derive(j), so member j can be
/// regenerated independently of the others. Weyl and Pauli members are stored
/// as monomial labels and expanded only when a dense matrix is requested.
class UnitaryEnsemble {
 public:
  /// Builds an explicit ensemble from given unitaries (no seed).
  static UnitaryEnsemble from_members(std::vector<ComplexMatrix> members);

  Index dim() const { return dim_; }
  Index size() const { return size_; }
  EnsembleKind kind() const { return kind_; }
  const std::optional<SeededStream>& seed() const { return seed_; }
  /// Dense Haar/explicit members are held in memory.
  bool materialized() const { return !dense_.empty(); }
  bool monomial() const { return !monomials_.empty(); }
  /// Weyl ensemble holding every X^a Z^b exactly once.
  bool full_weyl() const { return kind_ == EnsembleKind::weyl && size_ == dim_ * dim_; }

  ComplexMatrix member(Index j) const;
  ComplexVector apply(Index j, const ComplexVector& v) const;
  ComplexVector apply_adjoint(Index j, const ComplexVector& v) const;
  ComplexMatrix conjugate(Index j, const ComplexMatrix& rho) const;
  ComplexMatrix conjugate_adjoint(Index j, const ComplexMatrix& rho) const;

 private:
  friend UnitaryEnsemble build_ensemble(Index, Index, EnsembleKind, const SeededStream&);
  friend UnitaryEnsemble restore_ensemble(Index, Index, EnsembleKind, const SeededStream&,
                                          std::vector<ComplexMatrix>);

  void check_index(Index j) const;

  Index dim_ = 0;
  Index size_ = 0;
  EnsembleKind kind_ = EnsembleKind::explicit_members;
  std::optional<SeededStream> seed_;
  std::vector<ComplexMatrix> dense_;
  std::vector<MonomialUnitary> monomials_;
};

/// Builds an ensemble of n unitaries on C^dim.
///  - haar: independent Haar unitaries.
///  - weyl: n == dim^2 gives the full set ordered j = a*dim + b; otherwise n
///    uniform draws of (a, b) with replacement.
///  - pauli: dim must be a power of two; n words with i.i.d. fair mask bits
///    (the identity word included).
UnitaryEnsemble build_ensemble(Index dim, Index n, EnsembleKind kind, const SeededStream& stream);

/// Rebuilds a seeded ensemble with the given dense members (used when loading
/// a materialized file). Members are taken as-is.
UnitaryEnsemble restore_ensemble(Index dim, Index n, EnsembleKind kind, const SeededStream& stream,
                                 std::vector<ComplexMatrix> members);

/// max |U^dagger U - I|.
double unitarity_residual(const ComplexMatrix& u);

/// Unitary discrete Fourier transform F(j,k) = exp(2 pi i jk/d)/sqrt(d).
ComplexMatrix fourier_matrix(Index dim);

}  // namespace qrand
