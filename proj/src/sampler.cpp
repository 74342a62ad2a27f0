#include "qrand/sampler.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qrand {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t root, const std::vector<std::uint64_t>& path)
{
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t step : path) h = splitmix64(h ^ splitmix64(step + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(path.size())};
  return std::mt19937_64(seq);
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Complex root_of_unity(Index k, Index d)
{
  // Reduce first so the angle stays in [0, 2 pi).
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

}  // namespace

SeededStream::SeededStream(std::uint64_t root_seed, std::vector<std::uint64_t> path)
    : root_seed_(root_seed), path_(std::move(path)), engine_(make_engine(root_seed_, path_))
{
}

SeededStream SeededStream::derive(std::uint64_t child) const
{
  std::vector<std::uint64_t> path = path_;
  path.push_back(child);
  return SeededStream(root_seed_, std::move(path));
}

double SeededStream::normal() { return normal_(engine_); }

double SeededStream::uniform() { return std::generate_canonical<double, 53>(engine_); }

std::uint64_t SeededStream::bits() { return engine_(); }

std::uint64_t SeededStream::index(std::uint64_t n)
{
  if (n == 0) throw DomainError("SeededStream::index: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

bool SeededStream::coin() { return (engine_() >> 63) != 0; }

ComplexMatrix ginibre(Index dim, SeededStream& stream)
{
  if (dim < 1) throw DimensionError("ginibre: dim must be positive");
  const double scale = std::sqrt(0.5);
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double re = stream.normal();
      const double im = stream.normal();
      g(i, j) = Complex(scale * re, scale * im);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(Index dim, SeededStream& stream)
{
  const ComplexMatrix g = ginibre(dim, stream);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const auto& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const Complex rkk = r(k, k);
    const double modulus = std::abs(rkk);
    if (modulus > 0.0) q.col(k) *= rkk / modulus;
  }
  return q;
}

PureState haar_pure_state(Index dim, SeededStream& stream)
{
  if (dim < 1) throw DimensionError("haar_pure_state: dim must be positive");
  const double scale = std::sqrt(0.5);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = stream.normal();
    const double im = stream.normal();
    v(i) = Complex(scale * re, scale * im);
  }
  return PureState::normalized(v);
}

ComplexMatrix MonomialUnitary::dense() const
{
  const Index d = dim();
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) u(target[k], k) = phase[k];
  return u;
}

ComplexVector MonomialUnitary::apply(const ComplexVector& v) const
{
  ComplexVector out(v.size());
  for (Index k = 0; k < dim(); ++k) out(target[k]) = phase[k] * v(k);
  return out;
}

ComplexVector MonomialUnitary::apply_adjoint(const ComplexVector& v) const
{
  ComplexVector out(v.size());
  for (Index k = 0; k < dim(); ++k) out(k) = std::conj(phase[k]) * v(target[k]);
  return out;
}

ComplexMatrix MonomialUnitary::conjugate(const ComplexMatrix& rho) const
{
  const Index d = dim();
  ComplexMatrix out(d, d);
  for (Index l = 0; l < d; ++l) {
    const Complex cl = std::conj(phase[l]);
    for (Index k = 0; k < d; ++k) out(target[k], target[l]) = phase[k] * rho(k, l) * cl;
  }
  return out;
}

ComplexMatrix MonomialUnitary::conjugate_adjoint(const ComplexMatrix& rho) const
{
  const Index d = dim();
  ComplexMatrix out(d, d);
  for (Index l = 0; l < d; ++l) {
    const Complex pl = phase[l];
    for (Index k = 0; k < d; ++k) out(k, l) = std::conj(phase[k]) * rho(target[k], target[l]) * pl;
  }
  return out;
}

MonomialUnitary weyl_monomial(Index dim, Index a, Index b)
{
  if (dim < 1) throw DimensionError("weyl_operator: dim must be positive");
  if (a < 0 || a >= dim || b < 0 || b >= dim) {
    throw DomainError("weyl_operator: exponents must satisfy 0 <= a, b < dim");
  }
  MonomialUnitary m;
  m.target.resize(static_cast<std::size_t>(dim));
  m.phase.resize(static_cast<std::size_t>(dim));
  // X^a Z^b |k> = exp(2 pi i b k/d) |k + a mod d>
  for (Index k = 0; k < dim; ++k) {
    m.target[k] = (k + a) % dim;
    m.phase[k] = root_of_unity(b * k, dim);
  }
  return m;
}

ComplexMatrix weyl_operator(Index dim, Index a, Index b) { return weyl_monomial(dim, a, b).dense(); }

PauliWord PauliWord::from_strings(std::string_view x, std::string_view z)
{
  if (x.size() != z.size() || x.empty()) {
    throw DimensionError("PauliWord: masks must be nonempty and of equal length");
  }
  PauliWord w;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if ((x[q] != '0' && x[q] != '1') || (z[q] != '0' && z[q] != '1')) {
      throw FormatError("PauliWord: masks must contain only '0' and '1'");
    }
    w.x_mask.push_back(x[q] == '1');
    w.z_mask.push_back(z[q] == '1');
  }
  return w;
}

MonomialUnitary pauli_monomial(const PauliWord& word)
{
  const Index qubits = word.qubit_count();
  if (qubits < 1 || static_cast<Index>(word.z_mask.size()) != qubits) {
    throw DimensionError("pauli_word_unitary: masks must be nonempty and of equal length");
  }
  if (qubits > kMaxPauliQubits) {
    throw DomainError("pauli_word_unitary: more than 12 qubits exceeds the 4096 size cap");
  }
  std::uint32_t xbits = 0;
  std::uint32_t zbits = 0;
  for (Index q = 0; q < qubits; ++q) {
    const std::uint32_t bit = 1u << (qubits - 1 - q);
    if (word.x_mask[q]) xbits |= bit;
    if (word.z_mask[q]) zbits |= bit;
  }
  const Index dim = Index{1} << qubits;
  MonomialUnitary m;
  m.target.resize(static_cast<std::size_t>(dim));
  m.phase.resize(static_cast<std::size_t>(dim));
  for (Index k = 0; k < dim; ++k) {
    const auto kk = static_cast<std::uint32_t>(k);
    m.target[k] = static_cast<Index>(kk ^ xbits);
    m.phase[k] = (std::popcount(kk & zbits) % 2 == 0) ? Complex(1.0) : Complex(-1.0);
  }
  return m;
}

ComplexMatrix pauli_word_unitary(const PauliWord& word) { return pauli_monomial(word).dense(); }

std::string_view to_string(EnsembleKind kind)
{
  switch (kind) {
    case EnsembleKind::haar: return "haar";
    case EnsembleKind::weyl: return "weyl";
    case EnsembleKind::pauli: return "pauli";
    case EnsembleKind::explicit_members: return "explicit";
  }
  return "explicit";
}

EnsembleKind parse_ensemble_kind(std::string_view name)
{
  if (name == "haar") return EnsembleKind::haar;
  if (name == "weyl") return EnsembleKind::weyl;
  if (name == "pauli") return EnsembleKind::pauli;
  if (name == "explicit") return EnsembleKind::explicit_members;
  throw DomainError("unknown ensemble kind '" + std::string(name) + "'");
}

UnitaryEnsemble UnitaryEnsemble::from_members(std::vector<ComplexMatrix> members)
{
  if (members.empty()) throw DimensionError("UnitaryEnsemble: no members");
  UnitaryEnsemble e;
  e.dim_ = members.front().rows();
  e.size_ = static_cast<Index>(members.size());
  for (const auto& u : members) {
    if (u.rows() != e.dim_ || u.cols() != e.dim_) {
      throw DimensionError("UnitaryEnsemble: members must share one square dimension");
    }
    if (unitarity_residual(u) > 1e-10) throw ContractError("UnitaryEnsemble: member is not unitary");
  }
  e.dense_ = std::move(members);
  return e;
}

void UnitaryEnsemble::check_index(Index j) const
{
  if (j < 0 || j >= size_) {
    throw std::out_of_range("UnitaryEnsemble: member " + std::to_string(j) + " out of range [0, " +
                            std::to_string(size_) + ")");
  }
}

ComplexMatrix UnitaryEnsemble::member(Index j) const
{
  check_index(j);
  if (!dense_.empty()) return dense_[j];
  if (!monomials_.empty()) return monomials_[j].dense();
  SeededStream child = seed_->derive(static_cast<std::uint64_t>(j));
  return haar_unitary(dim_, child);
}

ComplexVector UnitaryEnsemble::apply(Index j, const ComplexVector& v) const
{
  check_index(j);
  if (!dense_.empty()) return dense_[j] * v;
  if (!monomials_.empty()) return monomials_[j].apply(v);
  return member(j) * v;
}

ComplexVector UnitaryEnsemble::apply_adjoint(Index j, const ComplexVector& v) const
{
  check_index(j);
  if (!dense_.empty()) return dense_[j].adjoint() * v;
  if (!monomials_.empty()) return monomials_[j].apply_adjoint(v);
  return member(j).adjoint() * v;
}

ComplexMatrix UnitaryEnsemble::conjugate(Index j, const ComplexMatrix& rho) const
{
  check_index(j);
  if (!monomials_.empty()) return monomials_[j].conjugate(rho);
  const ComplexMatrix u = dense_.empty() ? member(j) : dense_[j];
  return u * rho * u.adjoint();
}

ComplexMatrix UnitaryEnsemble::conjugate_adjoint(Index j, const ComplexMatrix& rho) const
{
  check_index(j);
  if (!monomials_.empty()) return monomials_[j].conjugate_adjoint(rho);
  const ComplexMatrix u = dense_.empty() ? member(j) : dense_[j];
  return u.adjoint() * rho * u;
}

UnitaryEnsemble build_ensemble(Index dim, Index n, EnsembleKind kind, const SeededStream& stream)
{
  if (dim < 1 || n < 1) throw DimensionError("build_ensemble: dim and n must be positive");
  UnitaryEnsemble e;
  e.dim_ = dim;
  e.size_ = n;
  e.kind_ = kind;
  e.seed_ = stream;
  switch (kind) {
    case EnsembleKind::haar: {
      const double entries = static_cast<double>(n) * static_cast<double>(dim) * static_cast<double>(dim);
      if (entries <= kMaterializeLimit) {
        e.dense_.reserve(static_cast<std::size_t>(n));
        for (Index j = 0; j < n; ++j) {
          SeededStream child = stream.derive(static_cast<std::uint64_t>(j));
          e.dense_.push_back(haar_unitary(dim, child));
        }
      }
      break;
    }
    case EnsembleKind::weyl: {
      e.monomials_.reserve(static_cast<std::size_t>(n));
      const bool full = (n == dim * dim);
      for (Index j = 0; j < n; ++j) {
        Index a = j / dim;
        Index b = j % dim;
        if (!full) {
          SeededStream child = stream.derive(static_cast<std::uint64_t>(j));
          a = static_cast<Index>(child.index(static_cast<std::uint64_t>(dim)));
          b = static_cast<Index>(child.index(static_cast<std::uint64_t>(dim)));
        }
        e.monomials_.push_back(weyl_monomial(dim, a, b));
      }
      break;
    }
    case EnsembleKind::pauli: {
      if (!is_power_of_two(dim)) {
        throw DomainError("build_ensemble: pauli kind requires dim to be a power of 2");
      }
      const Index qubits = std::countr_zero(static_cast<std::uint64_t>(dim));
      if (qubits == 0) {
        for (Index j = 0; j < n; ++j) e.monomials_.push_back(MonomialUnitary{{0}, {Complex(1.0)}});
        break;
      }
      e.monomials_.reserve(static_cast<std::size_t>(n));
      for (Index j = 0; j < n; ++j) {
        SeededStream child = stream.derive(static_cast<std::uint64_t>(j));
        PauliWord word;
        for (Index q = 0; q < qubits; ++q) word.x_mask.push_back(child.coin());
        for (Index q = 0; q < qubits; ++q) word.z_mask.push_back(child.coin());
        e.monomials_.push_back(pauli_monomial(word));
      }
      break;
    }
    case EnsembleKind::explicit_members:
      throw DomainError("build_ensemble: explicit ensembles are built with from_members");
  }
  return e;
}

UnitaryEnsemble restore_ensemble(Index dim, Index n, EnsembleKind kind, const SeededStream& stream,
                                 std::vector<ComplexMatrix> members)
{
  if (static_cast<Index>(members.size()) != n) {
    throw DimensionError("restore_ensemble: member count mismatch");
  }
  UnitaryEnsemble e;
  e.dim_ = dim;
  e.size_ = n;
  e.kind_ = kind;
  e.seed_ = stream;
  e.dense_ = std::move(members);
  return e;
}

double unitarity_residual(const ComplexMatrix& u)
{
  if (u.rows() != u.cols()) throw DimensionError("unitarity_residual: matrix not square");
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix fourier_matrix(Index dim)
{
  ComplexMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index j = 0; j < dim; ++j) {
    for (Index k = 0; k < dim; ++k) f(j, k) = norm * root_of_unity(j * k, dim);
  }
  return f;
}

}  // namespace qrand
