#pragma once

// Reference implementations used only as test oracles. They avoid Eigen's
// decompositions entirely: plain loops over std::vector storage.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qrand/matcore.hpp"

namespace oracle {

using qrand::Complex;
using qrand::ComplexMatrix;
using qrand::Index;

/// Eigenvalues of a real symmetric matrix (row-major n x n) by cyclic Jacobi
/// rotations, sorted ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n)
{
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

/// Eigenvalues of a Hermitian matrix through the real embedding
/// [[Re, -Im], [Im, Re]], whose spectrum repeats each eigenvalue twice.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h)
{
  const auto n = static_cast<std::size_t>(h.rows());
  std::vector<double> big(4 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = h(static_cast<Index>(i), static_cast<Index>(j));
      big[i * 2 * n + j] = z.real();
      big[i * 2 * n + j + n] = -z.imag();
      big[(i + n) * 2 * n + j] = z.imag();
      big[(i + n) * 2 * n + j + n] = z.real();
    }
  }
  const std::vector<double> doubled = jacobi_eigenvalues(big, 2 * n);
  std::vector<double> out;
  for (std::size_t k = 0; k < doubled.size(); k += 2) out.push_back(doubled[k]);
  return out;
}

inline double trace_norm(const ComplexMatrix& h)
{
  double total = 0.0;
  for (double x : hermitian_eigenvalues(h)) total += std::abs(x);
  return total;
}

inline double operator_norm(const ComplexMatrix& h)
{
  double best = 0.0;
  for (double x : hermitian_eigenvalues(h)) best = std::max(best, std::abs(x));
  return best;
}

inline double entropy_bits(const ComplexMatrix& rho)
{
  double total = 0.0;
  for (double x : hermitian_eigenvalues(rho)) {
    if (x > 1e-15) total -= x * std::log2(x);
  }
  return total;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < b.rows(); ++k)
      for (Index j = 0; j < a.cols(); ++j)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr_B by index summation: out(i, j) = sum_k m(i*db + k, j*db + k).
inline ComplexMatrix trace_out_b(const ComplexMatrix& m, Index da, Index db)
{
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

/// Tr_A by index summation: out(k, l) = sum_i m(i*db + k, i*db + l).
inline ComplexMatrix trace_out_a(const ComplexMatrix& m, Index da, Index db)
{
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

/// Naive R(rho) = (1/n) sum_j U_j rho U_j^dagger from dense members.
inline ComplexMatrix twirl(const std::vector<ComplexMatrix>& members, const ComplexMatrix& rho)
{
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& u : members) out += u * rho * u.adjoint();
  return out / static_cast<double>(members.size());
}

/// Random Hermitian matrix from a fixed linear congruential sequence.
inline ComplexMatrix lcg_hermitian(Index n, unsigned seed)
{
  unsigned long long state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  auto next = [&state] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  };
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(next(), next());
  return (m + m.adjoint()) / 2.0;
}

}  // namespace oracle
