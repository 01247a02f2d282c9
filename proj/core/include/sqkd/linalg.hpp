#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

namespace sqkd {

using Complex = std::complex<double>;

/// Complex vector of fixed dimension. The dimension is set at construction;
/// all arithmetic requires matching dimensions and throws otherwise.
class ComplexVec {
 public:
  explicit ComplexVec(std::size_t dim) : entries_(dim, Complex{0.0, 0.0}) {}
  ComplexVec(std::initializer_list<Complex> entries) : entries_(entries) {}
  explicit ComplexVec(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  std::size_t dim() const { return entries_.size(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexVec& operator+=(const ComplexVec& rhs);
  ComplexVec& operator-=(const ComplexVec& rhs);
  ComplexVec& operator*=(Complex scale);

  friend ComplexVec operator+(ComplexVec lhs, const ComplexVec& rhs) { return lhs += rhs; }
  friend ComplexVec operator-(ComplexVec lhs, const ComplexVec& rhs) { return lhs -= rhs; }
  friend ComplexVec operator*(Complex scale, ComplexVec v) { return v *= scale; }

 private:
  std::vector<Complex> entries_;
};

/// <u|v>, conjugate-linear in the first argument.
Complex inner(const ComplexVec& u, const ComplexVec& v);

/// <v|v> as a real number.
double norm_squared(const ComplexVec& v);

/// Dense Hermitian matrix. Construction from outer products keeps the
/// Hermitian residual max|M - M^dagger| at zero; hand-filled entries are
/// checked against a 1e-12 residual by the eigensolver.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * n, Complex{0.0, 0.0}) {}

  static HermitianMatrix identity(std::size_t n);
  /// weight * |v><v|
  static HermitianMatrix outer(const ComplexVec& v, double weight = 1.0);

  std::size_t size() const { return n_; }

  Complex& at(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Complex& at(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  HermitianMatrix& operator+=(const HermitianMatrix& rhs);
  HermitianMatrix& operator*=(double scale);
  friend HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) {
    return lhs += rhs;
  }
  friend HermitianMatrix operator*(double scale, HermitianMatrix m) { return m *= scale; }

  /// Accumulates weight * |v><v| in place.
  HermitianMatrix& add_outer(const ComplexVec& v, double weight);

  double trace_real() const;
  /// max_ij |M(i,j) - conj(M(j,i))|
  double hermitian_residual() const;

 private:
  std::size_t n_;
  std::vector<Complex> data_;  // row major
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;        // sorted descending
  std::vector<ComplexVec> eigenvectors;   // eigenvectors[k] pairs with eigenvalues[k]
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Converges when the off-diagonal Frobenius norm drops below 1e-14; gives up
/// (std::runtime_error) after 100 sweeps. Inputs whose Hermitian residual
/// exceeds 1e-12 are rejected with std::invalid_argument.
EigenDecomposition eigen_hermitian(const HermitianMatrix& m);

/// Eigenvalues only, sorted descending.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m);

/// Columns of a Haar-like random unitary: a matrix of iid standard complex
/// Gaussians, orthonormalized by modified Gram-Schmidt with one
/// re-orthogonalization pass.
std::vector<ComplexVec> random_unitary_columns(std::size_t n, std::mt19937_64& rng);

}  // namespace sqkd
