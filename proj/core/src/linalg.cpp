#include "sqkd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqkd {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

ComplexVec& ComplexVec::operator+=(const ComplexVec& rhs) {
  require_same_dim(dim(), rhs.dim(), "ComplexVec::operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexVec& ComplexVec::operator-=(const ComplexVec& rhs) {
  require_same_dim(dim(), rhs.dim(), "ComplexVec::operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexVec& ComplexVec::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

Complex inner(const ComplexVec& u, const ComplexVec& v) {
  require_same_dim(u.dim(), v.dim(), "inner");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm_squared(const ComplexVec& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) acc += std::norm(v[i]);
  return acc;
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

HermitianMatrix HermitianMatrix::outer(const ComplexVec& v, double weight) {
  HermitianMatrix m(v.dim());
  m.add_outer(v, weight);
  return m;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
  require_same_dim(n_, rhs.n_, "HermitianMatrix::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) {
  for (auto& e : data_) e *= scale;
  return *this;
}

HermitianMatrix& HermitianMatrix::add_outer(const ComplexVec& v, double weight) {
  require_same_dim(n_, v.dim(), "HermitianMatrix::add_outer");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      data_[i * n_ + j] += weight * v[i] * std::conj(v[j]);
    }
  }
  return *this;
}

double HermitianMatrix::trace_real() const {
  double tr = 0.0;
  for (std::size_t i = 0; i < n_; ++i) tr += data_[i * n_ + i].real();
  return tr;
}

double HermitianMatrix::hermitian_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      worst = std::max(worst, std::abs(data_[i * n_ + j] - std::conj(data_[j * n_ + i])));
    }
  }
  return worst;
}

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kOffDiagonalTarget = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      sum += std::norm(a[p * n + q]);
    }
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

EigenDecomposition eigen_hermitian(const HermitianMatrix& m) {
  if (m.hermitian_residual() > kHermitianTolerance) {
    throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian (residual " +
                                std::to_string(m.hermitian_residual()) + ")");
  }
  const std::size_t n = m.size();

  // Work on the symmetrized copy so rounding asymmetry cannot accumulate.
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
    }
  }
  std::vector<Complex> v(n * n, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = Complex{1.0, 0.0};

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a, n) < kOffDiagonalTarget) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const Complex phase = apq / r;
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase_conj = std::conj(phase);

        // A <- J^dagger A J with J = I except
        // J[p][p]=c, J[p][q]=s, J[q][p]=-s*conj(phase), J[q][q]=c*conj(phase).
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = c * akp - s * phase_conj * akq;
          a[k * n + q] = s * akp + c * phase_conj * akq;
          a[p * n + k] = std::conj(a[k * n + p]);
          a[q * n + k] = std::conj(a[k * n + q]);
        }
        a[p * n + p] = Complex{c * c * app - 2.0 * s * c * r + s * s * aqq, 0.0};
        a[q * n + q] = Complex{s * s * app + 2.0 * s * c * r + c * c * aqq, 0.0};
        a[p * n + q] = Complex{0.0, 0.0};
        a[q * n + p] = Complex{0.0, 0.0};

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v[k * n + p];
          const Complex vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * phase_conj * vkq;
          v[k * n + q] = s * vkp + c * phase_conj * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a, n) >= kOffDiagonalTarget) {
    throw std::runtime_error("eigen_hermitian: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() > a[j * n + j].real();
  });

  EigenDecomposition result;
  result.eigenvalues.reserve(n);
  result.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    result.eigenvalues.push_back(a[k * n + k].real());
    ComplexVec column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = v[i * n + k];
    result.eigenvectors.push_back(std::move(column));
  }
  return result;
}

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m) {
  return eigen_hermitian(m).eigenvalues;
}

std::vector<ComplexVec> random_unitary_columns(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ComplexVec> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVec col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = Complex{gauss(rng), gauss(rng)};
    cols.push_back(std::move(col));
  }
  // Modified Gram-Schmidt, twice.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        const Complex overlap = inner(cols[k], cols[j]);
        cols[j] -= overlap * cols[k];
      }
      const double norm = std::sqrt(norm_squared(cols[j]));
      if (norm < 1e-12) {
        throw std::runtime_error("random_unitary_columns: degenerate draw");
      }
      cols[j] *= Complex{1.0 / norm, 0.0};
    }
  }
  return cols;
}

}  // namespace sqkd
