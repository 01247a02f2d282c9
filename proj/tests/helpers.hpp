// Oracle machinery shared by the test suites: a tiny dense complex matrix
// toolkit kept deliberately independent of the library's linear algebra, an
// explicit density-matrix evolution of one protocol iteration, and random
// state generators.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "sqkd/attack.hpp"
#include "sqkd/linalg.hpp"

namespace sqkd::test {

using CMat = std::vector<std::vector<Complex>>;

inline CMat zeros(std::size_t rows, std::size_t cols) {
  return CMat(rows, std::vector<Complex>(cols, Complex{0.0, 0.0}));
}

inline CMat identity_m(std::size_t n) {
  CMat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Complex{1.0, 0.0};
  return m;
}

inline CMat outer_m(const std::vector<Complex>& u) {
  CMat m = zeros(u.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) m[i][j] = u[i] * std::conj(u[j]);
  }
  return m;
}

inline CMat mul(const CMat& a, const CMat& b) {
  const std::size_t rows = a.size();
  const std::size_t inner_dim = b.size();
  const std::size_t cols = b[0].size();
  CMat m = zeros(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner_dim; ++k) {
      const Complex aik = a[i][k];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] += aik * b[k][j];
    }
  }
  return m;
}

inline CMat add(const CMat& a, const CMat& b) {
  CMat m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] += b[i][j];
  }
  return m;
}

inline CMat scale_m(Complex s, const CMat& a) {
  CMat m = a;
  for (auto& row : m) {
    for (auto& e : row) e *= s;
  }
  return m;
}

inline CMat adjoint(const CMat& a) {
  CMat m = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) m[j][i] = std::conj(a[i][j]);
  }
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  CMat m = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i) {
    for (std::size_t j = 0; j < ac; ++j) {
      for (std::size_t k = 0; k < br; ++k) {
        for (std::size_t l = 0; l < bc; ++l) m[i * br + k][j * bc + l] = a[i][j] * b[k][l];
      }
    }
  }
  return m;
}

inline Complex trace_m(const CMat& a) {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    }
  }
  return worst;
}

/// The 2x2 Kraus operators implied by an attack's ancilla vectors:
/// K_k = [[e0[k], e2[k]], [e1[k], e3[k]]] (row = output, column = input).
inline std::vector<CMat> kraus_operators(const AttackSpec& a) {
  std::vector<CMat> ops;
  ops.reserve(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    CMat op = zeros(2, 2);
    op[0][0] = a.e0[k];
    op[0][1] = a.e2[k];
    op[1][0] = a.e1[k];
    op[1][1] = a.e3[k];
    ops.push_back(std::move(op));
  }
  return ops;
}

inline CMat apply_kraus(const std::vector<CMat>& ops, const CMat& rho) {
  CMat out = zeros(rho.size(), rho.size());
  for (const CMat& k : ops) out = add(out, mul(k, mul(rho, adjoint(k))));
  return out;
}

struct QWeights {
  double q00, q01, q10, q11;
};

/// Acceptance weights from first principles: build the post-B state on
/// B x transit x ancilla, evolve with the probe unitary as an explicit
/// matrix, and read the four projector traces. Independent of every formula
/// in the attack module.
inline QWeights first_principles_weights(const AttackSpec& a) {
  const std::size_t d = a.dim();
  const std::size_t td = 2 * d;  // transit x ancilla

  // Probe unitary on transit x ancilla (layout t*d + k); only the columns
  // hit by an ancilla prepared in |chi_0> are needed.
  CMat u = zeros(td, td);
  for (std::size_t k = 0; k < d; ++k) {
    u[0 * d + k][0] = a.e0[k];
    u[1 * d + k][0] = a.e1[k];
    u[0 * d + k][d] = a.e2[k];
    u[1 * d + k][d] = a.e3[k];
  }

  const double x = std::sqrt(0.5 + a.bias);
  const double y = std::sqrt(0.5 - a.bias);
  std::vector<Complex> forward(td, Complex{0.0, 0.0});  // |e>_T |chi_0>_E
  forward[0] = Complex{x, 0.0};
  forward[d] = Complex{y, 0.0};
  std::vector<Complex> resend_zero(td, Complex{0.0, 0.0});  // |0>_T |chi_0>_E
  resend_zero[0] = Complex{1.0, 0.0};

  CMat p0_b = zeros(2, 2);
  p0_b[0][0] = Complex{1.0, 0.0};
  CMat p1_b = zeros(2, 2);
  p1_b[1][1] = Complex{1.0, 0.0};

  const CMat rho_init = add(kron(scale_m(Complex{0.5, 0.0}, p0_b), outer_m(forward)),
                            kron(scale_m(Complex{0.5, 0.0}, p1_b), outer_m(resend_zero)));
  const CMat u_full = kron(identity_m(2), u);
  const CMat rho_after = mul(u_full, mul(rho_init, adjoint(u_full)));

  CMat one_t = zeros(2, 2);
  one_t[1][1] = Complex{1.0, 0.0};
  CMat minus_t = zeros(2, 2);
  minus_t[0][0] = Complex{0.5, 0.0};
  minus_t[0][1] = Complex{-0.5, 0.0};
  minus_t[1][0] = Complex{-0.5, 0.0};
  minus_t[1][1] = Complex{0.5, 0.0};
  const CMat id_e = identity_m(d);

  const auto weight = [&](const CMat& b_proj, const CMat& t_proj) {
    return trace_m(mul(kron(b_proj, kron(t_proj, id_e)), rho_after)).real();
  };
  return QWeights{
      .q00 = weight(p0_b, one_t),
      .q01 = weight(p1_b, one_t),
      .q10 = weight(p0_b, minus_t),
      .q11 = weight(p1_b, minus_t),
  };
}

/// M -> U M U^dagger with U given by its columns.
inline HermitianMatrix conjugate_by_unitary(const HermitianMatrix& m,
                                            const std::vector<ComplexVec>& u_cols) {
  const std::size_t n = m.size();
  HermitianMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          acc += u_cols[k][i] * m.at(k, l) * std::conj(u_cols[l][j]);
        }
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

inline ComplexVec random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
  return v;
}

/// Random mixed state of unit trace.
inline HermitianMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  HermitianMatrix m(n);
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weights.push_back(unit(rng));
    total += weights.back();
  }
  for (std::size_t k = 0; k < n; ++k) {
    ComplexVec v = random_vector(n, rng);
    const double scale = weights[k] / (total * norm_squared(v));
    m.add_outer(v, scale);
  }
  return m;
}

}  // namespace sqkd::test
