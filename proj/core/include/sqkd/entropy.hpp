#pragma once

#include <span>

#include "sqkd/linalg.hpp"

namespace sqkd {

/// Shannon entropy in bits, -sum p_i log2 p_i with 0 log 0 := 0.
/// Entries may dip to -1e-12 (clamped to zero); the list must sum to 1
/// within 1e-9. Violations throw std::invalid_argument.
double shannon_entropy(std::span<const double> probabilities);

/// Binary entropy h(x) = H(x, 1-x) in bits. x may exceed [0,1] by 1e-12.
double binary_entropy(double x);

/// -sum lambda_i log2 lambda_i over the spectrum of a unit-trace positive
/// semi-definite operator. Eigenvalues below -1e-10 are rejected; small
/// negative rounding noise is clamped to zero. No sum check.
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// Von Neumann entropy in bits of M normalized to unit trace. Requires M
/// positive semi-definite within 1e-10 and a strictly positive trace.
double von_neumann_entropy(const HermitianMatrix& m);

}  // namespace sqkd
