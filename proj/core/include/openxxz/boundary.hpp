#pragma once

#include "openxxz/linalg.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

struct BoundaryParams {
  Complex alpha_minus;
  Complex beta_minus;
  Complex theta_minus;
  Complex alpha_plus;
  Complex beta_plus;
  Complex theta_plus;
};

// 2x2 reflection matrix with parameters (alpha-, beta-, theta-).
Matrix kminus_fundamental(Complex u, Complex eta, const BoundaryParams& p);

// Reduced (2j+1)-dim fused K- matrix.
Matrix fused_kminus(Spin j, Complex u, Complex eta, const BoundaryParams& p);

// Fused K matrices on the full 2^(2j) qubit product space, before any
// basis reduction.
Matrix fused_kminus_big(Spin j, Complex u, Complex eta,
                        const BoundaryParams& p);
Matrix fused_kplus_big(Spin j, Complex u, Complex eta,
                       const BoundaryParams& p);

// Normalization factor of K+; the empty product at j=1/2 is 1.
Complex kplus_norm(Spin j, Complex u, Complex eta);

// Reduced fused K+ matrix: K-(-u-eta) under the plus-side substitution,
// divided by kplus_norm. Throws when the normalization vanishes.
Matrix kplus(Spin j, Complex u, Complex eta, const BoundaryParams& p);

// Relative residual of the reflection equation on the reduced (j,s) space.
double check_bybe(Spin j, Spin s, Complex u, Complex v, Complex eta,
                  const BoundaryParams& p);

}  // namespace openxxz
