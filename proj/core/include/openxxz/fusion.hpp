#pragma once

#include <vector>

#include "openxxz/linalg.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

// Unitarity scalar: R(u) R(-u) = -xi(u) * I.
Complex xi(Complex u, Complex eta);

// 4x4 two-qubit R-matrix with sh(u+eta) corners and sh(u)/sh(eta) middle.
Matrix fundamental_r(Complex u, Complex eta);

// Transposition of qubit slots p and q on n qubits (slot 0 = leftmost factor).
Matrix perm2(int n_qubits, int p, int q);

// Orthogonal projector onto the totally symmetric subspace of n qubits,
// built from the ordered product (1/n!) prod_k (sum_{l<=k} P_{lk}).
Matrix symmetrizer(int n);

// Isometry from the (2j+1)-dim reduced space into (C^2)^{2j}; columns are
// uniform superpositions at fixed weight, all-up state first.
Matrix fused_space(Spin j);

// Projected product of fundamental R factors on (C^2)^{2j} x (C^2)^{2s}.
Matrix fused_r_big(Spin ja, Spin jb, Complex u, Complex eta);

// Reduced (2j+1)(2s+1)-dim fused R-matrix.
Matrix fused_r(Spin ja, Spin jb, Complex u, Complex eta);

// Relative residual of the Yang-Baxter equation on the reduced triple space.
double check_ybe(Spin j1, Spin j2, Spin j3, Complex u, Complex v, Complex eta);

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Coefficients a_0..a_[n/2] of the symmetrizer expansion in commuting
// permutation products.
std::vector<Rational> expansion_coeffs(int n);

// Frobenius residual of the expansion against symmetrizer(n); n <= 6.
double verify_fund_exp(int n);

// Frobenius residual of the projector sandwich identity on 2j qubits.
// j in {3/2, 2, 5/2} uses explicit X operators; other j <= 3 solves a
// least-squares existence problem for the X's.
double verify_conjecture(Spin j);

}  // namespace openxxz
