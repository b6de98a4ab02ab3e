#pragma once

#include <vector>

#include "openxxz/types.hpp"

namespace openxxz {

// Kronecker product: out(i*rb+k, j*cb+l) = a(i,j) b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// op acting on slot p of a tensor product with the given slot dimensions.
Matrix embed1(const Matrix& op, const std::vector<int>& dims, int p);

// op acting on the ordered slot pair (p,q), p != q; op is indexed as
// (ip*dims[q]+iq, jp*dims[q]+jq).
Matrix embed2(const Matrix& op, const std::vector<int>& dims, int p, int q);

struct EigenSystem {
  Vector values;
  Matrix right;  // columns r_i, unit norm
  Matrix left;   // columns l_i with l_i^H r_j = delta_ij
  bool pseudo_inverse_pairing = false;
};

/*
 * Dense non-Hermitian eigendecomposition with a bi-orthonormal left/right
 * system.  Left vectors come from inverting the right eigenvector matrix;
 * if that matrix is numerically singular (defective input) the left set is
 * built from its pseudo-inverse and the flag is raised.
 */
EigenSystem eig(const Matrix& a, int max_dim = 256);

struct NullVector {
  Vector v;         // unit norm
  double residual;  // |A v|, the smallest singular value
};

// Best kernel vector of a tall system (rows >= cols) by SVD.
NullVector null_vector(const Matrix& a);

// Roots of sum_k coeffs[k] z^k via the companion matrix eigenproblem.
// coeffs is lowest power first, degree >= 1, leading coefficient nonzero.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

}  // namespace openxxz
