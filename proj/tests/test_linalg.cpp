#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "openxxz/linalg.hpp"

using namespace openxxz;

namespace {

Matrix random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

// Determinant by plain Gaussian elimination with partial pivoting, kept
// independent of the Eigen-backed code under test.
Complex det_oracle(Matrix m) {
  const int n = static_cast<int>(m.rows());
  Complex det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k) {
      m.row(piv).swap(m.row(k));
      det = -det;
    }
    if (m(k, k) == Complex(0.0)) return 0.0;
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / m(k, k);
      m.row(i).tail(n - k) -= f * m.row(k).tail(n - k);
    }
  }
  return det;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("kron matches hand-computed 2x2 blocks") {
  Matrix a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, Complex(0.0, 1.0), 5.0, -1.0;
  Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 1) == Complex(0.0, 1.0));
  CHECK(k(1, 0) == Complex(5.0));
  CHECK(k(0, 3) == Complex(0.0, 2.0));
  CHECK(k(1, 2) == Complex(10.0));
  CHECK(k(3, 2) == Complex(20.0));
  CHECK(k(3, 3) == Complex(-4.0));
}

TEST_CASE("kron mixed-product property") {
  Matrix a = random_matrix(2, 11), b = random_matrix(3, 12);
  Matrix c = random_matrix(2, 13), d = random_matrix(3, 14);
  Matrix lhs = kron(a, b) * kron(c, d);
  Matrix rhs = kron(Matrix(a * c), Matrix(b * d));
  CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
}

TEST_CASE("embed1 places a one-site operator") {
  Matrix op(2, 2);
  op << 1.0, 2.0, 3.0, 4.0;
  std::vector<int> dims{3, 2, 2};
  Matrix id3 = Matrix::Identity(3, 3), id2 = Matrix::Identity(2, 2);
  CHECK((embed1(op, dims, 1) - kron(kron(id3, op), id2)).norm() == 0.0);
  CHECK((embed1(op, dims, 2) - kron(kron(id3, id2), op)).norm() == 0.0);
  Matrix op3 = random_matrix(3, 7);
  CHECK((embed1(op3, dims, 0) - kron(kron(op3, id2), id2)).norm() == 0.0);
}

TEST_CASE("embed2 places a two-site operator on adjacent and split slots") {
  std::vector<int> dims{2, 3, 2};
  Matrix op = random_matrix(6, 21);
  Matrix id2 = Matrix::Identity(2, 2), id3 = Matrix::Identity(3, 3);
  CHECK((embed2(op, dims, 0, 1) - kron(op, id2)).norm() == 0.0);
  CHECK((embed2(op, dims, 1, 2) - kron(id2, op)).norm() == 0.0);

  // Split pair (0,2): compare against a permutation-conjugated kron.
  Matrix op4 = random_matrix(4, 22);
  Matrix direct = embed2(op4, std::vector<int>{2, 3, 2}, 0, 2);
  Matrix big = Matrix::Zero(12, 12);
  for (int i0 = 0; i0 < 2; ++i0)
    for (int i1 = 0; i1 < 3; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j0 = 0; j0 < 2; ++j0)
          for (int j1 = 0; j1 < 3; ++j1)
            for (int j2 = 0; j2 < 2; ++j2) {
              if (i1 != j1) continue;
              big((i0 * 3 + i1) * 2 + i2, (j0 * 3 + j1) * 2 + j2) =
                  op4(i0 * 2 + i2, j0 * 2 + j2);
            }
  CHECK((direct - big).norm() == 0.0);
}

TEST_CASE("eig reconstructs, biorthogonality, trace and determinant") {
  Matrix a = random_matrix(8, 31);
  EigenSystem sys = eig(a);
  REQUIRE(!sys.pseudo_inverse_pairing);

  Matrix recon = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i)
    recon += sys.values(i) * sys.right.col(i) * sys.left.col(i).adjoint();
  CHECK((recon - a).norm() < 1e-10 * a.norm());

  Matrix gram = sys.left.adjoint() * sys.right;
  CHECK((gram - Matrix::Identity(8, 8)).norm() < 1e-10);

  Complex tr_sum = sys.values.sum();
  CHECK(std::abs(tr_sum - a.trace()) < 1e-10 * std::abs(a.trace()));
  Complex prod = 1.0;
  for (int i = 0; i < 8; ++i) prod *= sys.values(i);
  Complex det = det_oracle(a);
  CHECK(std::abs(prod - det) < 1e-8 * std::abs(det));
}

TEST_CASE("eig flags a defective matrix") {
  Matrix jordan(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  EigenSystem sys = eig(jordan);
  CHECK(sys.pseudo_inverse_pairing);
}

TEST_CASE("eig enforces the dimension cap") {
  Matrix a = Matrix::Identity(5, 5);
  CHECK_THROWS_AS(eig(a, 4), std::invalid_argument);
  CHECK_NOTHROW(eig(a, 5));
}

TEST_CASE("null_vector recovers a constructed kernel direction") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector k(4);
  for (int i = 0; i < 4; ++i) k(i) = Complex(dist(rng), dist(rng));
  k.normalize();
  Matrix a(6, 4);
  for (int r = 0; r < 6; ++r) {
    Vector row(4);
    for (int i = 0; i < 4; ++i) row(i) = Complex(dist(rng), dist(rng));
    // Make each row annihilate k under the bilinear pairing a.row * k.
    const Complex s = (row.array() * k.array()).sum();
    row -= s / k.squaredNorm() * k.conjugate();
    a.row(r) = row.transpose();
  }
  NullVector nv = null_vector(a);
  CHECK(nv.residual < 1e-13);
  CHECK((a * nv.v).norm() < 1e-13);
  CHECK(std::abs(std::abs(nv.v.dot(k)) - 1.0) < 1e-10);

  Matrix wide(3, 5);
  wide.setZero();
  CHECK_THROWS_AS(null_vector(wide), std::invalid_argument);
}

TEST_CASE("poly_roots matches planted roots") {
  std::vector<Complex> planted{
      Complex(0.3, 0.7), Complex(-1.2, 0.1), Complex(2.0, -0.5), Complex(0.0, 1.5)};
  std::vector<Complex> coeffs = poly_from_roots(planted);
  for (auto& c : coeffs) c *= Complex(0.4, -1.1);
  std::vector<Complex> found = poly_roots(coeffs);
  REQUIRE(found.size() == planted.size());
  for (Complex r : planted) {
    double best = 1e300;
    for (Complex f : found) best = std::min(best, std::abs(f - r));
    CHECK(best < 1e-10);
  }

  std::vector<Complex> lin{Complex(2.0, 0.0), Complex(0.0, 1.0)};
  auto lr = poly_roots(lin);
  REQUIRE(lr.size() == 1);
  CHECK(std::abs(lr[0] - Complex(0.0, 2.0)) < 1e-14);

  CHECK_THROWS_AS(poly_roots(std::vector<Complex>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(poly_roots(std::vector<Complex>{1.0, 2.0, 0.0}),
                  std::invalid_argument);
}

}
