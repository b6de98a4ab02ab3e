#include "openxxz/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace openxxz {

Complex xi(Complex u, Complex eta) { return sh(u + eta) * sh(u - eta); }

Matrix fundamental_r(Complex u, Complex eta) {
  Matrix r = Matrix::Zero(4, 4);
  r(0, 0) = r(3, 3) = sh(u + eta);
  r(1, 1) = r(2, 2) = sh(u);
  r(1, 2) = r(2, 1) = sh(eta);
  return r;
}

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Applies the qubit-slot permutation perm (image convention: slot i carries
// what slot perm[i] carried) as a 2^n matrix.
Matrix qubit_perm_op(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const int d = 1 << n;
  Matrix out = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    int row = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = (col >> (n - 1 - perm[i])) & 1;
      row |= bit << (n - 1 - i);
    }
    out(row, col) = 1.0;
  }
  return out;
}

long long binom(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

Matrix perm2(int n_qubits, int p, int q) {
  if (p < 0 || q < 0 || p >= n_qubits || q >= n_qubits || p == q)
    throw std::invalid_argument("perm2: bad slot pair");
  std::vector<int> perm(n_qubits);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[p], perm[q]);
  return qubit_perm_op(perm);
}

Matrix symmetrizer(int n) {
  if (n < 1) throw std::invalid_argument("symmetrizer: n must be >= 1");
  const int d = 1 << n;
  Matrix acc = Matrix::Identity(d, d);
  for (int k = 1; k < n; ++k) {
    Matrix factor = Matrix::Identity(d, d);
    for (int l = 0; l < k; ++l) factor += perm2(n, l, k);
    acc = acc * factor;
  }
  return acc / static_cast<double>(factorial(n));
}

Matrix fused_space(Spin j) {
  const int n = j.qubits();
  const int d = 1 << n;
  Matrix w = Matrix::Zero(d, n + 1);
  for (int idx = 0; idx < d; ++idx) {
    const int m = __builtin_popcount(static_cast<unsigned>(idx));
    w(idx, m) = 1.0 / std::sqrt(static_cast<double>(binom(n, m)));
  }
  return w;
}

Matrix fused_r_big(Spin ja, Spin jb, Complex u, Complex eta) {
  const int na = ja.qubits(), nb = jb.qubits();
  const std::vector<int> dims(na + nb, 2);
  const Matrix pa = kron(symmetrizer(na), Matrix::Identity(1 << nb, 1 << nb));
  const Matrix pb = kron(Matrix::Identity(1 << na, 1 << na), symmetrizer(nb));
  Matrix acc = pa * pb;
  for (int k = 1; k <= na; ++k)
    for (int l = 1; l <= nb; ++l) {
      const Complex arg = u + (static_cast<double>(k + l) - ja.value() -
                               jb.value() - 1.0) * eta;
      acc = acc * embed2(fundamental_r(arg, eta), dims, k - 1, na + l - 1);
    }
  acc = acc * pa * pb;
  return acc;
}

Matrix fused_r(Spin ja, Spin jb, Complex u, Complex eta) {
  const Matrix w = kron(fused_space(ja), fused_space(jb));
  return w.adjoint() * fused_r_big(ja, jb, u, eta) * w;
}

double check_ybe(Spin j1, Spin j2, Spin j3, Complex u, Complex v, Complex eta) {
  const std::vector<int> dims{j1.dim(), j2.dim(), j3.dim()};
  const Matrix r12 = embed2(fused_r(j1, j2, u - v, eta), dims, 0, 1);
  const Matrix r13 = embed2(fused_r(j1, j3, u, eta), dims, 0, 2);
  const Matrix r23 = embed2(fused_r(j2, j3, v, eta), dims, 1, 2);
  const Matrix lhs = r12 * r13 * r23;
  const Matrix rhs = r23 * r13 * r12;
  return (lhs - rhs).norm() / lhs.norm();
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(std::abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
  return Rational(num * o.den, den * o.num);
}

std::vector<Rational> expansion_coeffs(int n) {
  if (n < 1) throw std::invalid_argument("expansion_coeffs: n must be >= 1");
  std::vector<Rational> a{Rational(1)};
  for (int m = 1; m < n; ++m) {
    // Step from level m to level m+1.
    auto get = [&](int l) -> Rational {
      return (l >= 0 && l < static_cast<int>(a.size())) ? a[l] : Rational(0);
    };
    const int half_next = (m + 1) / 2;
    std::vector<Rational> b(half_next + 1, Rational(0));
    const long long m1 = m + 1;
    b[0] = (get(0) - Rational(factorial(m)) * get(1)) / Rational(m1);
    if (half_next >= 1)
      b[1] = (get(0) / Rational(factorial(m - 1)) + Rational(4) * get(1) -
              Rational(2) * get(2)) /
             Rational(m1 * m1);
    for (int l = 2; l <= std::min(half_next, m / 2); ++l)
      b[l] = (Rational(3 * l + 1) * get(l) - Rational(l + 1) * get(l + 1) +
              Rational(m + 2 - 2 * l) * get(l - 1)) /
             Rational(m1 * m1);
    if (m / 2 + 1 <= half_next)
      b[m / 2 + 1] = Rational(m - 2 * (m / 2)) * get(m / 2) / Rational(m1 * m1);
    a = std::move(b);
  }
  return a;
}

double verify_fund_exp(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("verify_fund_exp: n out of supported range 1..6");
  const int d = 1 << n;
  const std::vector<Rational> a = expansion_coeffs(n);
  Matrix approx = a[0].value() * Matrix::Identity(d, d);
  if (n >= 2) {
    std::vector<Matrix> sums(a.size(), Matrix::Zero(d, d));
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (size_t l = 1; l < a.size(); ++l) {
        std::swap(perm[sigma[2 * l - 2]], perm[sigma[2 * l - 1]]);
        sums[l] += qubit_perm_op(perm);
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    for (size_t l = 1; l < a.size(); ++l) approx += a[l].value() * sums[l];
  }
  return (symmetrizer(n) - approx).norm();
}

namespace {

struct XTerm {
  Rational coeff;
  std::vector<std::pair<int, int>> pairs;  // 1-based site labels
};

Matrix build_x(int n, const std::vector<XTerm>& terms) {
  const int d = 1 << n;
  Matrix x = Matrix::Zero(d, d);
  for (const XTerm& t : terms) {
    Matrix m = Matrix::Identity(d, d);
    for (auto [p, q] : t.pairs) m = m * perm2(n, p - 1, q - 1);
    x += t.coeff.value() * m;
  }
  return x;
}

std::vector<Matrix> explicit_x(int twice_j) {
  using P = std::vector<std::pair<int, int>>;
  switch (twice_j) {
    case 3:
      return {
          build_x(3, {{{1, 3}, P{{2, 3}}}, {{-1, 3}, P{{1, 3}}}}),
          build_x(3, {{{1, 3}, P{{1, 2}}}, {{-1, 3}, P{{1, 3}}}}),
      };
    case 4:
      return {
          build_x(4, {{{1, 12}, P{{2, 3}}},
                      {{-1, 12}, P{{1, 3}}},
                      {{1, 12}, P{{2, 4}}},
                      {{-1, 12}, P{{1, 4}}},
                      {{2, 12}, P{{1, 3}, {2, 4}}},
                      {{-2, 12}, P{{1, 4}, {2, 3}}}}),
          build_x(4, {{{1, 6}, P{{1, 3}}},
                      {{-1, 6}, P{{1, 2}}},
                      {{1, 6}, P{{3, 4}}},
                      {{-1, 6}, P{{2, 4}}},
                      {{2, 6}, P{{1, 2}, {3, 4}}},
                      {{-2, 6}, P{{1, 3}, {2, 4}}}}),
          build_x(4, {{{1, 4}, P{{1, 3}}},
                      {{-1, 4}, P{{1, 4}}},
                      {{1, 4}, P{{2, 3}}},
                      {{-1, 4}, P{{2, 4}}}}),
      };
    case 5:
      return {
          build_x(5, {{{3, 5}, P{{1, 5}, {1, 4}}},
                      {{1, 1}, P{{1, 5}, {2, 4}}},
                      {{-2, 5}, P{{1, 5}, {3, 4}}},
                      {{1, 2}, P{{3, 5}, {1, 4}}},
                      {{-1, 10}, P{{3, 5}, {1, 3}}},
                      {{-9, 10}, P{{4, 5}, {1, 4}}},
                      {{-1, 6}, P{{4, 5}, {1, 3}}},
                      {{4, 15}, P{{1, 4}, {1, 3}}}}),
          build_x(5, {{{1, 5}, P{{1, 5}, {2, 4}}},
                      {{1, 15}, P{{1, 5}, {1, 3}}},
                      {{-2, 5}, P{{2, 5}, {1, 4}}},
                      {{2, 5}, P{{2, 5}, {2, 4}}},
                      {{4, 15}, P{{2, 5}, {3, 4}}},
                      {{-2, 15}, P{{2, 5}, {1, 3}}},
                      {{-7, 15}, P{{4, 5}, {2, 4}}},
                      {{-1, 15}, P{{4, 5}, {1, 3}}},
                      {{2, 15}, P{{1, 4}, {1, 3}}}}),
          build_x(5, {{{3, 10}, P{{1, 5}, {1, 4}}},
                      {{-3, 10}, P{{1, 5}, {2, 4}}},
                      {{1, 10}, P{{2, 5}, {1, 4}}},
                      {{3, 10}, P{{2, 5}, {2, 4}}},
                      {{-2, 5}, P{{3, 5}, {1, 4}}},
                      {{-1, 5}, P{{3, 5}, {3, 4}}},
                      {{-2, 5}, P{{3, 5}, {1, 2}}}}),
          build_x(5, {{{-4, 5}, P{{1, 5}, {1, 4}}},
                      {{2, 5}, P{{1, 5}, {2, 4}}},
                      {{2, 5}, P{{1, 5}, {3, 4}}},
                      {{-2, 5}, P{{1, 5}, {2, 3}}}}),
      };
    default:
      throw std::invalid_argument("explicit_x: no tabulated X operators");
  }
}

}  // namespace

double verify_conjecture(Spin j) {
  const int n = j.qubits();
  if (n < 3 || n > 6)
    throw std::invalid_argument("verify_conjecture: 2j out of supported range 3..6");
  const int d = 1 << n;
  const std::vector<int> dims(n, 2);

  const Matrix pair_plus4 = 0.5 * (Matrix::Identity(4, 4) + perm2(2, 0, 1));
  const Matrix pair_minus4 = Matrix::Identity(4, 4) - pair_plus4;

  const Matrix p_plus_head =
      kron(symmetrizer(n - 1), Matrix::Identity(2, 2));
  const Matrix p_minus_all = Matrix::Identity(d, d) - symmetrizer(n);
  const Matrix lhs = p_plus_head * p_minus_all * p_plus_head;
  const Matrix base = kron(symmetrizer(n - 2), Matrix::Identity(4, 4)) *
                      embed2(pair_minus4, dims, n - 2, n - 1);

  const Matrix target = lhs - base;

  std::vector<Matrix> plus_k, minus_k;
  for (int k = 0; k + 1 < n; ++k) {
    plus_k.push_back(embed2(pair_plus4, dims, k, k + 1));
    minus_k.push_back(embed2(pair_minus4, dims, k, k + 1));
  }

  if (n <= 5) {
    const std::vector<Matrix> xs = explicit_x(n);
    Matrix correction = Matrix::Zero(d, d);
    for (int k = 0; k + 1 < n; ++k)
      correction += plus_k[k] * xs[k] * minus_k[k];
    return (target - correction).norm();
  }

  // Least-squares existence mode. Products of up to two transpositions do
  // not span enough of the group algebra at 2j=6, so the X ansatz is the
  // full span of permutation operators, rank-reduced before the solve.
  Eigen::MatrixXd images(d * d, factorial(n));
  {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    int col = 0;
    do {
      const Matrix op = qubit_perm_op(sigma);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) images(r * d + c, col) = op(r, c).real();
      ++col;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(images);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  const Eigen::MatrixXd q_thin =
      qr.householderQ() * Eigen::MatrixXd::Identity(d * d, rank);

  const int n_x = n - 1;
  Eigen::MatrixXd a(d * d, n_x * rank);
  Eigen::VectorXd rhs(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) rhs(r * d + c) = target(r, c).real();
  for (int k = 0; k < n_x; ++k)
    for (int i = 0; i < rank; ++i) {
      Matrix b(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) b(r, c) = q_thin(r * d + c, i);
      const Matrix m = plus_k[k] * b * minus_k[k];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r * d + c, k * rank + i) = m(r, c).real();
    }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd x = cod.solve(rhs);
  return (a * x - rhs).norm();
}

}  // namespace openxxz
