#include "openxxz/boundary.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "openxxz/fusion.hpp"

namespace openxxz {

Matrix kminus_fundamental(Complex u, Complex, const BoundaryParams& p) {
  Matrix k(2, 2);
  const Complex diag_even = sh(p.alpha_minus) * ch(p.beta_minus) * ch(u);
  const Complex diag_odd = ch(p.alpha_minus) * sh(p.beta_minus) * sh(u);
  k(0, 0) = 2.0 * (diag_even + diag_odd);
  k(1, 1) = 2.0 * (diag_even - diag_odd);
  k(0, 1) = std::exp(p.theta_minus) * sh(2.0 * u);
  k(1, 0) = std::exp(-p.theta_minus) * sh(2.0 * u);
  return k;
}

Matrix fused_kminus_big(Spin j, Complex u, Complex eta,
                        const BoundaryParams& p) {
  const int n = j.qubits();
  const std::vector<int> dims(n, 2);
  const Matrix proj = symmetrizer(n);
  Matrix acc = proj;
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= k - 1; ++l) {
      const Complex arg = 2.0 * u + static_cast<double>(k + l - n - 1) * eta;
      acc = acc * embed2(fundamental_r(arg, eta), dims, l - 1, k - 1);
    }
    const Complex karg = u + (static_cast<double>(k) - j.value() - 0.5) * eta;
    acc = acc * embed1(kminus_fundamental(karg, eta, p), dims, k - 1);
  }
  return acc * proj;
}

Matrix fused_kminus(Spin j, Complex u, Complex eta, const BoundaryParams& p) {
  if (j.twice == 1) return kminus_fundamental(u, eta, p);
  const Matrix w = fused_space(j);
  return w.adjoint() * fused_kminus_big(j, u, eta, p) * w;
}

Complex kplus_norm(Spin j, Complex u, Complex eta) {
  Complex f = 1.0;
  for (int l = 1; l <= j.twice - 1; ++l)
    for (int k = 1; k <= l; ++k)
      f *= -xi(2.0 * u + static_cast<double>(l + k + 1 - j.twice) * eta, eta);
  return f;
}

Matrix kplus(Spin j, Complex u, Complex eta, const BoundaryParams& p) {
  const Complex f = kplus_norm(j, u, eta);
  if (std::abs(f) < 1e-300) {
    std::ostringstream msg;
    msg << "kplus: normalization vanishes at u=(" << u.real() << ","
        << u.imag() << ")";
    throw std::domain_error(msg.str());
  }
  BoundaryParams sub = p;
  sub.alpha_minus = -p.alpha_plus;
  sub.beta_minus = -p.beta_plus;
  sub.theta_minus = p.theta_plus;
  return fused_kminus(j, -u - eta, eta, sub) / f;
}

Matrix fused_kplus_big(Spin j, Complex u, Complex eta,
                       const BoundaryParams& p) {
  const Complex f = kplus_norm(j, u, eta);
  if (std::abs(f) < 1e-300) {
    std::ostringstream msg;
    msg << "fused_kplus_big: normalization vanishes at u=(" << u.real() << ","
        << u.imag() << ")";
    throw std::domain_error(msg.str());
  }
  BoundaryParams sub = p;
  sub.alpha_minus = -p.alpha_plus;
  sub.beta_minus = -p.beta_plus;
  sub.theta_minus = p.theta_plus;
  return fused_kminus_big(j, -u - eta, eta, sub) / f;
}

double check_bybe(Spin j, Spin s, Complex u, Complex v, Complex eta,
                  const BoundaryParams& p) {
  const std::vector<int> dims{j.dim(), s.dim()};
  const Matrix r_uv = embed2(fused_r(j, s, u - v, eta), dims, 0, 1);
  const Matrix r_uv_sum = embed2(fused_r(j, s, u + v, eta), dims, 0, 1);
  const Matrix ka = embed1(fused_kminus(j, u, eta, p), dims, 0);
  const Matrix kb = embed1(fused_kminus(s, v, eta, p), dims, 1);
  const Matrix lhs = r_uv * ka * r_uv_sum * kb;
  const Matrix rhs = kb * r_uv_sum * ka * r_uv;
  return (lhs - rhs).norm() / lhs.norm();
}

}  // namespace openxxz
