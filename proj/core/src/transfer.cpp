#include "openxxz/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "openxxz/fusion.hpp"

namespace openxxz {

namespace {

std::vector<int> chain_dims(int d_aux, int d_site, int n_sites) {
  std::vector<int> dims(n_sites + 1, d_site);
  dims[0] = d_aux;
  return dims;
}

Matrix partial_trace_aux(const Matrix& m, int d_aux, int d_chain) {
  Matrix out = Matrix::Zero(d_chain, d_chain);
  for (int a = 0; a < d_aux; ++a)
    out += m.block(a * d_chain, a * d_chain, d_chain, d_chain);
  return out;
}

}  // namespace

Matrix monodromy(Spin j, const ChainSpec& spec, Complex u) {
  const auto dims = chain_dims(j.dim(), spec.site_dim(), spec.n_sites);
  const Matrix r = fused_r(j, spec.spin_s, u, spec.eta);
  const int total = j.dim() * spec.chain_dim();
  Matrix t = Matrix::Identity(total, total);
  for (int site = spec.n_sites; site >= 1; --site)
    t = t * embed2(r, dims, 0, site);
  return t;
}

Matrix hat_monodromy(Spin j, const ChainSpec& spec, Complex u) {
  const auto dims = chain_dims(j.dim(), spec.site_dim(), spec.n_sites);
  const Matrix r = fused_r(j, spec.spin_s, u, spec.eta);
  const int total = j.dim() * spec.chain_dim();
  Matrix t = Matrix::Identity(total, total);
  for (int site = 1; site <= spec.n_sites; ++site)
    t = t * embed2(r, dims, 0, site);
  return t;
}

Matrix transfer_from_parts(const Matrix& r_pair, const Matrix& km,
                           const Matrix& kp, int n_sites, int d_aux,
                           int d_site) {
  const auto dims = chain_dims(d_aux, d_site, n_sites);
  int d_chain = 1;
  for (int i = 0; i < n_sites; ++i) d_chain *= d_site;
  const int total = d_aux * d_chain;

  Matrix t = Matrix::Identity(total, total);
  for (int site = n_sites; site >= 1; --site)
    t = t * embed2(r_pair, dims, 0, site);
  Matrix t_hat = Matrix::Identity(total, total);
  for (int site = 1; site <= n_sites; ++site)
    t_hat = t_hat * embed2(r_pair, dims, 0, site);

  const Matrix m =
      embed1(kp, dims, 0) * t * embed1(km, dims, 0) * t_hat;
  return partial_trace_aux(m, d_aux, d_chain);
}

Matrix transfer(Spin j, const ChainSpec& spec, Complex u) {
  const Matrix r = fused_r(j, spec.spin_s, u, spec.eta);
  const Matrix km = fused_kminus(j, u, spec.eta, spec.boundary);
  const Matrix kp = kplus(j, u, spec.eta, spec.boundary);
  return transfer_from_parts(r, km, kp, spec.n_sites, j.dim(),
                             spec.site_dim());
}

Complex g_scalar(const ChainSpec& spec, Complex u) {
  Complex g = 1.0;
  const double s = spec.spin_s.value();
  for (int k = 1; k <= spec.spin_s.twice - 1; ++k)
    g *= sh(u + (s - k + 0.5) * spec.eta);
  return g;
}

Matrix rescaled_fundamental(const ChainSpec& spec, Complex u) {
  const Complex g = g_scalar(spec, u);
  if (std::abs(g) > 1e-4)
    return transfer(spin_half, spec, u) / std::pow(g, 2 * spec.n_sites);

  // Removable singularity: even stencil plus two Richardson steps.
  const double eps = 0.01;
  auto even_avg = [&](double e) -> Matrix {
    return (rescaled_fundamental(spec, u + e) +
            rescaled_fundamental(spec, u - e)) /
           2.0;
  };
  const Matrix a1 = even_avg(eps);
  const Matrix a2 = even_avg(eps / 2);
  const Matrix a3 = even_avg(eps / 4);
  const Matrix b1 = (4.0 * a2 - a1) / 3.0;
  const Matrix b2 = (4.0 * a3 - a2) / 3.0;
  return (16.0 * b2 - b1) / 15.0;
}

Complex delta_fn(const ChainSpec& spec, Complex u) {
  const Complex eta = spec.eta;
  const double s = spec.spin_s.value();
  const auto& b = spec.boundary;
  Complex site = 1.0;
  for (int k = 0; k <= spec.spin_s.twice - 1; ++k)
    site *= xi(u + (s - k - 0.5) * eta, eta);
  Complex d = 16.0 * std::pow(site, 2 * spec.n_sites);
  d *= sh(2.0 * u - 2.0 * eta) * sh(2.0 * u + 2.0 * eta) /
       (sh(2.0 * u - eta) * sh(2.0 * u + eta));
  d *= sh(u + b.alpha_minus) * sh(u - b.alpha_minus) * ch(u + b.beta_minus) *
       ch(u - b.beta_minus);
  d *= sh(u + b.alpha_plus) * sh(u - b.alpha_plus) * ch(u + b.beta_plus) *
       ch(u - b.beta_plus);
  return d;
}

double check_commutativity(const ChainSpec& spec, Spin j1, Spin j2, Complex u1,
                           Complex u2) {
  const Matrix a = transfer(j1, spec, u1);
  const Matrix b = transfer(j2, spec, u2);
  return (a * b - b * a).norm() / (a.norm() * b.norm());
}

double check_fusion_hierarchy(const ChainSpec& spec, Spin j, Complex u) {
  if (j.twice < 2) throw std::invalid_argument("hierarchy needs j >= 1");
  const Complex eta = spec.eta;
  const double jv = j.value();
  const Matrix lhs = transfer(Spin{j.twice - 1}, spec, u - jv * eta) *
                     transfer(spin_half, spec, u);
  Matrix rhs = transfer(j, spec, u - (jv - 0.5) * eta);
  const int d = spec.chain_dim();
  const Matrix lower = j.twice == 2
                           ? Matrix(Matrix::Identity(d, d))
                           : transfer(Spin{j.twice - 2}, spec,
                                      u - (jv + 0.5) * eta);
  rhs += delta_fn(spec, u) * lower;
  return (lhs - rhs).norm() / lhs.norm();
}

double check_periodicity(const ChainSpec& spec, Complex u) {
  const Matrix a = rescaled_fundamental(spec, u);
  const Matrix b = rescaled_fundamental(spec, u + Complex(0.0, kPi));
  return (a - b).norm() / a.norm();
}

double check_crossing(const ChainSpec& spec, Complex u) {
  const Matrix a = rescaled_fundamental(spec, u);
  const Matrix b = rescaled_fundamental(spec, -u - spec.eta);
  return (a - b).norm() / a.norm();
}

double check_initial(const ChainSpec& spec) {
  const Complex eta = spec.eta;
  const auto& b = spec.boundary;
  const Complex scalar =
      -8.0 *
      std::pow(sh((spec.spin_s.value() + 0.5) * eta), 2 * spec.n_sites) *
      ch(eta) * sh(b.alpha_minus) * ch(b.beta_minus) * sh(b.alpha_plus) *
      ch(b.beta_plus);
  const int d = spec.chain_dim();
  const Matrix t0 = rescaled_fundamental(spec, 0.0);
  return (t0 - scalar * Matrix::Identity(d, d)).norm() /
         (std::abs(scalar) * std::sqrt(double(d)));
}

double check_semiclassical(const ChainSpec& spec, Complex u) {
  if (spec.eta != 0.0) throw std::invalid_argument("requires eta = 0");
  const auto& b = spec.boundary;
  const Complex scalar =
      8.0 * std::pow(sh(u), 2 * spec.n_sites) *
      (-sh(b.alpha_minus) * ch(b.beta_minus) * sh(b.alpha_plus) *
           ch(b.beta_plus) * ch(u) * ch(u) +
       ch(b.alpha_minus) * sh(b.beta_minus) * ch(b.alpha_plus) *
           sh(b.beta_plus) * sh(u) * sh(u) -
       ch(b.theta_minus - b.theta_plus) * sh(u) * sh(u) * ch(u) * ch(u));
  const int d = spec.chain_dim();
  const Matrix t = rescaled_fundamental(spec, u);
  return (t - scalar * Matrix::Identity(d, d)).norm() /
         (std::abs(scalar) * std::sqrt(double(d)));
}

double check_asymptotic(const ChainSpec& spec, double u_large) {
  const auto& b = spec.boundary;
  const int two_n = 2 * spec.n_sites;
  const Complex scale = -std::pow(2.0, -(two_n + 1)) *
                        std::exp((two_n + 4.0) * u_large +
                                 (spec.n_sites + 2.0) * spec.eta) *
                        ch(b.theta_minus - b.theta_plus);
  const int d = spec.chain_dim();
  const Matrix t = rescaled_fundamental(spec, u_large);
  return (t / scale - Matrix::Identity(d, d)).norm() / std::sqrt(double(d));
}

std::vector<SpectrumLevel> spectrum(const ChainSpec& spec, Complex u0,
                                    int max_dim) {
  const int d = spec.chain_dim();
  if (d > max_dim)
    throw std::runtime_error("chain dimension exceeds configured cap");

  Matrix t0 = rescaled_fundamental(spec, u0);
  EigenSystem es = eig(t0, max_dim);
  if (es.pseudo_inverse_pairing) {
    u0 += 0.07;
    t0 = rescaled_fundamental(spec, u0);
    es = eig(t0, max_dim);
  }

  std::vector<SpectrumLevel> levels(d);
  for (int i = 0; i < d; ++i) {
    levels[i].lambda0 = es.values(i);
    levels[i].right = es.right.col(i);
    levels[i].left = es.left.col(i);
  }

  // Resolve clusters that are degenerate at u0 against a second point.
  const double gap = 1e-7 * t0.norm();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    const Complex va = levels[a].lambda0, vc = levels[c].lambda0;
    if (va.real() != vc.real()) return va.real() < vc.real();
    return va.imag() < vc.imag();
  });
  const Matrix t1 = rescaled_fundamental(spec, u0 + 0.07);
  int pos = 0;
  while (pos < d) {
    int end = pos + 1;
    while (end < d && std::abs(levels[order[end]].lambda0 -
                               levels[order[end - 1]].lambda0) < gap)
      ++end;
    const int m = end - pos;
    if (m > 1) {
      Matrix rc(d, m), lc(d, m);
      for (int i = 0; i < m; ++i) {
        rc.col(i) = levels[order[pos + i]].right;
        lc.col(i) = levels[order[pos + i]].left;
      }
      const Matrix block = lc.adjoint() * t1 * rc;
      const EigenSystem bs = eig(block, max_dim);
      const Matrix rc2 = rc * bs.right;
      const Matrix lc2 = lc * bs.left;
      for (int i = 0; i < m; ++i) {
        auto& lv = levels[order[pos + i]];
        lv.right = rc2.col(i);
        lv.left = lc2.col(i);
        lv.lambda0 = lv.left.dot(t0 * lv.right);
        lv.degenerate_flag = true;
      }
    }
    pos = end;
  }

  std::vector<SpectrumLevel> out;
  out.reserve(d);
  for (int i = 0; i < d; ++i) out.push_back(levels[order[i]]);
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumLevel& a, const SpectrumLevel& c) {
                     if (a.lambda0.real() != c.lambda0.real())
                       return a.lambda0.real() < c.lambda0.real();
                     return a.lambda0.imag() < c.lambda0.imag();
                   });
  for (int i = 0; i < d; ++i) out[i].index = i;
  return out;
}

Complex lambda_of(const ChainSpec& spec, const SpectrumLevel& level,
                  Complex u) {
  const Matrix t = rescaled_fundamental(spec, u);
  return level.left.dot(t * level.right);
}

const Matrix& TransferCache::at(Complex u) {
  unsigned long long re = 0, im = 0;
  const double ur = u.real(), ui = u.imag();
  std::memcpy(&re, &ur, sizeof re);
  std::memcpy(&im, &ui, sizeof im);
  const auto key = std::make_pair(re, im);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, rescaled_fundamental(spec_, u)).first;
  return it->second;
}

Complex TransferCache::lambda(const SpectrumLevel& level, Complex u) {
  return level.left.dot(at(u) * level.right);
}

}  // namespace openxxz
