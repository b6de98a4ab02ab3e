#include "openxxz/spin_one.hpp"

#include <cmath>
#include <stdexcept>

#include "openxxz/fusion.hpp"

namespace openxxz {

namespace {

void require_spin_one(const ChainSpec& spec) {
  if (spec.spin_s.twice != 2)
    throw std::invalid_argument("construction requires s = 1");
}

Matrix row_reduction_map() {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 0) = 1.0;
  a(1, 1) = a(1, 2) = 0.5;
  a(2, 1) = 0.5;
  a(2, 2) = -0.5;
  a(3, 3) = 1.0;
  return a;
}

Matrix row_reduction_inverse() {
  Matrix ai = Matrix::Zero(4, 4);
  ai(0, 0) = 1.0;
  ai(1, 1) = ai(1, 2) = 1.0;
  ai(2, 1) = 1.0;
  ai(2, 2) = -1.0;
  ai(3, 3) = 1.0;
  return ai;
}

Matrix keep_rows_cols(const Matrix& m, const std::vector<int>& keep) {
  const int n = static_cast<int>(keep.size());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(keep[i], keep[j]);
  return out;
}

Matrix sz3() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

Matrix sp3() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 2) = std::sqrt(2.0);
  return m;
}

std::array<Complex, 9> site_coeffs(Complex alpha, Complex beta, Complex theta,
                                   Complex eta) {
  std::array<Complex, 9> a{};
  a[0] = 1.0 / (sh(alpha - eta / 2.0) * sh(alpha + eta / 2.0) *
                ch(beta - eta / 2.0) * ch(beta + eta / 2.0));
  a[1] = 0.25 * a[0] * (ch(2.0 * alpha) - ch(2.0 * beta) + ch(eta)) *
         sh(2.0 * eta) * sh(eta);
  a[2] = 0.25 * a[0] * sh(2.0 * alpha) * sh(2.0 * beta) * sh(2.0 * eta);
  a[3] = -0.125 * a[0] * std::exp(2.0 * theta) * sh(2.0 * eta) * sh(eta);
  a[4] = -0.125 * a[0] * std::exp(-2.0 * theta) * sh(2.0 * eta) * sh(eta);
  const Complex plus_comb =
      ch(beta) * sh(alpha) * ch(eta / 2.0) + ch(alpha) * sh(beta) * sh(eta / 2.0);
  const Complex minus_comb =
      ch(beta) * sh(alpha) * ch(eta / 2.0) - ch(alpha) * sh(beta) * sh(eta / 2.0);
  const Complex tail = sh(eta) * std::pow(ch(eta), 1.5);
  a[5] = a[0] * std::exp(theta) * plus_comb * tail;
  a[6] = a[0] * std::exp(-theta) * plus_comb * tail;
  a[7] = -a[0] * std::exp(theta) * minus_comb * tail;
  a[8] = -a[0] * std::exp(-theta) * minus_comb * tail;
  return a;
}

Matrix boundary_site_term(const std::array<Complex, 9>& c) {
  const Matrix sz = sz3();
  const Matrix sp = sp3();
  const Matrix sm = sp.adjoint();
  return c[1] * sz * sz + c[2] * sz + c[3] * sp * sp + c[4] * sm * sm +
         c[5] * sp * sz + c[6] * sz * sm + c[7] * sz * sp + c[8] * sm * sz;
}

}  // namespace

ReducedGt reduced_gauge_rk(Complex u, Complex eta, const BoundaryParams& p) {
  const Matrix a = row_reduction_map();
  const Matrix ai = row_reduction_inverse();
  const std::vector<int> keep{0, 1, 3};
  std::vector<int> keep2;
  for (int i : keep)
    for (int j : keep) keep2.push_back(4 * i + j);

  const Matrix rbig = fused_r_big(spin_one, spin_one, u, eta);
  const Matrix r9 = keep_rows_cols(kron(a, a) * rbig * kron(ai, ai), keep2);
  const Matrix km3 = keep_rows_cols(
      a * fused_kminus_big(spin_one, u, eta, p) * ai, keep);
  const Matrix kp3 = keep_rows_cols(
      a * fused_kplus_big(spin_one, u, eta, p) * ai, keep);

  Matrix b = Matrix::Identity(3, 3);
  const Complex mid = -std::sqrt(2.0 * ch(eta));
  if (std::abs(mid) < 1e-300)
    throw std::domain_error("gauge undefined at ch(eta) = 0");
  b(1, 1) = mid;
  Matrix bi = Matrix::Identity(3, 3);
  bi(1, 1) = 1.0 / mid;

  ReducedGt out;
  out.r = kron(b, b) * r9 * kron(bi, bi);
  out.kminus = b * km3 * bi;
  out.kplus = b * kp3 * bi;
  return out;
}

Matrix t11_gauge(const ChainSpec& spec, Complex u) {
  require_spin_one(spec);
  const ReducedGt parts = reduced_gauge_rk(u, spec.eta, spec.boundary);
  return transfer_from_parts(parts.r, parts.kminus, parts.kplus, spec.n_sites,
                             3, 3);
}

Matrix rescaled_t11(const ChainSpec& spec, Complex u) {
  require_spin_one(spec);
  if (std::abs(sh(2.0 * u)) < 1e-7) {
    const double eps = 1e-6;
    return (rescaled_t11(spec, u + eps) + rescaled_t11(spec, u - eps)) / 2.0;
  }
  const Complex eta = spec.eta;
  const Complex pref = sh(2.0 * u) * sh(2.0 * u + 2.0 * eta) /
                       std::pow(sh(u) * sh(u + eta), 2 * spec.n_sites);
  return pref * t11_gauge(spec, u);
}

Matrix t11_derivative0(const ChainSpec& spec, double step) {
  auto central = [&](double h) -> Matrix {
    return (rescaled_t11(spec, Complex(h, 0.0)) -
            rescaled_t11(spec, Complex(-h, 0.0))) /
           (2.0 * h);
  };
  // Richardson combines the requested step with its double, so the smallest
  // evaluation offset stays at `step` and roundoff is not amplified.
  const Matrix d1 = central(2.0 * step);
  const Matrix d2 = central(step);
  return (4.0 * d2 - d1) / 3.0;
}

Matrix gauge_site_map(Complex eta) {
  Matrix g = Matrix::Identity(3, 3);
  g(1, 1) = -std::sqrt(ch(eta));
  return g;
}

Matrix gauge_chain_map(const ChainSpec& spec) {
  const Matrix g = gauge_site_map(spec.eta);
  Matrix out = Matrix::Identity(1, 1);
  for (int n = 0; n < spec.n_sites; ++n) out = kron(out, g);
  return out;
}

HamiltonianCoeffs ham_coeffs(const ChainSpec& spec) {
  require_spin_one(spec);
  const auto& p = spec.boundary;
  HamiltonianCoeffs c;
  c.a = site_coeffs(p.alpha_minus, p.beta_minus, p.theta_minus, spec.eta);
  c.b = site_coeffs(p.alpha_plus, -p.beta_plus, p.theta_plus, spec.eta);
  c.c1 = c1_value(spec);
  return c;
}

Matrix hamiltonian_explicit(const ChainSpec& spec) {
  require_spin_one(spec);
  const Complex eta = spec.eta;
  const Matrix sz = sz3();
  const Matrix sp = sp3();
  const Matrix sm = sp.adjoint();
  const Matrix sx = (sp + sm) / 2.0;
  const Matrix sy = (sp - sm) / Complex(0.0, 2.0);
  const Matrix id3 = Matrix::Identity(3, 3);

  const Matrix sig = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
  const Matrix sigz = kron(sz, sz);
  const Matrix sigperp = kron(sx, sx) + kron(sy, sy);
  const Complex sh_eta_sq = sh(eta) * sh(eta);
  const Complex sh_half_sq = sh(eta / 2.0) * sh(eta / 2.0);
  const Matrix h2 = sig - sig * sig +
                    2.0 * sh_eta_sq *
                        (sigz + kron(sz * sz, id3) + kron(id3, sz * sz) -
                         sigz * sigz) -
                    4.0 * sh_half_sq * (sigperp * sigz + sigz * sigperp);

  const std::vector<int> dims(spec.n_sites, 3);
  const int d = spec.chain_dim();
  Matrix h = Matrix::Zero(d, d);
  for (int n = 0; n + 1 < spec.n_sites; ++n) h += embed2(h2, dims, n, n + 1);

  const HamiltonianCoeffs c = ham_coeffs(spec);
  h += embed1(boundary_site_term(c.a), dims, 0);
  h += embed1(boundary_site_term(c.b), dims, spec.n_sites - 1);
  return h;
}

Complex c1_value(const ChainSpec& spec) {
  require_spin_one(spec);
  const Complex eta = spec.eta;
  const auto& p = spec.boundary;
  Complex denom = 16.0 * std::pow(sh(2.0 * eta) * sh(eta), 2 * spec.n_sites) *
                  sh(3.0 * eta);
  denom *= sh(p.alpha_minus - eta / 2.0) * sh(p.alpha_minus + eta / 2.0) *
           ch(p.beta_minus - eta / 2.0) * ch(p.beta_minus + eta / 2.0);
  denom *= sh(p.alpha_plus - eta / 2.0) * sh(p.alpha_plus + eta / 2.0) *
           ch(p.beta_plus - eta / 2.0) * ch(p.beta_plus + eta / 2.0);
  // Sign fixed by requiring hamiltonian_explicit == c1 * d/du rescaled_t11
  // + c0; checked numerically to ~1e-10 at N=2 and N=3.
  return ch(eta) / denom;
}

DerivativeRelation derivative_relation(const ChainSpec& spec, double step) {
  const Matrix h = hamiltonian_explicit(spec);
  const Matrix d = t11_derivative0(spec, step);
  const Matrix m = h - c1_value(spec) * d;
  const int dim = spec.chain_dim();
  DerivativeRelation out;
  out.c0 = m.trace() / double(dim);
  out.residual =
      (m - out.c0 * Matrix::Identity(dim, dim)).norm() / h.norm();
  return out;
}

Complex c0_value(const ChainSpec& spec) {
  const DerivativeRelation rel = derivative_relation(spec);
  if (rel.residual > 1e-7)
    throw std::runtime_error(
        "transfer-matrix derivative is not scalar-shifted from H");
  return rel.c0;
}

Matrix hamiltonian_iso(const ChainSpec& spec) {
  const Matrix g = gauge_chain_map(spec);
  return g.inverse() * hamiltonian_explicit(spec) * g;
}

Complex energy_root_term(const ChainSpec& spec,
                         const std::vector<Complex>& roots_v) {
  const Complex eta = spec.eta;
  Complex e = 0.0;
  for (const auto& v : roots_v) {
    const Complex vt = v + eta / 2.0;
    e += 1.0 / (sh(vt - eta) * sh(vt + eta));
  }
  e *= sh(2.0 * eta) * sh(2.0 * eta);
  e += double(spec.n_sites) * (sh(3.0 * eta) / sh(eta) - 3.0);
  return e;
}

SectorEnergies sector_energies(const ChainSpec& spec,
                               const SectorConfig& sector,
                               const std::vector<SpectrumLevel>& levels,
                               TransferCache& cache, double fit_tol) {
  require_spin_one(spec);
  const Matrix h_iso = hamiltonian_iso(spec);
  SectorEnergies out;
  bool calibrated = false;
  std::vector<Complex> constants;
  for (const auto& lv : levels) {
    const auto sol = q_fit(cache, sector, lv, fit_tol);
    if (!sol) continue;
    auto roots = sol->roots_v;
    if (!roots.empty()) {
      const auto ref = newton_refine(spec, sector, roots);
      roots = ref.roots_v;
    }
    const Complex direct = lv.left.dot(h_iso * lv.right);
    const Complex constant = direct - energy_root_term(spec, roots);
    if (!calibrated) {
      out.c_pm = constant;
      calibrated = true;
    }
    constants.push_back(constant);
    out.level_indices.push_back(lv.index);
    out.energies.push_back(energy_root_term(spec, roots) + out.c_pm);
    out.direct.push_back(direct);
    out.roots.push_back(std::move(roots));
  }
  for (const auto& c : constants)
    out.spread = std::max(out.spread, std::abs(c - out.c_pm));
  return out;
}

}  // namespace openxxz
