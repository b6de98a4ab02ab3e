#include "openxxz/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace openxxz {

namespace {

Complex cth(Complex z) { return 1.0 / std::tanh(z); }

double wrap_to_pi(double x) {
  x = std::fmod(x, 2.0 * kPi);
  if (x > kPi) x -= 2.0 * kPi;
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

// Grid points with constant Re(2u + eta), so that y = ch(2u + eta) stays on
// a bounded ellipse and powers of y up to high degree remain comparable;
// points avoid the dressing-function poles and the rescaling-factor zeros.
std::vector<Complex> fit_grid(const ChainSpec& spec, int count) {
  std::vector<Complex> pts;
  const double span = 2.6 / (count + 1);
  for (int t = 0; static_cast<int>(pts.size()) < count && t < 4 * count + 200;
       ++t) {
    const Complex w(0.8, 0.25 + span * t);
    const Complex u = (w - spec.eta) / 2.0;
    if (std::abs(sh(2.0 * u + spec.eta)) < 1e-3) continue;
    if (std::abs(g_scalar(spec, u)) < 1e-3) continue;
    pts.push_back(u);
  }
  if (static_cast<int>(pts.size()) < count)
    throw std::runtime_error("could not assemble a pole-free sample grid");
  return pts;
}

Complex principal_acosh_half(Complex y) {
  Complex w = std::acosh(y);
  if (w.imag() <= -kPi + 1e-14) w += Complex(0.0, 2.0 * kPi);
  return w / 2.0;
}

// Signed boundary arguments entering the root equations: {value, use_ch}.
struct BoundaryFactor {
  Complex a;
  bool is_ch;
};

std::vector<BoundaryFactor> boundary_factors(const ChainSpec& spec,
                                             const SectorConfig& sector) {
  const auto& p = spec.boundary;
  const double b = sector.branch;
  return {{b * p.alpha_minus, false},
          {b * double(sector.eps1) * p.beta_minus, true},
          {b * double(sector.eps2) * p.alpha_plus, false},
          {b * double(sector.eps3) * p.beta_plus, true}};
}

// Log of the root-equation defect at position j, in v~ variables.
Complex log_defect(const ChainSpec& spec, const SectorConfig& sector,
                   const std::vector<Complex>& vt, int j) {
  const Complex eta = spec.eta;
  const double s = spec.spin_s.value();
  const Complex v = vt[j];
  Complex f = 2.0 * spec.n_sites *
              (std::log(sh(v + s * eta)) - std::log(sh(v - s * eta)));
  f += std::log(sh(2.0 * v + eta)) - std::log(sh(2.0 * v - eta));
  for (const auto& bf : boundary_factors(spec, sector)) {
    auto lf = [&](Complex z) {
      return std::log(bf.is_ch ? ch(z) : sh(z));
    };
    f += lf(v - bf.a - eta / 2.0) - lf(v + bf.a + eta / 2.0);
  }
  f -= Complex(0.0, kPi);  // the explicit minus sign on the right side
  for (const auto& w : vt) {
    f -= std::log(sh(v - w + eta)) - std::log(sh(v - w - eta));
    f -= std::log(sh(v + w + eta)) - std::log(sh(v + w - eta));
  }
  return Complex(f.real(), wrap_to_pi(f.imag()));
}

Vector defect_vector(const ChainSpec& spec, const SectorConfig& sector,
                     const std::vector<Complex>& vt) {
  Vector r(vt.size());
  for (size_t j = 0; j < vt.size(); ++j)
    r(j) = log_defect(spec, sector, vt, j);
  return r;
}

Matrix defect_jacobian(const ChainSpec& spec, const SectorConfig& sector,
                       const std::vector<Complex>& vt) {
  const Complex eta = spec.eta;
  const double s = spec.spin_s.value();
  const int m = static_cast<int>(vt.size());
  Matrix jac = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    const Complex v = vt[j];
    Complex d = 2.0 * spec.n_sites * (cth(v + s * eta) - cth(v - s * eta));
    d += 2.0 * cth(2.0 * v + eta) - 2.0 * cth(2.0 * v - eta);
    for (const auto& bf : boundary_factors(spec, sector)) {
      auto df = [&](Complex z) { return bf.is_ch ? std::tanh(z) : cth(z); };
      d += df(v - bf.a - eta / 2.0) - df(v + bf.a + eta / 2.0);
    }
    // Self term of the pairwise products.
    d -= 2.0 * cth(2.0 * v + eta) - 2.0 * cth(2.0 * v - eta);
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      const Complex w = vt[k];
      d -= cth(v - w + eta) - cth(v - w - eta);
      d -= cth(v + w + eta) - cth(v + w - eta);
      jac(j, k) = cth(v - w + eta) - cth(v - w - eta) - cth(v + w + eta) +
                  cth(v + w - eta);
    }
    jac(j, j) = d;
  }
  return jac;
}

}  // namespace

Complex h1_tilde(const SectorConfig& sector, const ChainSpec& spec,
                 Complex u) {
  const Complex eta = spec.eta;
  const double s = spec.spin_s.value();
  const double b = sector.branch;
  const auto& p = spec.boundary;
  Complex h = -4.0 * double(sector.eps2) *
              std::pow(sh(u - (s - 0.5) * eta), 2 * spec.n_sites) *
              sh(2.0 * u) / sh(2.0 * u + eta);
  h *= sh(u + b * p.alpha_minus + eta) *
       ch(u + b * double(sector.eps1) * p.beta_minus + eta) *
       sh(u + b * double(sector.eps2) * p.alpha_plus + eta) *
       ch(u + b * double(sector.eps3) * p.beta_plus + eta);
  return h;
}

Complex h2_tilde(const SectorConfig& sector, const ChainSpec& spec,
                 Complex u) {
  const Complex eta = spec.eta;
  const double s = spec.spin_s.value();
  const double b = sector.branch;
  const auto& p = spec.boundary;
  Complex h = -4.0 * double(sector.eps2) *
              std::pow(sh(u + (s + 0.5) * eta), 2 * spec.n_sites) *
              sh(2.0 * u + 2.0 * eta) / sh(2.0 * u + eta);
  h *= sh(u - b * p.alpha_minus) *
       ch(u - b * double(sector.eps1) * p.beta_minus) *
       sh(u - b * double(sector.eps2) * p.alpha_plus) *
       ch(u - b * double(sector.eps3) * p.beta_plus);
  return h;
}

Complex check_constraint(const BoundaryParams& p, const SectorConfig& sector,
                         Complex eta) {
  Complex r = p.alpha_minus + double(sector.eps1) * p.beta_minus +
              double(sector.eps2) * p.alpha_plus +
              double(sector.eps3) * p.beta_plus;
  r -= double(sector.eps0) * (p.theta_minus - p.theta_plus);
  r -= eta * double(sector.k);
  r -= Complex(0.0, (1 - sector.eps2) * kPi / 2.0);
  return Complex(r.real(), wrap_to_pi(r.imag()));
}

Complex solve_theta_plus(const BoundaryParams& p, const SectorConfig& sector,
                         Complex eta) {
  const Complex lhs = p.alpha_minus + double(sector.eps1) * p.beta_minus +
                      double(sector.eps2) * p.alpha_plus +
                      double(sector.eps3) * p.beta_plus;
  const Complex rhs_rest =
      eta * double(sector.k) + Complex(0.0, (1 - sector.eps2) * kPi / 2.0);
  // lhs = eps0 (theta_- - theta_+) + rhs_rest
  return p.theta_minus - double(sector.eps0) * (lhs - rhs_rest);
}

int m_count(const ChainSpec& spec, const SectorConfig& sector) {
  const int twice_m = spec.spin_s.twice * spec.n_sites - 1 -
                      sector.branch * sector.k;
  if (twice_m % 2 != 0)
    throw std::invalid_argument("k parity incompatible with s N");
  return twice_m / 2;
}

Complex q_eval(const std::vector<Complex>& roots_v, Complex eta, Complex u) {
  Complex q = 1.0;
  for (const auto& v : roots_v) q *= sh(u - v) * sh(u + v + eta);
  return q;
}

Complex tq_eigenvalue(const ChainSpec& spec, const SectorConfig& sector,
                      const std::vector<Complex>& roots_v, Complex u) {
  const Complex q0 = q_eval(roots_v, spec.eta, u);
  const Complex qp = q_eval(roots_v, spec.eta, u + spec.eta);
  const Complex qm = q_eval(roots_v, spec.eta, u - spec.eta);
  return h1_tilde(sector, spec, u) * qp / q0 +
         h2_tilde(sector, spec, u) * qm / q0;
}

std::optional<BetheSolution> q_fit(TransferCache& cache,
                                   const SectorConfig& sector,
                                   const SpectrumLevel& level,
                                   double fit_tol) {
  const ChainSpec& spec = cache.spec();
  const int m = m_count(spec, sector);
  if (m < 0) return std::nullopt;

  BetheSolution sol;
  sol.level_index = level.index;
  sol.sector = sector;
  sol.m = m;

  const auto grid = fit_grid(spec, m + 6);
  if (m == 0) {
    double worst = 0.0;
    for (const auto& u : grid) {
      const Complex lam = cache.lambda(level, u);
      const Complex pred = h1_tilde(sector, spec, u) + h2_tilde(sector, spec, u);
      worst = std::max(worst, std::abs(lam - pred) / std::abs(lam));
    }
    if (worst > fit_tol) return std::nullopt;
    sol.q_coeffs = {1.0};
    sol.fit_residual = worst;
    return sol;
  }

  const Complex eta = spec.eta;
  auto y = [&](Complex u) { return ch(2.0 * u + eta); };
  const int rows = static_cast<int>(grid.size());
  Matrix a(rows, m + 1);
  for (int i = 0; i < rows; ++i) {
    const Complex u = grid[i];
    const Complex lam = cache.lambda(level, u);
    const Complex h1 = h1_tilde(sector, spec, u);
    const Complex h2 = h2_tilde(sector, spec, u);
    const Complex y0 = y(u), yp = y(u + eta), ym = y(u - eta);
    Complex p0 = 1.0, pp = 1.0, pm = 1.0;
    for (int c = 0; c <= m; ++c) {
      a(i, c) = lam * p0 - h1 * pp - h2 * pm;
      p0 *= y0;
      pp *= yp;
      pm *= ym;
    }
  }

  for (int i = 0; i < rows; ++i) {
    const double r = a.row(i).cwiseAbs().maxCoeff();
    if (r > 0.0) a.row(i) /= r;
  }
  Eigen::VectorXd col_scale(m + 1);
  for (int c = 0; c <= m; ++c) {
    col_scale(c) = a.col(c).cwiseAbs().maxCoeff();
    if (col_scale(c) > 0.0) a.col(c) /= col_scale(c);
  }

  const NullVector nv = null_vector(a);
  if (nv.residual > fit_tol) return std::nullopt;
  sol.fit_residual = nv.residual;

  std::vector<Complex> coeffs(m + 1);
  double top = 0.0;
  for (int c = 0; c <= m; ++c) {
    coeffs[c] = nv.v(c) / col_scale(c);
    top = std::max(top, std::abs(coeffs[c]));
  }
  // Large roots shrink the leading coefficient like 1/prod|y_j|, so only a
  // value at the numerical noise floor signals a genuine degree drop.
  if (std::abs(coeffs[m]) < 1e-12 * top) return std::nullopt;
  for (int c = 0; c <= m; ++c) coeffs[c] /= coeffs[m];
  sol.q_coeffs = coeffs;

  const auto roots_y = poly_roots(coeffs);
  sol.roots_v.reserve(m);
  for (const auto& yj : roots_y)
    sol.roots_v.push_back(principal_acosh_half(yj) - eta / 2.0);
  std::sort(sol.roots_v.begin(), sol.roots_v.end(),
            [](Complex a_, Complex b_) {
              if (a_.real() != b_.real()) return a_.real() < b_.real();
              return a_.imag() < b_.imag();
            });
  sol.bae_residual = bae_residual(spec, sector, sol.roots_v);
  return sol;
}

double bae_residual(const ChainSpec& spec, const SectorConfig& sector,
                    const std::vector<Complex>& roots_v) {
  if (roots_v.empty()) return 0.0;
  std::vector<Complex> vt(roots_v.size());
  for (size_t j = 0; j < roots_v.size(); ++j)
    vt[j] = roots_v[j] + spec.eta / 2.0;
  double worst = 0.0;
  for (size_t j = 0; j < vt.size(); ++j) {
    const Complex f = log_defect(spec, sector, vt, j);
    worst = std::max(worst, std::abs(std::exp(f) - 1.0));
  }
  return worst;
}

RefineResult newton_refine(const ChainSpec& spec, const SectorConfig& sector,
                           const std::vector<Complex>& roots_v, double tol,
                           int max_iter) {
  RefineResult out;
  out.roots_v = roots_v;
  const int m = static_cast<int>(roots_v.size());
  if (m == 0) {
    out.converged = true;
    return out;
  }
  std::vector<Complex> vt(m);
  for (int j = 0; j < m; ++j) vt[j] = roots_v[j] + spec.eta / 2.0;

  Vector r = defect_vector(spec, sector, vt);
  double rn = r.cwiseAbs().maxCoeff();
  for (; out.iterations < max_iter && rn > tol; ++out.iterations) {
    const Matrix jac = defect_jacobian(spec, sector, vt);
    Eigen::PartialPivLU<Matrix> lu(jac);
    const Vector step = lu.solve(-r);
    if (!step.allFinite()) break;

    double lambda = 1.0;
    std::vector<Complex> trial(m);
    Vector r_trial;
    double rn_trial = rn;
    bool improved = false;
    for (int halve = 0; halve < 8; ++halve) {
      for (int j = 0; j < m; ++j) trial[j] = vt[j] + lambda * step(j);
      r_trial = defect_vector(spec, sector, trial);
      rn_trial = r_trial.cwiseAbs().maxCoeff();
      if (rn_trial < rn) {
        improved = true;
        break;
      }
      lambda /= 2.0;
    }
    if (!improved) break;  // stall
    vt = trial;
    r = r_trial;
    rn = rn_trial;
  }

  out.residual = rn;
  out.converged = rn <= tol;
  if (out.converged || rn < bae_residual(spec, sector, roots_v)) {
    for (int j = 0; j < m; ++j) out.roots_v[j] = vt[j] - spec.eta / 2.0;
  }
  return out;
}

ClassifyRow classify_k(const ChainSpec& base, const SectorConfig& eps, int k,
                       double fit_tol, int max_dim) {
  ChainSpec spec = base;
  SectorConfig sector = eps;
  sector.k = k;
  spec.boundary.theta_plus =
      solve_theta_plus(base.boundary, sector, spec.eta);

  ClassifyRow row;
  row.k = k;
  const auto levels = spectrum(spec, Complex(0.83, 0.31), max_dim);
  TransferCache cache(spec);
  for (const auto& lv : levels) {
    SectorConfig minus = sector, plus = sector;
    minus.branch = -1;
    plus.branch = 1;
    const bool fit_minus = q_fit(cache, minus, lv, fit_tol).has_value();
    const bool fit_plus = q_fit(cache, plus, lv, fit_tol).has_value();
    if (fit_minus) ++row.count_minus;
    if (fit_plus) ++row.count_plus;
    if (fit_minus && fit_plus) ++row.dual_count;
    if (!fit_minus && !fit_plus) ++row.none_count;
  }
  return row;
}

std::vector<ClassifyRow> classify_all(const ChainSpec& base,
                                      const SectorConfig& eps,
                                      const std::vector<int>& ks,
                                      double fit_tol, int max_dim) {
  std::vector<ClassifyRow> rows;
  rows.reserve(ks.size());
  for (int k : ks) rows.push_back(classify_k(base, eps, k, fit_tol, max_dim));
  return rows;
}

}  // namespace openxxz
