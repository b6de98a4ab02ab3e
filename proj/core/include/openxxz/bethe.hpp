#pragma once

#include <optional>
#include <vector>

#include "openxxz/transfer.hpp"

namespace openxxz {

// Sign data selecting one T-Q branch: branch is the overall (+/-) label,
// eps0..eps3 enter the parameter constraint, k fixes the root count.
struct SectorConfig {
  int branch = -1;
  int eps0 = 1;
  int eps1 = 1;
  int eps2 = 1;
  int eps3 = 1;
  int k = 1;
};

struct BetheSolution {
  int level_index = 0;
  SectorConfig sector;
  int m = 0;
  std::vector<Complex> q_coeffs;  // monic in y = ch(2u + eta), lowest first
  std::vector<Complex> roots_v;
  double fit_residual = 0.0;
  double bae_residual = 0.0;
};

// Dressing functions of the T-Q form for the rescaled transfer matrix.
Complex h1_tilde(const SectorConfig& sector, const ChainSpec& spec, Complex u);
Complex h2_tilde(const SectorConfig& sector, const ChainSpec& spec, Complex u);

// Boundary-parameter constraint residual, reduced mod 2 pi i to the
// fundamental strip; the constraint holds iff the residual vanishes.
Complex check_constraint(const BoundaryParams& p, const SectorConfig& sector,
                         Complex eta);

// theta_plus making the constraint residual exactly zero.
Complex solve_theta_plus(const BoundaryParams& p, const SectorConfig& sector,
                         Complex eta);

// M = s N - 1/2 -+ k/2; negative means the sector carries no Bethe states.
int m_count(const ChainSpec& spec, const SectorConfig& sector);

// Q(u) = prod_j sh(u - v_j) sh(u + v_j + eta).
Complex q_eval(const std::vector<Complex>& roots_v, Complex eta, Complex u);

// Eigenvalue reconstructed from the T-Q form and a set of roots.
Complex tq_eigenvalue(const ChainSpec& spec, const SectorConfig& sector,
                      const std::vector<Complex>& roots_v, Complex u);

// Fits a monic Q polynomial of degree M to one spectral level over a fixed
// sample grid; empty result means the level does not belong to the sector.
std::optional<BetheSolution> q_fit(TransferCache& cache,
                                   const SectorConfig& sector,
                                   const SpectrumLevel& level,
                                   double fit_tol = 1e-8);

// Max over j of |LHS/RHS - 1| of the root equations in v~ = v + eta/2.
double bae_residual(const ChainSpec& spec, const SectorConfig& sector,
                    const std::vector<Complex>& roots_v);

struct RefineResult {
  std::vector<Complex> roots_v;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton on the log-form root equations with analytic Jacobian.
RefineResult newton_refine(const ChainSpec& spec, const SectorConfig& sector,
                           const std::vector<Complex>& roots_v,
                           double tol = 1e-10, int max_iter = 50);

struct ClassifyRow {
  int k = 0;
  int count_minus = 0;
  int count_plus = 0;
  int dual_count = 0;
  int none_count = 0;
};

// Classifies every level of the spectrum against both branches for one k;
// theta_plus is solved from the constraint, other parameters come from base.
ClassifyRow classify_k(const ChainSpec& base, const SectorConfig& eps, int k,
                       double fit_tol = 1e-8, int max_dim = 256);

std::vector<ClassifyRow> classify_all(const ChainSpec& base,
                                      const SectorConfig& eps,
                                      const std::vector<int>& ks,
                                      double fit_tol = 1e-8,
                                      int max_dim = 256);

}  // namespace openxxz
