#pragma once

#include <array>
#include <vector>

#include "openxxz/bethe.hpp"

namespace openxxz {

struct ReducedGt {
  Matrix r;       // 9x9
  Matrix kminus;  // 3x3
  Matrix kplus;   // 3x3
};

// Spin-1 R and K matrices: row reduction of the fused qubit-pair forms to
// the triplet block, then the diagonal gauge diag(1, -sqrt(2 ch eta), 1).
ReducedGt reduced_gauge_rk(Complex u, Complex eta, const BoundaryParams& p);

// Transfer matrix with spin-1 auxiliary and quantum spaces in the gauged
// basis; requires s = 1.
Matrix t11_gauge(const ChainSpec& spec, Complex u);

// sh(2u) sh(2u+2 eta) / [sh u sh(u+eta)]^{2N} times t11_gauge; the removable
// point u = 0 is recovered from evaluations at +-1e-6.
Matrix rescaled_t11(const ChainSpec& spec, Complex u);

// Derivative of rescaled_t11 at u = 0, Richardson-extrapolated central
// differences with the given base step.
Matrix t11_derivative0(const ChainSpec& spec, double step = 1e-5);

// Per-site change of basis from the orthonormal triplet (as produced by the
// fused constructions) to the gauged basis.
Matrix gauge_site_map(Complex eta);
Matrix gauge_chain_map(const ChainSpec& spec);

struct HamiltonianCoeffs {
  std::array<Complex, 9> a{};  // a[0] holds the overall normalization
  std::array<Complex, 9> b{};
  Complex c1;
};

HamiltonianCoeffs ham_coeffs(const ChainSpec& spec);

// Nearest-neighbor spin-1 chain with the displayed bulk and boundary terms.
Matrix hamiltonian_explicit(const ChainSpec& spec);

Complex c1_value(const ChainSpec& spec);

struct DerivativeRelation {
  Complex c0;
  double residual;  // || H - c1 D - c0 || / || H ||
};

DerivativeRelation derivative_relation(const ChainSpec& spec,
                                       double step = 1e-5);

// The additive constant making H = c1 d/du rescaled_t11|0 + c0 exact;
// throws if the difference is not scalar to 1e-7 relative.
Complex c0_value(const ChainSpec& spec);

// Hamiltonian conjugated into the basis the transfer-matrix levels live in.
Matrix hamiltonian_iso(const ChainSpec& spec);

// sh^2(2 eta) sum_j 1/[sh(vt_j - eta) sh(vt_j + eta)] with vt = v + eta/2,
// plus N (sh 3 eta / sh eta - 3); the sector constant is added separately.
Complex energy_root_term(const ChainSpec& spec,
                         const std::vector<Complex>& roots_v);

struct SectorEnergies {
  Complex c_pm = 0.0;   // constant calibrated on the first accepted level
  double spread = 0.0;  // worst per-level deviation of that constant
  std::vector<int> level_indices;
  std::vector<Complex> energies;       // root term + c_pm, per accepted level
  std::vector<Complex> direct;         // matrix-element energies, same order
  std::vector<std::vector<Complex>> roots;  // refined roots, same order
};

// Fits, refines, and energy-matches every level of a sector. The constant
// is measured on the first accepted level; spread across the others is the
// consistency check.
SectorEnergies sector_energies(const ChainSpec& spec,
                               const SectorConfig& sector,
                               const std::vector<SpectrumLevel>& levels,
                               TransferCache& cache, double fit_tol = 1e-8);

}  // namespace openxxz
