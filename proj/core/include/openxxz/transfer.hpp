#pragma once

#include <map>
#include <utility>
#include <vector>

#include "openxxz/boundary.hpp"
#include "openxxz/linalg.hpp"
#include "openxxz/types.hpp"

namespace openxxz {

struct ChainSpec {
  int n_sites = 1;
  Spin spin_s = spin_half;
  Complex eta;
  BoundaryParams boundary;

  int site_dim() const { return spin_s.dim(); }
  int chain_dim() const {
    int d = 1;
    for (int i = 0; i < n_sites; ++i) d *= site_dim();
    return d;
  }
};

struct SpectrumLevel {
  int index = 0;
  Complex lambda0;
  Vector right;
  Vector left;
  bool degenerate_flag = false;
};

// Monodromy T(u) and its reversed-order partner on the aux x chain space.
Matrix monodromy(Spin j, const ChainSpec& spec, Complex u);
Matrix hat_monodromy(Spin j, const ChainSpec& spec, Complex u);

// Transfer matrix from caller-supplied one-pair R and boundary matrices;
// traces out the auxiliary slot. Shared by the isometry and gauge paths.
Matrix transfer_from_parts(const Matrix& r_pair, const Matrix& km,
                           const Matrix& kp, int n_sites, int d_aux,
                           int d_site);

// tr_a K+(u) T(u) K-(u) That(u) on the reduced spaces.
Matrix transfer(Spin j, const ChainSpec& spec, Complex u);

// Scalar factor of the fused R with a half-spin leg; empty product at s=1/2.
Complex g_scalar(const ChainSpec& spec, Complex u);

// t(u) / g(u)^{2N} for the half-spin auxiliary space. Near zeros of g the
// value is recovered by Richardson extrapolation over symmetric offsets.
Matrix rescaled_fundamental(const ChainSpec& spec, Complex u);

// Quantum-determinant coefficient of the fusion hierarchy.
Complex delta_fn(const ChainSpec& spec, Complex u);

// Relative residuals of operator identities.
double check_commutativity(const ChainSpec& spec, Spin j1, Spin j2, Complex u1,
                           Complex u2);
double check_fusion_hierarchy(const ChainSpec& spec, Spin j, Complex u);
double check_periodicity(const ChainSpec& spec, Complex u);
double check_crossing(const ChainSpec& spec, Complex u);
double check_initial(const ChainSpec& spec);
double check_semiclassical(const ChainSpec& spec, Complex u);
double check_asymptotic(const ChainSpec& spec, double u_large);

// Complete eigensystem of the rescaled fundamental transfer matrix at a
// generic base point; levels sorted by eigenvalue for determinism.
std::vector<SpectrumLevel> spectrum(const ChainSpec& spec,
                                    Complex u0 = Complex(0.83, 0.31),
                                    int max_dim = 256);

// Eigenvalue function on a fixed level (left^H t~(u) right).
Complex lambda_of(const ChainSpec& spec, const SpectrumLevel& level, Complex u);

// Memoizes rescaled transfer matrices by spectral-parameter bit pattern.
class TransferCache {
 public:
  explicit TransferCache(const ChainSpec& spec) : spec_(spec) {}
  const Matrix& at(Complex u);
  Complex lambda(const SpectrumLevel& level, Complex u);
  const ChainSpec& spec() const { return spec_; }

 private:
  ChainSpec spec_;
  std::map<std::pair<unsigned long long, unsigned long long>, Matrix> cache_;
};

}  // namespace openxxz
