#include <complex>
#include <random>

#include "doctest.h"
#include "openxxz/fusion.hpp"
#include "openxxz/transfer.hpp"

using namespace openxxz;

namespace {

BoundaryParams table_params() {
  BoundaryParams p;
  p.alpha_minus = Complex(0.0, 0.7);
  p.beta_minus = Complex(0.2, 0.0);
  p.theta_minus = Complex(0.0, 0.5);
  p.alpha_plus = Complex(0.0, 1.2);
  p.beta_plus = Complex(-0.2, 0.0);
  p.theta_plus = Complex(0.0, -1.1);
  return p;
}

ChainSpec table_spec(int n, Spin s) {
  ChainSpec spec;
  spec.n_sites = n;
  spec.spin_s = s;
  spec.eta = Complex(0.0, 0.3);
  spec.boundary = table_params();
  return spec;
}

BoundaryParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  auto c = [&]() { return Complex(d(rng), d(rng)); };
  BoundaryParams p;
  p.alpha_minus = c();
  p.beta_minus = c();
  p.theta_minus = c();
  p.alpha_plus = c();
  p.beta_plus = c();
  p.theta_plus = c();
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("transfer");

TEST_CASE("single site transfer matches direct trace") {
  ChainSpec spec = table_spec(1, spin_half);
  const Complex u(0.37, 0.18);
  const Matrix r = fundamental_r(u, spec.eta);
  const Matrix km = kminus_fundamental(u, spec.eta, spec.boundary);
  const Matrix kp = kplus(spin_half, u, spec.eta, spec.boundary);
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix m = kron(kp, id2) * r * kron(km, id2) * r;
  Matrix direct = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) direct += m.block(2 * a, 2 * a, 2, 2);
  const Matrix t = transfer(spin_half, spec, u);
  CHECK((t - direct).norm() < 1e-13 * direct.norm());

  const Matrix tm = monodromy(spin_half, spec, u);
  const Matrix th = hat_monodromy(spin_half, spec, u);
  CHECK((tm - r).norm() < 1e-14 * r.norm());
  CHECK((th - r).norm() < 1e-14 * r.norm());
}

TEST_CASE("transfer matrices commute at different spectral parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    ChainSpec spec = table_spec(2, spin_half);
    spec.eta = Complex(0.2 * d(rng), 0.3 + 0.2 * d(rng));
    spec.boundary = random_params(rng);
    const Complex u1(d(rng), d(rng));
    const Complex u2(d(rng), d(rng));
    CHECK(check_commutativity(spec, spin_half, spin_half, u1, u2) < 1e-11);
  }

  ChainSpec spec = table_spec(2, spin_one);
  const Complex u1(0.41, -0.23);
  const Complex u2(-0.58, 0.31);
  CHECK(check_commutativity(spec, spin_half, spin_half, u1, u2) < 1e-11);
  CHECK(check_commutativity(spec, spin_half, spin_one, u1, u2) < 1e-11);
  CHECK(check_commutativity(spec, spin_one, Spin{3}, u1, u2) < 1e-11);
}

TEST_CASE("fusion hierarchy closes with unit leading coefficient") {
  // j = 1 on one site resolves the normalization of the dressed K+.
  ChainSpec spec = table_spec(1, spin_half);
  CHECK(check_fusion_hierarchy(spec, spin_one, Complex(0.43, 0.17)) < 1e-11);

  spec = table_spec(2, spin_half);
  CHECK(check_fusion_hierarchy(spec, spin_one, Complex(0.43, 0.17)) < 1e-10);
  CHECK(check_fusion_hierarchy(spec, Spin{3}, Complex(-0.29, 0.37)) < 1e-10);

  spec = table_spec(2, spin_one);
  CHECK(check_fusion_hierarchy(spec, spin_one, Complex(0.36, -0.21)) < 1e-10);
  CHECK(check_fusion_hierarchy(spec, Spin{3}, Complex(0.52, 0.11)) < 1e-9);

  spec = table_spec(1, Spin{3});
  CHECK(check_fusion_hierarchy(spec, spin_one, Complex(0.61, 0.29)) < 1e-10);
}

TEST_CASE("rescaled transfer satisfies the five scalar properties") {
  const Complex u(0.27, 0.14);
  for (Spin s : {spin_half, spin_one, Spin{3}}) {
    ChainSpec spec = table_spec(2, s);
    CHECK(check_periodicity(spec, u) < 1e-10);
    CHECK(check_crossing(spec, u) < 1e-10);
    CHECK(check_initial(spec) < 1e-10);
    CHECK(check_asymptotic(spec, 12.0) < 1e-8);

    ChainSpec cl = spec;
    cl.eta = 0.0;
    CHECK(check_semiclassical(cl, Complex(0.37, 0.21)) < 1e-12);
  }

  ChainSpec spec = table_spec(3, spin_one);
  CHECK(check_periodicity(spec, u) < 1e-10);
  CHECK(check_crossing(spec, u) < 1e-10);
  CHECK(check_initial(spec) < 1e-10);
  CHECK(check_asymptotic(spec, 12.0) < 1e-8);
}

TEST_CASE("spectrum is biorthonormal and consistent with traces") {
  ChainSpec spec = table_spec(2, spin_one);
  const Complex u0(0.83, 0.31);
  const auto levels = spectrum(spec, u0);
  REQUIRE(levels.size() == 9);

  const Matrix t0 = rescaled_fundamental(spec, u0);
  Complex sum = 0.0;
  for (const auto& lv : levels) {
    sum += lv.lambda0;
    CHECK(std::abs(lv.left.dot(lv.right) - 1.0) < 1e-10);
    CHECK((t0 * lv.right - lv.lambda0 * lv.right).norm() < 1e-9 * t0.norm());
  }
  CHECK(std::abs(sum - t0.trace()) < 1e-9 * t0.norm());

  const Complex u1(0.12, -0.44);
  const Matrix t1 = rescaled_fundamental(spec, u1);
  Complex sum1 = 0.0;
  for (const auto& lv : levels) sum1 += lambda_of(spec, lv, u1);
  CHECK(std::abs(sum1 - t1.trace()) < 1e-9 * t1.norm());

  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    const Complex a = levels[i].lambda0, b = levels[i + 1].lambda0;
    CHECK((a.real() < b.real() ||
           (a.real() == b.real() && a.imag() <= b.imag())));
  }
}

TEST_CASE("eigenvalue functions inherit the scalar properties") {
  ChainSpec spec = table_spec(2, spin_one);
  const auto levels = spectrum(spec);
  TransferCache cache(spec);
  const Complex u(0.21, 0.09);
  const auto& lv = levels[3];
  const Complex a = cache.lambda(lv, u);
  const Complex b = cache.lambda(lv, u + Complex(0.0, kPi));
  const Complex c = cache.lambda(lv, -u - spec.eta);
  CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
  CHECK(std::abs(a - c) < 1e-9 * std::abs(a));
  CHECK(std::abs(cache.lambda(lv, u) - lambda_of(spec, lv, u)) == 0.0);
}

TEST_CASE("cache reuses previously built matrices") {
  ChainSpec spec = table_spec(2, spin_half);
  TransferCache cache(spec);
  const Complex u(0.33, 0.27);
  const Matrix* first = &cache.at(u);
  const Matrix* second = &cache.at(u);
  CHECK(first == second);
  CHECK((*first - rescaled_fundamental(spec, u)).norm() == 0.0);
}

TEST_SUITE_END();
