#pragma once

#include <complex>
#include <Eigen/Dense>

namespace openxxz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/* Hyperbolic shorthands; everything in this library is parametrized
   through sh/ch of complex arguments. */
inline Complex sh(Complex z) { return std::sinh(z); }
inline Complex ch(Complex z) { return std::cosh(z); }

/*
 * Spin label held as 2j so half-odd values stay exact.  The fused space for
 * spin j is the symmetric subspace of 2j qubits, of dimension 2j+1.
 */
struct Spin {
  int twice = 1;

  constexpr int qubits() const { return twice; }
  constexpr int dim() const { return twice + 1; }
  double value() const { return 0.5 * twice; }
};

inline constexpr Spin spin_half{1};
inline constexpr Spin spin_one{2};

}  // namespace openxxz
