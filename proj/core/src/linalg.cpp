#include "openxxz/linalg.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace openxxz {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("embed: slot dimension < 1");
    d *= x;
  }
  return d;
}

void decompose(int idx, const std::vector<int>& dims, std::vector<int>& digits) {
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    digits[s] = idx % dims[s];
    idx /= dims[s];
  }
}

int compose(const std::vector<int>& dims, const std::vector<int>& digits) {
  int idx = 0;
  for (size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + digits[s];
  return idx;
}

}  // namespace

Matrix embed1(const Matrix& op, const std::vector<int>& dims, int p) {
  const int n = static_cast<int>(dims.size());
  if (p < 0 || p >= n) throw std::invalid_argument("embed1: slot out of range");
  if (op.rows() != dims[p] || op.cols() != dims[p])
    throw std::invalid_argument("embed1: operator does not match slot dimension");
  const int d = total_dim(dims);
  Matrix out = Matrix::Zero(d, d);
  std::vector<int> digits(n);
  for (int col = 0; col < d; ++col) {
    decompose(col, dims, digits);
    const int jp = digits[p];
    for (int ip = 0; ip < dims[p]; ++ip) {
      digits[p] = ip;
      out(compose(dims, digits), col) = op(ip, jp);
    }
    digits[p] = jp;
  }
  return out;
}

Matrix embed2(const Matrix& op, const std::vector<int>& dims, int p, int q) {
  const int n = static_cast<int>(dims.size());
  if (p < 0 || p >= n || q < 0 || q >= n || p == q)
    throw std::invalid_argument("embed2: bad slot pair");
  if (op.rows() != dims[p] * dims[q] || op.cols() != dims[p] * dims[q])
    throw std::invalid_argument("embed2: operator does not match slot dimensions");
  const int d = total_dim(dims);
  Matrix out = Matrix::Zero(d, d);
  std::vector<int> digits(n);
  for (int col = 0; col < d; ++col) {
    decompose(col, dims, digits);
    const int jp = digits[p], jq = digits[q];
    for (int ip = 0; ip < dims[p]; ++ip)
      for (int iq = 0; iq < dims[q]; ++iq) {
        digits[p] = ip;
        digits[q] = iq;
        out(compose(dims, digits), col) = op(ip * dims[q] + iq, jp * dims[q] + jq);
      }
    digits[p] = jp;
    digits[q] = jq;
  }
  return out;
}

EigenSystem eig(const Matrix& a, int max_dim) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig: matrix not square");
  if (a.rows() > max_dim) {
    std::ostringstream msg;
    msg << "eig: dimension " << a.rows() << " exceeds cap " << max_dim;
    throw std::invalid_argument(msg.str());
  }
  Eigen::ComplexEigenSolver<Matrix> ces(a, true);
  if (ces.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eig: QR iteration failed to converge (dim " << a.rows() << ", norm "
        << a.norm() << ", 30 iterations per row)";
    throw std::runtime_error(msg.str());
  }
  EigenSystem sys;
  sys.values = ces.eigenvalues();
  sys.right = ces.eigenvectors();

  Eigen::JacobiSVD<Matrix> svd(sys.right);
  const auto& sv = svd.singularValues();
  Matrix vinv;
  if (sv(sv.size() - 1) < 1e-12 * sv(0)) {
    vinv = sys.right.completeOrthogonalDecomposition().pseudoInverse();
    sys.pseudo_inverse_pairing = true;
  } else {
    vinv = sys.right.inverse();
  }
  sys.left = vinv.adjoint();
  return sys;
}

NullVector null_vector(const Matrix& a) {
  if (a.rows() < a.cols())
    throw std::invalid_argument("null_vector: system must have rows >= cols");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  NullVector nv;
  nv.v = svd.matrixV().col(a.cols() - 1);
  nv.residual = svd.singularValues()(a.cols() - 1);
  return nv;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
  const Complex lead = coeffs.back();
  if (lead == Complex(0.0, 0.0))
    throw std::invalid_argument("poly_roots: leading coefficient is zero");
  if (n == 1) return {-coeffs[0] / lead};

  Matrix comp = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Matrix> ces(comp, false);
  if (ces.info() != Eigen::Success)
    throw std::runtime_error("poly_roots: companion eigenproblem failed");
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = ces.eigenvalues()(i);
  return roots;
}

}  // namespace openxxz
