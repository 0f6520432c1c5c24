#include "fermicorr/densmat.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "fermicorr/rng.hpp"

namespace fermicorr {

TensorShape::TensorShape(std::initializer_list<int> d)
    : TensorShape(std::vector<int>(d)) {}

TensorShape::TensorShape(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) throw ValidationError("TensorShape: empty factor list");
  for (int x : dims)
    if (x <= 0) throw ValidationError("TensorShape: non-positive dimension");
}

int TensorShape::total_dim() const {
  int n = 1;
  for (int x : dims) n *= x;
  return n;
}

HermitianOperator::HermitianOperator(TensorShape s, Matrix m)
    : shape(std::move(s)), entries(std::move(m)) {
  if (entries.rows() != entries.cols())
    throw ValidationError("HermitianOperator: matrix not square");
  if (entries.rows() != shape.total_dim())
    throw ValidationError("HermitianOperator: shape/dimension mismatch");
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermTol)
    throw ValidationError("HermitianOperator: not Hermitian, max deviation " +
                          std::to_string(dev));
}

DensityMatrix::DensityMatrix(TensorShape shape, Matrix entries)
    : shape_(std::move(shape)), mat_(std::move(entries)) {
  HermitianOperator check(shape_, mat_);  // hermiticity + shape
  mat_ = raw::hermitize(mat_);
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr));
  const double lo = raw::min_eigenvalue(mat_);
  if (lo < -kPsdTol)
    throw ValidationError("DensityMatrix: min eigenvalue " +
                          std::to_string(lo));
}

DensityMatrix pure_state(TensorShape shape, const Vector& amplitudes) {
  if (amplitudes.size() != shape.total_dim())
    throw ValidationError("pure_state: amplitude length mismatch");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > kTraceTol)
    throw ValidationError("pure_state: norm " + std::to_string(n));
  Matrix m = amplitudes * amplitudes.adjoint();
  return DensityMatrix(std::move(shape), std::move(m));
}

namespace raw {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(herm),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double entropy(const Matrix& herm_psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(herm_psd),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > kEigClamp) s -= x * std::log(x);
  }
  return s < 0.0 ? 0.0 : s;
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> er(hermitize(rho));
  double tr_rlogr = 0.0;
  for (int i = 0; i < er.eigenvalues().size(); ++i) {
    const double x = er.eigenvalues()(i);
    if (x > kEigClamp) tr_rlogr += x * std::log(x);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(sigma));
  double tr_rlogs = 0.0;
  double kernel_weight = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double s = es.eigenvalues()(k);
    const Vector v = es.eigenvectors().col(k);
    const double w = std::real(v.dot(rho * v));
    if (s > kEigClamp) {
      tr_rlogs += w * std::log(s);
    } else {
      kernel_weight += std::max(w, 0.0);
    }
  }
  if (kernel_weight > 1e-10)
    return std::numeric_limits<double>::infinity();
  const double val = tr_rlogr - tr_rlogs;
  return val < 0.0 ? 0.0 : val;
}

namespace {

// Row-major composite index: factor 0 is the most significant digit, matching
// kron(A, B) layout.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> st(dims.size(), 1);
  for (int f = static_cast<int>(dims.size()) - 2; f >= 0; --f)
    st[f] = st[f + 1] * dims[f + 1];
  return st;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int nf = static_cast<int>(dims.size());
  if (keep.empty()) throw ValidationError("partial_trace: empty keep set");
  std::vector<bool> kept(nf, false);
  int prev = -1;
  for (int f : keep) {
    if (f < 0 || f >= nf || kept[f])
      throw ValidationError("partial_trace: invalid factor index");
    if (f <= prev)
      throw ValidationError("partial_trace: keep indices must be ascending");
    prev = f;
    kept[f] = true;
  }
  std::vector<int> trace_factors;
  for (int f = 0; f < nf; ++f)
    if (!kept[f]) trace_factors.push_back(f);

  const std::vector<int> st = strides_of(dims);
  int keep_dim = 1, trace_dim = 1;
  for (int f : keep) keep_dim *= dims[f];
  for (int f : trace_factors) trace_dim *= dims[f];

  // Enumerate composite indices of the kept and traced subsystems.
  auto expand = [&](const std::vector<int>& factors, int count) {
    std::vector<int> offsets(count, 0);
    for (int idx = 0; idx < count; ++idx) {
      int rem = idx, off = 0;
      for (int pos = static_cast<int>(factors.size()) - 1; pos >= 0; --pos) {
        const int f = factors[pos];
        off += (rem % dims[f]) * st[f];
        rem /= dims[f];
      }
      offsets[idx] = off;
    }
    return offsets;
  };
  const std::vector<int> keep_off = expand(keep, keep_dim);
  const std::vector<int> trace_off = expand(trace_factors, trace_dim);

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (int i = 0; i < keep_dim; ++i)
    for (int j = 0; j < keep_dim; ++j) {
      Complex acc(0, 0);
      for (int t = 0; t < trace_dim; ++t)
        acc += m(keep_off[i] + trace_off[t], keep_off[j] + trace_off[t]);
      out(i, j) = acc;
    }
  return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         int factor) {
  const int nf = static_cast<int>(dims.size());
  if (factor < 0 || factor >= nf)
    throw ValidationError("partial_transpose: invalid factor index");
  const std::vector<int> st = strides_of(dims);
  const int n = static_cast<int>(m.rows());
  const int d = dims[factor];
  const int s = st[factor];

  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const int fi = (i / s) % d;
    for (int j = 0; j < n; ++j) {
      const int fj = (j / s) % d;
      const int ii = i + (fj - fi) * s;
      const int jj = j + (fi - fj) * s;
      out(ii, jj) = m(i, j);
    }
  }
  return out;
}

double trace_norm(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(herm),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace raw

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  return raw::entropy(rho.mat()) * log_scale(base);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        LogBase base) {
  if (!(rho.shape() == sigma.shape()))
    throw ValidationError("relative_entropy: shape mismatch");
  return raw::relative_entropy(rho.mat(), sigma.mat()) * log_scale(base);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  Matrix m = raw::partial_trace(rho.mat(), rho.shape().dims, keep);
  std::vector<int> dims;
  for (int f : keep) dims.push_back(rho.shape().dims[f]);
  return DensityMatrix(TensorShape(dims), std::move(m));
}

HermitianOperator partial_transpose(const DensityMatrix& rho, int factor) {
  Matrix m = raw::partial_transpose(rho.mat(), rho.shape().dims, factor);
  return HermitianOperator(rho.shape(), std::move(m));
}

double trace_norm(const HermitianOperator& op) {
  return raw::trace_norm(op.entries);
}

Matrix random_unitary(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Complex(1, 0));
  }
  return q;
}

Matrix random_hermitian_unit(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Matrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (norm > 0) h /= norm;
  return h;
}

Matrix random_positive(Rng& rng, int dim, bool real_entries) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = real_entries ? Complex(rng.normal(), 0) : rng.complex_normal();
  Matrix w = g * g.adjoint();
  return w / w.trace().real();
}

}  // namespace fermicorr
