#pragma once

#include <initializer_list>
#include <vector>

#include "fermicorr/types.hpp"

namespace fermicorr {

inline constexpr double kHermTol = 1e-12;   // entrywise |M - M†|
inline constexpr double kTraceTol = 1e-10;  // |Tr - 1|
inline constexpr double kPsdTol = 1e-10;    // min eigenvalue >= -kPsdTol
inline constexpr double kEigClamp = 1e-12;  // eigenvalues below are 0 for logs

// Ordered local dimensions of the tensor factors; product equals the matrix
// dimension of any operator carrying this shape.
struct TensorShape {
  std::vector<int> dims;

  TensorShape(std::initializer_list<int> d);
  explicit TensorShape(std::vector<int> d);

  int total_dim() const;
  int factor_count() const { return static_cast<int>(dims.size()); }
  bool operator==(const TensorShape& o) const { return dims == o.dims; }
};

struct HermitianOperator {
  TensorShape shape;
  Matrix entries;

  HermitianOperator(TensorShape s, Matrix m);
};

class DensityMatrix {
 public:
  DensityMatrix(TensorShape shape, Matrix entries);

  const Matrix& mat() const { return mat_; }
  const TensorShape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  HermitianOperator as_operator() const { return {shape_, mat_}; }

 private:
  TensorShape shape_;
  Matrix mat_;
};

DensityMatrix pure_state(TensorShape shape, const Vector& amplitudes);

double von_neumann_entropy(const DensityMatrix& rho,
                           LogBase base = LogBase::Natural);

// Tr[rho (log rho - log sigma)]; +infinity when supp(rho) is not contained in
// supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        LogBase base = LogBase::Natural);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

HermitianOperator partial_transpose(const DensityMatrix& rho, int factor);

double trace_norm(const HermitianOperator& op);

// Unvalidated matrix kernels shared with the optimizers. The public
// operations above wrap these with the DensityMatrix invariant checks.
namespace raw {

Matrix hermitize(const Matrix& m);
double min_eigenvalue(const Matrix& herm);
Matrix kron(const Matrix& a, const Matrix& b);

double entropy(const Matrix& herm_psd);
double relative_entropy(const Matrix& rho, const Matrix& sigma);
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         int factor);
double trace_norm(const Matrix& herm);

}  // namespace raw

}  // namespace fermicorr
