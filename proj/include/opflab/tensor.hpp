#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace opflab::tensor {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Ordered factor dimensions of a tensor-product space. The flat index of a
/// basis vector is row-major: index = i_0*(d_1*...*d_{k-1}) + i_1*(...) + ...
struct FactorShape {
  std::vector<int> dims;

  FactorShape() = default;
  FactorShape(std::initializer_list<int> d) : dims(d) {}
  explicit FactorShape(std::vector<int> d) : dims(std::move(d)) {}

  int factors() const { return static_cast<int>(dims.size()); }
  long total() const {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
  }
};

double frob_norm(const Mat& m);
bool is_hermitian(const Mat& m, double tol = 1e-12);

/// |v><v|
Mat dyad(const Vec& v);
/// v ⊗ v
Vec tensor_square(const Vec& v);
/// |v><v| ⊗ |v><v| = (v⊗v)(v⊗v)†
Mat dyad_square(const Vec& v);

/// Kronecker product; dimensions multiply.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

/// Conjugate m by the basis permutation that places input factor perm[j] at
/// output slot j (0-based). Example: shape (2,3,2,3), perm (0,2,1,3) maps
/// |x0>|x1>|x2>|x3> to |x0>|x2>|x1>|x3>.
Mat permute_factors(const Mat& m, const FactorShape& shape, const std::vector<int>& perm);
Vec permute_factors(const Vec& v, const FactorShape& shape, const std::vector<int>& perm);

/// Trace over all factors not listed in `keep` (0-based, strictly increasing).
/// The output lives on the kept factors in their original order.
Mat partial_trace(const Mat& m, const FactorShape& shape, const std::vector<int>& keep);

struct ExchangeProjectors {
  Mat sym;      // (I + SWAP)/2
  Mat antisym;  // (I - SWAP)/2
};

/// SWAP|i,j> = |j,i> on C^d ⊗ C^d.
Mat swap_op(int d);
ExchangeProjectors exchange_projectors(int d);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  Mat eigenvectors;             // columns, matching order
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order. Within a near-degenerate cluster (gap < 1e-9) the
/// eigenvector basis is an arbitrary orthonormal basis of the cluster.
/// Throws std::invalid_argument for non-Hermitian input.
Spectrum hermitian_spectrum(const Mat& m, double herm_tol = 1e-12);

/// Haar-distributed random ray, deterministic for a fixed seed. The global
/// phase is fixed so the largest-magnitude component is real positive.
Vec random_pure_state(int d, std::uint64_t seed);

/// Haar-distributed random unitary (QR of a Ginibre matrix with phase fix).
Mat random_unitary(int d, std::uint64_t seed);

}  // namespace opflab::tensor
