#include "opflab/tensor.hpp"

#include <algorithm>
#include <random>

namespace opflab::tensor {

double frob_norm(const Mat& m) { return m.norm(); }

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

Mat dyad(const Vec& v) { return v * v.adjoint(); }

Vec tensor_square(const Vec& v) { return kron(v, v); }

Mat dyad_square(const Vec& v) {
  Vec vv = tensor_square(v);
  return vv * vv.adjoint();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace {

void check_shape(const FactorShape& shape, Eigen::Index dim) {
  if (shape.total() != dim)
    throw std::invalid_argument("factor shape does not match matrix dimension");
}

// For each flat input index, the flat index it maps to after reordering
// factors so that output slot j carries input factor perm[j].
std::vector<long> permutation_index_map(const FactorShape& shape, const std::vector<int>& perm) {
  const int k = shape.factors();
  if (static_cast<int>(perm.size()) != k)
    throw std::invalid_argument("permutation length does not match factor count");
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p]) throw std::invalid_argument("not a permutation of factor indices");
    seen[p] = true;
  }
  // strides of the input shape
  std::vector<long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * shape.dims[i + 1];
  // strides of the output shape (dims'[j] = dims[perm[j]])
  std::vector<long> out_stride(k, 1);
  for (int j = k - 2; j >= 0; --j) out_stride[j] = out_stride[j + 1] * shape.dims[perm[j + 1]];

  const long n = shape.total();
  std::vector<long> map(n);
  std::vector<int> digits(k);
  for (long idx = 0; idx < n; ++idx) {
    long rest = idx;
    for (int i = 0; i < k; ++i) {
      digits[i] = static_cast<int>(rest / stride[i]);
      rest %= stride[i];
    }
    long out = 0;
    for (int j = 0; j < k; ++j) out += digits[perm[j]] * out_stride[j];
    map[idx] = out;
  }
  return map;
}

}  // namespace

Mat permute_factors(const Mat& m, const FactorShape& shape, const std::vector<int>& perm) {
  check_shape(shape, m.rows());
  if (m.rows() != m.cols()) throw std::invalid_argument("permute_factors expects a square matrix");
  auto map = permutation_index_map(shape, perm);
  Mat out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

Vec permute_factors(const Vec& v, const FactorShape& shape, const std::vector<int>& perm) {
  check_shape(shape, v.size());
  auto map = permutation_index_map(shape, perm);
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(map[i]) = v(i);
  return out;
}

Mat partial_trace(const Mat& m, const FactorShape& shape, const std::vector<int>& keep) {
  check_shape(shape, m.rows());
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace expects a square matrix");
  const int k = shape.factors();
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= k) throw std::invalid_argument("keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw std::invalid_argument("keep indices must be strictly increasing");
  }
  std::vector<int> traced;
  for (int i = 0; i < k; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  std::vector<long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * shape.dims[i + 1];

  long keep_dim = 1;
  for (int i : keep) keep_dim *= shape.dims[i];
  long traced_dim = 1;
  for (int i : traced) traced_dim *= shape.dims[i];

  // flat index of (kept multi-index a, traced multi-index t) in the input
  auto input_index = [&](long a, long t) {
    long idx = 0;
    for (int pos = static_cast<int>(keep.size()) - 1; pos >= 0; --pos) {
      int f = keep[pos];
      idx += (a % shape.dims[f]) * stride[f];
      a /= shape.dims[f];
    }
    for (int pos = static_cast<int>(traced.size()) - 1; pos >= 0; --pos) {
      int f = traced[pos];
      idx += (t % shape.dims[f]) * stride[f];
      t /= shape.dims[f];
    }
    return idx;
  };

  Mat out = Mat::Zero(keep_dim, keep_dim);
  for (long a = 0; a < keep_dim; ++a)
    for (long b = 0; b < keep_dim; ++b) {
      cplx s = 0.0;
      for (long t = 0; t < traced_dim; ++t) s += m(input_index(a, t), input_index(b, t));
      out(a, b) = s;
    }
  return out;
}

Mat swap_op(int d) {
  Mat w = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w(j * d + i, i * d + j) = 1.0;
  return w;
}

ExchangeProjectors exchange_projectors(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  Mat id = Mat::Identity(d * d, d * d);
  Mat w = swap_op(d);
  return {0.5 * (id + w), 0.5 * (id - w)};
}

Spectrum hermitian_spectrum(const Mat& m, double herm_tol) {
  if (!is_hermitian(m, herm_tol)) throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
  const Eigen::Index n = m.rows();
  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    s.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return s;
}

Vec random_pure_state(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    v(i) = cplx(re, im);
  }
  v.normalize();
  // fix the global phase on the largest-magnitude component
  Eigen::Index imax;
  v.cwiseAbs().maxCoeff(&imax);
  cplx z = v(imax);
  v *= std::conj(z) / std::abs(z);
  return v;
}

Mat random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // normalize column phases so the distribution is Haar
  for (int j = 0; j < d; ++j) {
    cplx z = r(j, j);
    q.col(j) *= z / std::abs(z);
  }
  return q;
}

}  // namespace opflab::tensor
