#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opflab/tensor.hpp"

#include <random>

using namespace opflab::tensor;

namespace {

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Mat basis_proj(int d, int i) {
  Mat m = Mat::Zero(d, d);
  m(i, i) = 1.0;
  return m;
}

// random matrix with small integer entries; products of such entries are
// exactly representable, so index identities hold bit-for-bit
Mat integer_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-4, 4);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

Mat random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  Mat i2 = Mat::Identity(2, 2);
  CHECK((kron(i2, i2) - Mat::Identity(4, 4)).norm() == 0.0);

  Mat d12 = diag2(1, 2), d34 = diag2(3, 4);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = 3;
  expect(1, 1) = 4;
  expect(2, 2) = 6;
  expect(3, 3) = 8;
  CHECK((kron(d12, d34) - expect).norm() == 0.0);

  // |0><0| ⊗ |1><1| = |01><01|
  Mat p = kron(basis_proj(2, 0), basis_proj(2, 1));
  Mat expect01 = Mat::Zero(4, 4);
  expect01(1, 1) = 1.0;
  CHECK((p - expect01).norm() == 0.0);
}

TEST_CASE("kron associativity is an index identity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = integer_matrix(2, 2, rng), b = integer_matrix(3, 3, rng), c = integer_matrix(2, 2, rng);
    CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() == 0.0);
  }
}

TEST_CASE("permute_factors basics") {
  std::mt19937_64 rng(7);
  Mat m = integer_matrix(4, 4, rng);
  CHECK((permute_factors(m, FactorShape{2, 2}, {0, 1}) - m).norm() == 0.0);

  // two qubit factors, swap: |01><01| -> |10><10|
  Mat p01 = Mat::Zero(4, 4);
  p01(1, 1) = 1.0;
  Mat p10 = Mat::Zero(4, 4);
  p10(2, 2) = 1.0;
  CHECK((permute_factors(p01, FactorShape{2, 2}, {1, 0}) - p10).norm() == 0.0);
}

TEST_CASE("permute_factors moves basis vectors as labelled") {
  // shape (2,3,2,3), perm (0,2,1,3): |0>|a>|1>|b> -> |0>|1>|a>|b>
  FactorShape shape{2, 3, 2, 3};
  int a = 2, b = 1;
  Vec v = Vec::Zero(shape.total());
  int idx_in = ((0 * 3 + a) * 2 + 1) * 3 + b;
  v(idx_in) = 1.0;
  Vec w = permute_factors(v, shape, {0, 2, 1, 3});
  int idx_out = ((0 * 2 + 1) * 3 + a) * 3 + b;
  CHECK(w(idx_out) == cplx(1.0, 0.0));
  CHECK(w.cwiseAbs().sum() == 1.0);
}

TEST_CASE("permute_factors composes") {
  std::mt19937_64 rng(11);
  FactorShape shape{2, 3, 2};
  Mat m = integer_matrix(12, 12, rng);
  std::vector<int> p1{1, 2, 0}, p2{2, 0, 1};
  // applying p1 then p2 equals the composed permutation p1 ∘ p2
  Mat lhs = permute_factors(permute_factors(m, shape, p1), FactorShape{3, 2, 2}, p2);
  std::vector<int> composed(3);
  for (int j = 0; j < 3; ++j) composed[j] = p1[p2[j]];
  Mat rhs = permute_factors(m, shape, composed);
  CHECK((lhs - rhs).norm() == 0.0);
}

TEST_CASE("partial_trace splits products and preserves the trace") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = random_hermitian(3, rng), b = random_hermitian(4, rng);
    Mat ab = kron(a, b);
    Mat ta = partial_trace(ab, FactorShape{3, 4}, {0});
    CHECK((ta - a * b.trace()).norm() < 1e-12 * std::max(1.0, ab.norm()));
    CHECK(std::abs((partial_trace(ab, FactorShape{3, 4}, {1}).trace() - ab.trace()).real()) < 1e-12);
  }
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  Mat rho = dyad(bell);
  Mat reduced = partial_trace(rho, FactorShape{2, 2}, {0});
  CHECK((reduced - 0.5 * Mat::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("partial_trace with keep=all is the identity") {
  std::mt19937_64 rng(5);
  Mat m = integer_matrix(6, 6, rng);
  CHECK((partial_trace(m, FactorShape{2, 3}, {0, 1}) - m).norm() == 0.0);
}

TEST_CASE("exchange projectors") {
  for (int d : {2, 3, 4, 9}) {
    auto [s, a] = exchange_projectors(d);
    CHECK((s + a - Mat::Identity(d * d, d * d)).norm() == 0.0);
    CHECK(std::abs(s.trace().real() - d * (d + 1) / 2.0) < 1e-12);
    CHECK(std::abs(a.trace().real() - d * (d - 1) / 2.0) < 1e-12);
    CHECK((s * a).norm() < 1e-13);
    CHECK((s * s - s).norm() < 1e-13);
    CHECK((a * a - a).norm() < 1e-13);
  }
  // S|01> = (|01> + |10>)/2
  auto [s, a] = exchange_projectors(2);
  Vec v01 = Vec::Zero(4);
  v01(1) = 1.0;
  Vec expect = Vec::Zero(4);
  expect(1) = expect(2) = 0.5;
  CHECK((Vec(s * v01) - expect).norm() == 0.0);
}

TEST_CASE("hermitian_spectrum fixed cases") {
  Mat d31 = diag2(3, 1);
  auto s = hermitian_spectrum(d31);
  CHECK(s.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));

  Mat x(2, 2);
  x << 0, 1, 1, 0;
  auto sx = hermitian_spectrum(x);
  CHECK(sx.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1.0));

  // projector eigenvalues lie in {0,1}
  Vec v(3);
  v << 1, cplx(0, 1), 1;
  v.normalize();
  auto sp = hermitian_spectrum(dyad(v));
  for (int i = 0; i < 3; ++i) {
    double ev = sp.eigenvalues(i);
    CHECK(std::min(std::abs(ev), std::abs(ev - 1.0)) < 1e-12);
  }
}

TEST_CASE("hermitian_spectrum reconstructs up to dimension 81") {
  std::mt19937_64 rng(17);
  for (int d : {2, 5, 16, 81}) {
    Mat m = random_hermitian(d, rng);
    auto s = hermitian_spectrum(m);
    Mat rebuilt = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) rebuilt += s.eigenvalues(i) * dyad(Vec(s.eigenvectors.col(i)));
    CHECK((rebuilt - m).norm() < 1e-10 * std::max(1.0, m.norm()));
    for (int i = 0; i + 1 < d; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i + 1));
  }
}

TEST_CASE("hermitian_spectrum rejects non-Hermitian input") {
  Mat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_spectrum(m), std::invalid_argument);
}

TEST_CASE("random_pure_state determinism and d=1 phase fix") {
  Vec one = random_pure_state(1, 123);
  CHECK(std::abs(one(0) - cplx(1.0, 0.0)) < 1e-15);

  Vec a = random_pure_state(5, 99), b = random_pure_state(5, 99);
  CHECK((a - b).norm() == 0.0);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
  CHECK((random_pure_state(5, 100) - a).norm() > 1e-3);
}

TEST_CASE("shape mismatches are rejected") {
  std::mt19937_64 rng(23);
  Mat m = integer_matrix(6, 6, rng);
  CHECK_THROWS_AS(permute_factors(m, FactorShape{2, 2}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_factors(m, FactorShape{2, 3}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(permute_factors(m, FactorShape{2, 3}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(m, FactorShape{2, 2}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(m, FactorShape{2, 3}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(m, FactorShape{2, 3}, {1, 0}), std::invalid_argument);
}

TEST_CASE("random_unitary is unitary and deterministic") {
  for (int d : {2, 3, 9}) {
    Mat u = random_unitary(d, 31);
    CHECK((u * u.adjoint() - Mat::Identity(d, d)).norm() < 1e-12);
    CHECK((u - random_unitary(d, 31)).norm() == 0.0);
  }
}

TEST_CASE("random_pure_state matches the Haar first moment") {
  // E |<0|psi>|^2 = 1/d for Haar rays; Monte-Carlo oracle at d=2
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Vec psi = random_pure_state(2, 1000 + i);
    sum += std::norm(psi(0));
  }
  CHECK(std::abs(sum / n - 0.5) < 0.02);
}
