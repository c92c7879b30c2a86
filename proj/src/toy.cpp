#include "opflab/toy.hpp"

#include "opflab/nnls.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace opflab::toy {

using tensor::cplx;
using tensor::dyad;
using tensor::dyad_square;
using tensor::FactorShape;
using tensor::kron;
using tensor::partial_trace;
using tensor::permute_factors;

namespace {

// exchange projectors are requested in tight loops; node-stable map keeps the
// returned references valid while the cache grows
const Mat& cached_projector(int d, bool sym) {
  static std::map<std::pair<int, bool>, Mat> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(d, sym);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto pair = tensor::exchange_projectors(d);
    it = cache.emplace(key, sym ? pair.sym : pair.antisym).first;
  }
  return it->second;
}

const Mat& sym_projector(int d) { return cached_projector(d, true); }
const Mat& antisym_projector(int d) { return cached_projector(d, false); }

double sym_trace(int d) { return 0.5 * d * (d + 1); }

// Copy order of global objects is A1,B1,A2,B2. The ⋆-product algebra uses
// A1,A2,B1,B2; the two orders differ by swapping the middle factors.
Mat algebra_to_global(const Mat& m, int da, int db) {
  return permute_factors(m, FactorShape{da, da, db, db}, {0, 2, 1, 3});
}

Mat global_to_algebra(const Mat& m, int da, int db) {
  return permute_factors(m, FactorShape{da, db, da, db}, {0, 2, 1, 3});
}

Mat reconstruct_terms(int d, const Terms& terms) {
  Mat m = Mat::Zero(d * d, d * d);
  for (const auto& t : terms) m += t.weight * dyad_square(t.vec);
  return m;
}

Terms scaled_terms(const Terms& terms, double c) {
  Terms out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    double w = t.weight * c;
    if (w > 1e-15) out.push_back({w, t.vec});
  }
  return out;
}

void append_terms(Terms& dst, const Terms& src, double c) {
  for (const auto& t : src) {
    double w = t.weight * c;
    if (w > 1e-15) dst.push_back({w, t.vec});
  }
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
  return solver.eigenvalues().minCoeff();
}

// v = (I ⊗ <phi|) x for x in C^{da*db}, phi in C^{db}
Vec contract_b(const Vec& x, const Vec& phi, int da, int db) {
  Vec v = Vec::Zero(da);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) v(a) += x(a * db + b) * std::conj(phi(b));
  return v;
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) { return std::mt19937_64(seed + trial); }

Vec haar_state(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::vector<Vec> mub_vectors(int d) {
  if (!is_prime(d)) throw NotPrime(d);
  std::vector<Vec> out;
  if (d == 2) {
    const double s = 1.0 / std::numbers::sqrt2;
    Vec z0(2), z1(2), xp(2), xm(2), yp(2), ym(2);
    z0 << 1, 0;
    z1 << 0, 1;
    xp << s, s;
    xm << s, -s;
    yp << s, cplx(0, s);
    ym << s, cplx(0, -s);
    return {z0, z1, xp, xm, yp, ym};
  }
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    out.push_back(e);
  }
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (int b = 0; b < d; ++b)
    for (int i = 0; i < d; ++i) {
      Vec v(d);
      for (int k = 0; k < d; ++k) {
        long exponent = (static_cast<long>(b) * k * k + static_cast<long>(i) * k) % d;
        double angle = 2.0 * std::numbers::pi * exponent / d;
        v(k) = inv * cplx(std::cos(angle), std::sin(angle));
      }
      out.push_back(v);
    }
  return out;
}

Terms symmetric_unit_design(int d) {
  if (d < 2) throw std::invalid_argument("symmetric_unit_design: d must be at least 2");
  if (is_prime(d)) {
    Terms terms;
    for (const auto& v : mub_vectors(d)) terms.push_back({0.5, v});
    return terms;
  }
  if (d > 9) throw std::invalid_argument("symmetric_unit_design: composite d > 9 not supported");
  const int q = 3;
  Terms terms;
  // pair superpositions (e_j + w^t e_k)/sqrt(2)
  const double wb = 2.0 / (q * (d - 2));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k)
      for (int t = 0; t < q; ++t) {
        Vec v = Vec::Zero(d);
        double angle = 2.0 * std::numbers::pi * t / q;
        v(j) = 1.0 / std::numbers::sqrt2;
        v(k) = cplx(std::cos(angle), std::sin(angle)) / std::numbers::sqrt2;
        terms.push_back({wb, v});
      }
  // uniform-magnitude vectors with phases over Z_q^d; the first phase is
  // fixed to 0 (global phase) and the weight absorbs the factor q
  if (d > 3) {
    long count = 1;
    for (int i = 1; i < d; ++i) count *= q;
    const double wc = q * static_cast<double>(d) * d * (d - 3) / (2.0 * (d - 2) * std::pow((double)q, d));
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<int> theta(d, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rest = idx;
      for (int i = 1; i < d; ++i) {
        theta[i] = static_cast<int>(rest % q);
        rest /= q;
      }
      Vec v(d);
      for (int k = 0; k < d; ++k) {
        double angle = 2.0 * std::numbers::pi * theta[k] / q;
        v(k) = inv * cplx(std::cos(angle), std::sin(angle));
      }
      terms.push_back({wc, v});
    }
  }
  return terms;
}

std::vector<std::pair<double, Vec>> maximally_mixed_ensemble(int d) {
  Terms design = symmetric_unit_design(d);
  const double norm = sym_trace(d);
  std::vector<std::pair<double, Vec>> out;
  out.reserve(design.size());
  for (const auto& t : design) out.push_back({t.weight / norm, t.vec});
  return out;
}

// ---------------------------------------------------------------------------
// ToyEffect

double ToyEffect::trace() const { return matrix_.trace().real(); }

double ToyEffect::eval(const Vec& psi) const {
  if (psi.size() * psi.size() != matrix_.rows())
    throw std::invalid_argument("opf_eval: state dimension does not match effect");
  Vec psi2 = tensor::tensor_square(psi);
  double p = (psi2.adjoint() * matrix_ * psi2).real()(0, 0);
  return std::clamp(p, 0.0, 1.0);
}

ToyEffect ToyEffect::from_terms(int d, Terms terms, Terms complement, double tol) {
  for (const auto& t : terms)
    if (t.weight <= 0 || t.vec.size() != d || std::abs(t.vec.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("effect terms must carry positive weights and unit vectors in C^d");
  for (const auto& t : complement)
    if (t.weight <= 0 || t.vec.size() != d || std::abs(t.vec.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("complement terms must carry positive weights and unit vectors in C^d");

  Mat f = reconstruct_terms(d, terms);
  Mat c = reconstruct_terms(d, complement);
  Mat s = sym_projector(d);
  if ((f + c - s).norm() > tol * std::max(1.0, s.norm()))
    throw NotAnEffect(NotAnEffect::Reason::IndecomposableComplement,
                      "terms and complement do not sum to the symmetric projector");
  if (min_eigenvalue(f) < -1e-9 || min_eigenvalue(s - f) < -1e-9)
    throw NotAnEffect(NotAnEffect::Reason::SpectralViolation, "effect violates 0 <= F <= S");
  return ToyEffect(d, std::move(terms), std::move(complement), std::move(f));
}

namespace {

// Frame-based nonnegative fit of M as sum_i c_i |phi_i><phi_i|^⊗2. Returns
// the terms or nullopt; a semidecision (failure exhibits no certificate).
std::optional<Terms> search_decomposition(int d, const Mat& m, const DecompOptions& opt) {
  const double scale = std::max(1.0, m.norm());
  if (m.norm() < 1e-13) return Terms{};

  std::vector<Vec> frame;
  // candidates extracted from the eigenvectors of M itself
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) < 1e-10) continue;
    Vec w = solver.eigenvectors().col(i);
    Mat reshaped(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) reshaped(a, b) = w(a * d + b);
    Eigen::JacobiSVD<Mat> svd(reshaped, Eigen::ComputeThinU);
    frame.push_back(svd.matrixU().col(0));
  }
  if (is_prime(d)) {
    for (const auto& v : mub_vectors(d)) frame.push_back(v);
  } else {
    for (int i = 0; i < d; ++i) {
      Vec e = Vec::Zero(d);
      e(i) = 1.0;
      frame.push_back(e);
    }
    // pair superpositions widen the frame beyond the basis directions
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int t = 0; t < 3; ++t) {
          Vec v = Vec::Zero(d);
          double angle = 2.0 * std::numbers::pi * t / 3.0;
          v(j) = 1.0 / std::numbers::sqrt2;
          v(k) = cplx(std::cos(angle), std::sin(angle)) / std::numbers::sqrt2;
          frame.push_back(v);
        }
  }
  std::mt19937_64 rng(opt.seed);
  while (static_cast<int>(frame.size()) < opt.frame_size) frame.push_back(haar_state(rng, d));

  const int dim = d * d;
  const int rows = 2 * dim * dim;
  auto realize = [&](const Mat& x, Eigen::VectorXd& col) {
    int r = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        col(r++) = x(i, j).real();
        col(r++) = x(i, j).imag();
      }
  };
  Eigen::MatrixXd a(rows, frame.size());
  Eigen::VectorXd col(rows);
  for (size_t i = 0; i < frame.size(); ++i) {
    realize(dyad_square(frame[i]), col);
    a.col(i) = col;
  }
  Eigen::VectorXd b(rows);
  realize(m, b);

  auto fit = nnls::solve(a, b);
  if (fit.residual > opt.tol * scale) return std::nullopt;

  // greedy sparsification: drop the smallest weight while the fit survives
  std::vector<int> support;
  for (int i = 0; i < fit.x.size(); ++i)
    if (fit.x(i) > 1e-12) support.push_back(i);
  Eigen::VectorXd weights = fit.x;
  while (support.size() > 1) {
    int drop = support[0];
    for (int i : support)
      if (weights(i) < weights(drop)) drop = i;
    std::vector<int> reduced;
    for (int i : support)
      if (i != drop) reduced.push_back(i);
    Eigen::MatrixXd a_red(rows, reduced.size());
    for (size_t i = 0; i < reduced.size(); ++i) a_red.col(i) = a.col(reduced[i]);
    auto refit = nnls::solve(a_red, b);
    if (refit.residual > opt.tol * scale) break;
    support = reduced;
    weights.setZero();
    for (size_t i = 0; i < reduced.size(); ++i) weights(reduced[i]) = refit.x(i);
  }

  Terms terms;
  for (int i : support)
    if (weights(i) > 1e-12) terms.push_back({weights(i), frame[i]});
  if ((reconstruct_terms(d, terms) - m).norm() > opt.tol * scale) return std::nullopt;
  return terms;
}

}  // namespace

ToyEffect ToyEffect::from_matrix(int d, const Mat& f_hat, const DecompOptions& opt) {
  if (f_hat.rows() != d * d || f_hat.cols() != d * d)
    throw std::invalid_argument("effect matrix must act on (C^d)^⊗2");
  if (!tensor::is_hermitian(f_hat, 1e-10))
    throw NotAnEffect(NotAnEffect::Reason::SpectralViolation, "effect matrix is not Hermitian");
  Mat s = sym_projector(d);
  if (min_eigenvalue(f_hat) < -1e-10 || min_eigenvalue(s - f_hat) < -1e-10 ||
      (s * f_hat * s - f_hat).norm() > 1e-9 * std::max(1.0, f_hat.norm()))
    throw NotAnEffect(NotAnEffect::Reason::SpectralViolation,
                      "effect violates 0 <= F <= S on the symmetric subspace");
  auto terms = search_decomposition(d, f_hat, opt);
  if (!terms)
    throw NotAnEffect(NotAnEffect::Reason::IndecomposableEffect,
                      "no symmetric-product decomposition found for the effect");
  auto complement = search_decomposition(d, Mat(s - f_hat), opt);
  if (!complement)
    throw NotAnEffect(NotAnEffect::Reason::IndecomposableComplement,
                      "no symmetric-product decomposition found for the complement");
  return ToyEffect(d, std::move(*terms), std::move(*complement), f_hat);
}

ToyEffect ToyEffect::unit(int d) {
  return ToyEffect(d, symmetric_unit_design(d), {}, sym_projector(d));
}

ToyEffect ToyEffect::zero(int d) {
  return ToyEffect(d, {}, symmetric_unit_design(d), Mat::Zero(d * d, d * d));
}

ToyEffect ToyEffect::rotated(const Mat& u) const {
  if (u.rows() != d_ || u.cols() != d_) throw std::invalid_argument("rotated: unitary dimension mismatch");
  auto rotate = [&](const Terms& terms) {
    Terms out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back({t.weight, Vec(u.adjoint() * t.vec)});
    return out;
  };
  return from_terms(d_, rotate(terms_), rotate(complement_));
}

ToyEffect ToyEffect::scaled(double c) const {
  if (c < 0.0 || c > 1.0) throw std::invalid_argument("scaled: factor must lie in [0,1]");
  Terms terms = scaled_terms(terms_, c);
  Terms complement = scaled_terms(complement_, c);
  append_terms(complement, symmetric_unit_design(d_), 1.0 - c);
  return ToyEffect(d_, std::move(terms), std::move(complement), Mat(c * matrix_));
}

double ToyMeasurement::normalization_residual() const {
  if (effects.empty()) return 0.0;
  const int d = effects.front().dim();
  Mat sum = Mat::Zero(d * d, d * d);
  for (const auto& e : effects) sum += e.matrix();
  return (sum - sym_projector(d)).norm();
}

ToyMeasurement canonical_measurement(int d) {
  if (!is_prime(d)) throw NotPrime(d);
  auto vectors = mub_vectors(d);
  ToyMeasurement m;
  for (size_t i = 0; i < vectors.size(); ++i) {
    Terms terms = {{0.5, vectors[i]}};
    Terms complement;
    for (size_t j = 0; j < vectors.size(); ++j)
      if (j != i) complement.push_back({0.5, vectors[j]});
    m.effects.push_back(ToyEffect::from_terms(d, std::move(terms), std::move(complement)));
  }
  return m;
}

// ---------------------------------------------------------------------------
// States

BipartiteVec::BipartiteVec(int da_, int db_, Vec v) : da(da_), db(db_), vec(std::move(v)) {
  if (da < 1 || db < 1 || vec.size() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("bipartite vector dimension mismatch");
  double n = vec.norm();
  if (std::abs(n - 1.0) > 1e-9) throw std::invalid_argument("bipartite vector must be normalized");
  vec /= n;
}

Mat state_family_member(const Mat& rho) {
  const int d = static_cast<int>(rho.rows());
  Mat s = sym_projector(d);
  Mat core = s * kron(rho, rho) * s;
  double c = 1.0 - core.trace().real();
  return core + (c / sym_trace(d)) * s;
}

ToyState ToyState::from_matrix(int d, const Mat& omega, double tol) {
  if (omega.rows() != d * d || omega.cols() != d * d)
    throw std::invalid_argument("state matrix must act on (C^d)^⊗2");
  if (!tensor::is_hermitian(omega, 1e-9)) throw std::invalid_argument("state matrix must be Hermitian");
  if (std::abs(omega.trace().real() - 1.0) > tol) throw std::invalid_argument("state must have unit trace");
  if (min_eigenvalue(omega) < -tol) throw std::invalid_argument("state must be positive semidefinite");
  Mat s = sym_projector(d);
  if ((s * omega * s - omega).norm() > tol)
    throw std::invalid_argument("state must be supported on the symmetric subspace");
  return ToyState(d, omega, {});
}

ToyState ToyState::from_rho_mixture(int d, std::vector<std::pair<double, Mat>> components) {
  double total = 0.0;
  Mat m = Mat::Zero(d * d, d * d);
  for (auto& [w, rho] : components) {
    if (w < -1e-12) throw std::invalid_argument("mixture weights must be nonnegative");
    if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("component dimension mismatch");
    if (!tensor::is_hermitian(rho, 1e-9) || min_eigenvalue(rho) < -1e-9 ||
        std::abs(rho.trace().real() - 1.0) > 1e-9)
      throw std::invalid_argument("components must be density matrices");
    total += w;
    m += w * state_family_member(rho);
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
  return ToyState(d, std::move(m), std::move(components));
}

Mat Ensemble::reconstruct(int d) const {
  Mat m = Mat::Zero(d * d, d * d);
  for (const auto& [p, psi] : items) m += p * dyad_square(psi);
  return m;
}

double Ensemble::total_weight() const {
  double t = 0.0;
  for (const auto& [p, psi] : items) t += p;
  return t;
}

// ---------------------------------------------------------------------------
// Global effects and the ⋆-product

namespace {

Mat star_matrix(const Mat& fa, const Mat& fb, int da, int db, bool include_antisym) {
  Mat alg = kron(fa, fb);
  if (include_antisym) {
    double ca = fa.trace().real() / sym_trace(da);
    double cb = fb.trace().real() / sym_trace(db);
    alg += (ca * cb) * kron(antisym_projector(da), antisym_projector(db));
  }
  return algebra_to_global(alg, da, db);
}

void check_global_bounds(const Mat& m, int da, int db) {
  const int dd = da * db;
  Mat s = sym_projector(dd);
  if (min_eigenvalue(m) < -1e-9 || min_eigenvalue(s - m) < -1e-9)
    throw std::invalid_argument("global effect violates 0 <= F <= S_AB");
}

}  // namespace

double GlobalEffect::eval(const BipartiteVec& psi_ab) const {
  if (psi_ab.da != da_ || psi_ab.db != db_)
    throw std::invalid_argument("global effect evaluated on mismatched dimensions");
  Vec psi2 = tensor::tensor_square(psi_ab.vec);
  double p = (psi2.adjoint() * matrix_ * psi2).real()(0, 0);
  return std::clamp(p, 0.0, 1.0);
}

GlobalEffect GlobalEffect::product(const ToyEffect& fa, const ToyEffect& fb) {
  GlobalEffect g;
  g.da_ = fa.dim();
  g.db_ = fb.dim();
  g.matrix_ = star_matrix(fa.matrix(), fb.matrix(), g.da_, g.db_, true);
  g.products_.push_back({1.0, fa, fb});
  check_global_bounds(g.matrix_, g.da_, g.db_);
  return g;
}

GlobalEffect GlobalEffect::intrinsic(int da, int db, ToyEffect f) {
  if (f.dim() != da * db) throw std::invalid_argument("intrinsic effect must act on C^{da*db}");
  GlobalEffect g;
  g.da_ = da;
  g.db_ = db;
  g.matrix_ = f.matrix();
  g.intrinsics_.push_back({1.0, std::move(f)});
  return g;
}

GlobalEffect GlobalEffect::mixture(const std::vector<std::pair<double, GlobalEffect>>& parts) {
  if (parts.empty()) throw std::invalid_argument("mixture of no effects");
  GlobalEffect g;
  g.da_ = parts.front().second.da_;
  g.db_ = parts.front().second.db_;
  g.matrix_ = Mat::Zero(parts.front().second.matrix_.rows(), parts.front().second.matrix_.cols());
  double total = 0.0;
  for (const auto& [w, part] : parts) {
    if (part.da_ != g.da_ || part.db_ != g.db_)
      throw std::invalid_argument("mixture parts must share dimensions");
    if (w < 0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
    g.matrix_ += w * part.matrix_;
    for (const auto& p : part.products_) g.products_.push_back({w * p.weight, p.fa, p.fb});
    for (const auto& p : part.intrinsics_) g.intrinsics_.push_back({w * p.weight, p.f});
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture weights must sum to 1");
  return g;
}

GlobalEffect star(const ToyEffect& fa, const ToyEffect& fb) { return GlobalEffect::product(fa, fb); }

double joint_prob(const ToyEffect& fa, const ToyEffect& fb, const BipartiteVec& psi_ab) {
  if (fa.dim() != psi_ab.da || fb.dim() != psi_ab.db)
    throw std::invalid_argument("joint_prob: dimension mismatch");
  return star(fa, fb).eval(psi_ab);
}

// ---------------------------------------------------------------------------
// Reduction and conditioning

ToyState reduced_state(const BipartiteVec& psi_ab) {
  const int da = psi_ab.da, db = psi_ab.db;
  Mat alg = global_to_algebra(dyad_square(psi_ab.vec), da, db);
  FactorShape shape{da, da, db, db};
  Mat sb = sym_projector(db);
  Mat term1 = partial_trace(Mat(kron(Mat::Identity(da * da, da * da), sb) * alg), shape, {0, 1});
  double caa = (kron(antisym_projector(da), antisym_projector(db)) * alg).trace().real();
  Mat omega = term1 + (caa / sym_trace(da)) * sym_projector(da);

  Mat rho = partial_trace(dyad(psi_ab.vec), FactorShape{da, db}, {0});
  ToyState state = ToyState::from_rho_mixture(da, {{1.0, rho}});
  // the witness-built matrix and the trace formula agree to machine precision;
  // keep the formula value
  if ((state.matrix() - omega).norm() > 1e-9)
    throw std::logic_error("reduced_state: closed forms disagree");
  return ToyState::from_matrix(da, omega).with_witness({{1.0, rho}});
}

ToyState ToyState::with_witness(std::vector<std::pair<double, Mat>> w) const {
  ToyState s = *this;
  s.witness_ = std::move(w);
  return s;
}

std::pair<double, ToyState> conditional_state(const BipartiteVec& psi_ab, const ToyEffect& fb) {
  const int da = psi_ab.da, db = psi_ab.db;
  if (fb.dim() != db) throw std::invalid_argument("conditional_state: effect dimension mismatch");
  Mat alg = global_to_algebra(dyad_square(psi_ab.vec), da, db);
  FactorShape shape{da, da, db, db};
  Mat term1 = partial_trace(Mat(kron(sym_projector(da), fb.matrix()) * alg), shape, {0, 1});
  double caa = (kron(antisym_projector(da), antisym_projector(db)) * alg).trace().real();
  double c = caa * fb.trace() / sym_trace(db);
  Mat unnorm = term1 + (c / sym_trace(da)) * sym_projector(da);
  double weight = unnorm.trace().real();
  if (weight < 1e-14) throw ZeroProbabilityBranch("conditional state has vanishing weight");

  std::vector<std::pair<double, Mat>> witness;
  double accounted = 0.0;
  for (const auto& t : fb.terms()) {
    Vec v = contract_b(psi_ab.vec, t.vec, da, db);
    double n2 = v.squaredNorm();
    double w = t.weight * n2 * n2;
    if (w < 1e-16) continue;
    Vec vn = v / std::sqrt(n2);
    witness.push_back({w / weight, dyad(vn)});
    accounted += w / weight;
  }
  double tilde_share = c / weight;
  if (tilde_share > 1e-16) {
    witness.push_back({tilde_share, Mat(Mat::Identity(da, da) / da)});
    accounted += tilde_share;
  }
  // absorb roundoff so the witness weights sum to exactly 1
  if (!witness.empty() && accounted > 0)
    for (auto& [w, rho] : witness) w /= accounted;

  return {weight, ToyState::from_matrix(da, Mat(unnorm / weight)).with_witness(std::move(witness))};
}

// ---------------------------------------------------------------------------
// Convex decomposition

namespace {

// Exact finite ensemble for S(rho⊗rho)S + (1 - tr)·S/trS, phase-averaged over
// 5th roots of unity: exponents of every cross term lie in [-2,2], so the
// Z_5 average annihilates exactly the terms the continuous average kills.
void decompose_member(int d, double weight, const Mat& rho, Ensemble& out) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (rho + rho.adjoint()));
  std::vector<double> alpha;
  std::vector<Vec> basis;
  for (int i = static_cast<int>(solver.eigenvalues().size()) - 1; i >= 0; --i) {
    double a = solver.eigenvalues()(i);
    if (a > 1e-12) {
      alpha.push_back(a);
      basis.push_back(solver.eigenvectors().col(i));
    }
  }
  const int r = static_cast<int>(alpha.size());
  if (r == 0) throw DecompositionFailed("component has no support");
  if (r == 1) {
    out.items.push_back({weight, basis[0]});
    return;
  }

  const int q = 5;
  long grid = 1;
  for (int i = 1; i < r; ++i) grid *= q;  // global phase fixed on the first index
  const double p_phase = 0.5 * weight / static_cast<double>(grid);
  std::vector<int> theta(r, 0);
  for (long idx = 0; idx < grid; ++idx) {
    long rest = idx;
    for (int i = 1; i < r; ++i) {
      theta[i] = static_cast<int>(rest % q);
      rest /= q;
    }
    Vec psi = Vec::Zero(d);
    for (int i = 0; i < r; ++i) {
      double angle = 2.0 * std::numbers::pi * theta[i] / q;
      psi += std::sqrt(alpha[i]) * cplx(std::cos(angle), std::sin(angle)) * basis[i];
    }
    psi.normalize();
    out.items.push_back({p_phase, psi});
  }

  double sum_sq = 0.0;
  for (double a : alpha) sum_sq += a * a;
  for (int i = 0; i < r; ++i) out.items.push_back({0.5 * weight * alpha[i] * alpha[i], basis[i]});
  const double rest_weight = 0.5 * weight * (1.0 - sum_sq);
  if (rest_weight > 1e-15)
    for (const auto& [p, chi] : maximally_mixed_ensemble(d))
      out.items.push_back({rest_weight * p, chi});
}

}  // namespace

Ensemble convex_decomposition(const ToyState& omega, const DecompOptions& opt) {
  const int d = omega.dim();
  Ensemble ens;
  if (omega.has_witness()) {
    for (const auto& [w, rho] : omega.witness()) {
      if (w <= 1e-15) continue;
      decompose_member(d, w, rho, ens);
    }
  } else {
    auto terms = search_decomposition(d, omega.matrix(), opt);
    if (!terms) throw DecompositionFailed("state is outside the constructive family and the search failed");
    for (const auto& t : *terms) ens.items.push_back({t.weight, t.vec});
  }
  if ((ens.reconstruct(d) - omega.matrix()).norm() > 1e-9)
    throw DecompositionFailed("ensemble reconstruction exceeded tolerance");
  return ens;
}

// ---------------------------------------------------------------------------
// Induced local effects (measurements with an ancilla)

ToyEffect induced_local_effect(const GlobalEffect& f_ab, const Vec& phi_b) {
  const int da = f_ab.da(), db = f_ab.db();
  if (phi_b.size() != db) throw std::invalid_argument("ancilla state dimension mismatch");
  if (std::abs(phi_b.norm() - 1.0) > 1e-9) throw std::invalid_argument("ancilla state must be normalized");

  Terms terms, complement;
  for (const auto& part : f_ab.products()) {
    double c = part.fb.eval(phi_b);
    append_terms(terms, part.fa.terms(), part.weight * c);
    append_terms(complement, part.fa.complement_terms(), part.weight * c);
    append_terms(complement, symmetric_unit_design(da), part.weight * (1.0 - c));
  }
  for (const auto& part : f_ab.intrinsics()) {
    auto push = [&](Terms& dst, const Terms& src) {
      for (const auto& t : src) {
        Vec v = contract_b(t.vec, phi_b, da, db);
        double n2 = v.squaredNorm();
        double w = part.weight * t.weight * n2 * n2;
        if (w < 1e-15) continue;
        dst.push_back({w, Vec(v / std::sqrt(n2))});
      }
    };
    push(terms, part.f.terms());
    push(complement, part.f.complement_terms());
  }
  return ToyEffect::from_terms(da, std::move(terms), std::move(complement));
}

// ---------------------------------------------------------------------------
// Hyper-decoherence

Mat hyper_decohere(const Vec& psi) {
  const int d = static_cast<int>(psi.size());
  Mat e00 = Mat::Zero(d, d);
  e00(0, 0) = 1.0;
  return kron(dyad(psi), e00);
}

Mat hyper_decohere_map(const Mat& m) {
  const int dd = static_cast<int>(m.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd) throw std::invalid_argument("hyper_decohere_map: matrix is not on (C^d)^⊗2");
  Mat first = partial_trace(m, FactorShape{d, d}, {0});
  Mat e00 = Mat::Zero(d, d);
  e00(0, 0) = 1.0;
  return kron(first, e00);
}

ToyEffect ToyEffect::from_design_scaling(int d, const Terms& design, const std::vector<double>& scale) {
  if (scale.size() != design.size())
    throw std::invalid_argument("from_design_scaling: one scale factor per design element");
  Terms terms, complement;
  Mat m = Mat::Zero(d * d, d * d);
  for (size_t i = 0; i < design.size(); ++i) {
    double c = scale[i];
    if (c < 0.0 || c > 1.0) throw std::invalid_argument("from_design_scaling: factors must lie in [0,1]");
    double w = c * design[i].weight;
    if (w > 1e-15) {
      terms.push_back({w, design[i].vec});
      m += w * dyad_square(design[i].vec);
    }
    double wc = (1.0 - c) * design[i].weight;
    if (wc > 1e-15) complement.push_back({wc, design[i].vec});
  }
  return ToyEffect(d, std::move(terms), std::move(complement), std::move(m));
}

// ---------------------------------------------------------------------------
// Membership in the reduced-state image

namespace {

int family_param_count(int d, int r) {
  int below = 0;
  for (int j = 0; j < r; ++j) below += d - 1 - j;
  return r + 2 * below;
}

// Lower-triangular d x r factor with real diagonal; rho = TT†/tr(TT†).
Mat rho_from_params(const Eigen::VectorXd& p, int d, int r) {
  Mat t = Mat::Zero(d, r);
  int idx = 0;
  for (int j = 0; j < r; ++j) t(j, j) = p(idx++);
  for (int j = 0; j < r; ++j)
    for (int i = j + 1; i < d; ++i) {
      t(i, j) = cplx(p(idx), p(idx + 1));
      idx += 2;
    }
  Mat rho = t * t.adjoint();
  double tr = rho.trace().real();
  if (tr < 1e-14) return Mat::Identity(d, d) / d;
  return rho / tr;
}

Eigen::VectorXd params_from_rho(const Mat& rho, int d, int r) {
  // T with TT† = rho via the spectral square root and a QR re-triangularization
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (rho + rho.adjoint()));
  Mat root = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double ev = std::max(0.0, solver.eigenvalues()(i));
    root += std::sqrt(ev) * dyad(Vec(solver.eigenvectors().col(i)));
  }
  Eigen::HouseholderQR<Mat> qr(root.adjoint());
  Mat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  Mat t = rmat.adjoint();  // lower triangular, TT† = rho
  for (int j = 0; j < d; ++j) {
    cplx z = t(j, j);
    if (std::abs(z) > 1e-14) t.col(j) *= std::conj(z) / std::abs(z);
  }
  Eigen::VectorXd p = Eigen::VectorXd::Zero(family_param_count(d, r));
  int idx = 0;
  for (int j = 0; j < r; ++j) p(idx++) = t(j, j).real();
  for (int j = 0; j < r; ++j)
    for (int i = j + 1; i < d; ++i) {
      p(idx++) = t(i, j).real();
      p(idx++) = t(i, j).imag();
    }
  return p;
}

// Fixed-point inversion of tr_2(omega) = (rho + rho^2)/2 + (1-t) I/d with
// t = (1 + tr rho^2)/2; exact on family members, a serviceable start outside.
Mat warm_start_rho(const Mat& omega, int d) {
  Mat h = partial_trace(omega, FactorShape{d, d}, {0});
  double s = 0.5;
  Mat rho = Mat::Identity(d, d) / d;
  for (int iter = 0; iter < 25; ++iter) {
    Mat m = h - ((1.0 - s) / (2.0 * d)) * Mat::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
    Mat next = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      double x = (-1.0 + std::sqrt(std::max(0.0, 1.0 + 8.0 * solver.eigenvalues()(i)))) / 2.0;
      if (x > 0) next += x * dyad(Vec(solver.eigenvectors().col(i)));
    }
    double tr = next.trace().real();
    if (tr < 1e-12) break;
    next /= tr;
    rho = next;
    s = (rho * rho).trace().real();
  }
  return rho;
}

}  // namespace

MembershipResult is_reduced_state(const ToyState& omega, int d_b, double tol) {
  const int d = omega.dim();
  if (d_b < 1) throw std::invalid_argument("is_reduced_state: ancilla dimension must be positive");
  const int r = std::min(d, d_b);
  const int np = family_param_count(d, r);
  const Mat& target = omega.matrix();

  auto objective = [&](const Eigen::VectorXd& p) {
    return (target - state_family_member(rho_from_params(p, d, r))).norm();
  };

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_p = Eigen::VectorXd::Zero(np);

  auto consider = [&](const Eigen::VectorXd& p) {
    double v = objective(p);
    if (v < best) {
      best = v;
      best_p = p;
    }
  };

  const int grid_n = 40;
  if (np <= 4) {
    // exhaustive tensor grid, diagonal entries in [0,1], off-diagonals in [-1,1]
    Eigen::VectorXd p(np);
    long total = 1;
    for (int i = 0; i < np; ++i) total *= grid_n;
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      for (int i = 0; i < np; ++i) {
        int c = static_cast<int>(rest % grid_n);
        rest /= grid_n;
        p(i) = (i < r) ? c / (grid_n - 1.0) : -1.0 + 2.0 * c / (grid_n - 1.0);
      }
      consider(p);
    }
  }

  // multi-start: warm start, maximally mixed, seeded random points
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(params_from_rho(warm_start_rho(target, d), d, r));
  starts.push_back(params_from_rho(Mat(Mat::Identity(d, d) / d), d, r));
  std::mt19937_64 rng(0xb10c4ULL ^ (static_cast<std::uint64_t>(d) << 8) ^ static_cast<std::uint64_t>(d_b));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd p(np);
    for (int i = 0; i < np; ++i) p(i) = uni(rng);
    starts.push_back(p);
  }
  if (best < std::numeric_limits<double>::infinity()) starts.push_back(best_p);

  for (Eigen::VectorXd p : starts) {
    double value = objective(p);
    // one sweep of per-parameter line scans
    for (int i = 0; i < np; ++i) {
      double keep = p(i);
      double best_coord = keep;
      for (int c = 0; c < grid_n; ++c) {
        p(i) = -1.2 + 2.4 * c / (grid_n - 1.0);
        double v = objective(p);
        if (v < value) {
          value = v;
          best_coord = p(i);
        }
      }
      p(i) = best_coord;
    }
    // coordinate descent with shrinking steps
    double h = 0.2;
    int sweeps = 0;
    while (h > 1e-10 && sweeps++ < 400) {
      bool improved = false;
      for (int i = 0; i < np; ++i) {
        for (double sign : {1.0, -1.0}) {
          p(i) += sign * h;
          double v = objective(p);
          if (v < value) {
            value = v;
            improved = true;
          } else {
            p(i) -= sign * h;
          }
        }
      }
      if (!improved) h *= 0.5;
    }
    if (value < best) {
      best = value;
      best_p = p;
    }
  }

  return {best < tol, best};
}

// ---------------------------------------------------------------------------
// Consistency suite

namespace {

Mat haar_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx z = rmat(j, j);
    q.col(j) *= z / std::abs(z);
  }
  return q;
}

ToyEffect random_submixture(const ToyMeasurement& meas, std::mt19937_64& rng) {
  const int d = meas.dim();
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Terms terms, complement;
  for (const auto& e : meas.effects) {
    double t = uni(rng);
    append_terms(terms, e.terms(), t);
    append_terms(complement, e.terms(), 1.0 - t);
  }
  return ToyEffect::from_terms(d, std::move(terms), std::move(complement));
}

}  // namespace

bool ConstraintReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

ConstraintReport verify_constraints(int d_a, int d_b, int trials, std::uint64_t seed,
                                    const VerifyOptions& options) {
  ConstraintReport report;
  report.d_a = d_a;
  report.d_b = d_b;
  report.seed = seed;

  const int dd = d_a * d_b;
  const bool antisym = !options.corrupt_star;
  Mat s_a = sym_projector(d_a);
  Mat s_b = sym_projector(d_b);
  Mat s_ab = sym_projector(dd);
  auto meas_a = canonical_measurement(d_a);
  auto meas_b = canonical_measurement(d_b);
  Terms design_ab = symmetric_unit_design(dd);

  auto bipartite = [&](std::mt19937_64& rng) { return BipartiteVec(d_a, d_b, haar_state(rng, dd)); };

  // C1: unitary-rotated effects revalidate
  {
    ConstraintResult res{"C1", true, 0.0, trials};
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      try {
        ToyEffect eff = random_submixture(meas_a, rng);
        Mat u = haar_unitary(rng, d_a);
        Mat w = kron(u, u);
        Mat conjugated = w.adjoint() * eff.matrix() * w;
        ToyEffect rot = eff.rotated(u);
        res.max_residual = std::max(res.max_residual, (rot.matrix() - conjugated).norm());
      } catch (const std::exception&) {
        res.pass = false;
        res.max_residual = 1.0;
      }
    }
    if (res.max_residual > 1e-10) res.pass = false;
    report.results.push_back(res);
  }

  // C2: distinct rays are separated by some canonical effect
  {
    ConstraintResult res{"C2", true, 0.0, trials};
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      Vec psi = haar_state(rng, d_a);
      Vec phi = haar_state(rng, d_a);
      if ((dyad(psi) - dyad(phi)).norm() < 1e-6) continue;
      double sep = 0.0;
      for (const auto& e : meas_a.effects) sep = std::max(sep, std::abs(e.eval(psi) - e.eval(phi)));
      if (sep <= 1e-8) {
        res.pass = false;
        res.max_residual = std::max(res.max_residual, 1.0);
      }
    }
    report.results.push_back(res);
  }

  // C3: no correlations on product states, and u ⋆ u = u
  {
    ConstraintResult res{"C3", true, 0.0, trials};
    res.max_residual = (star_matrix(s_a, s_b, d_a, d_b, antisym) - s_ab).norm();
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      ToyEffect fa = random_submixture(meas_a, rng);
      ToyEffect fb = random_submixture(meas_b, rng);
      Vec psi = haar_state(rng, d_a);
      Vec phi = haar_state(rng, d_b);
      Vec prod = kron(psi, phi);
      Vec prod2 = tensor::tensor_square(prod);
      Mat g = star_matrix(fa.matrix(), fb.matrix(), d_a, d_b, antisym);
      double joint = (prod2.adjoint() * g * prod2).real()(0, 0);
      res.max_residual =
          std::max(res.max_residual, std::abs(joint - fa.eval(psi) * fb.eval(phi)));
    }
    if (res.max_residual > 1e-10) res.pass = false;
    report.results.push_back(res);
  }

  // C4: conditional states admit explicit convex decompositions
  {
    ConstraintResult res{"C4", true, 0.0, trials};
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      try {
        BipartiteVec psi = bipartite(rng);
        ToyEffect fb = random_submixture(meas_b, rng);
        auto [w, cond] = conditional_state(psi, fb);
        Ensemble ens = convex_decomposition(cond);
        res.max_residual =
            std::max(res.max_residual, (ens.reconstruct(d_a) - cond.matrix()).norm());
      } catch (const ZeroProbabilityBranch&) {
        continue;
      } catch (const std::exception&) {
        res.pass = false;
        res.max_residual = 1.0;
      }
    }
    if (res.max_residual > 1e-10) res.pass = false;
    report.results.push_back(res);
  }

  // C5: induced local effects validate and match the global evaluation
  {
    ConstraintResult res{"C5", true, 0.0, trials};
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      try {
        GlobalEffect prod = GlobalEffect::product(random_submixture(meas_a, rng),
                                                  random_submixture(meas_b, rng));
        std::vector<double> scale(design_ab.size(), 0.0);
        std::uniform_int_distribution<size_t> pick(0, design_ab.size() - 1);
        for (int k = 0; k < 40; ++k) scale[pick(rng)] = 0.1 + 0.9 * uni(rng);
        GlobalEffect intrinsic =
            GlobalEffect::intrinsic(d_a, d_b, ToyEffect::from_design_scaling(dd, design_ab, scale));
        double w = 0.25 + 0.5 * uni(rng);
        GlobalEffect mix = GlobalEffect::mixture({{w, prod}, {1.0 - w, intrinsic}});
        Vec phi = haar_state(rng, d_b);
        ToyEffect induced = induced_local_effect(mix, phi);
        for (int k = 0; k < 20; ++k) {
          Vec psi = haar_state(rng, d_a);
          BipartiteVec joint(d_a, d_b, Vec(kron(psi, phi)));
          res.max_residual =
              std::max(res.max_residual, std::abs(induced.eval(psi) - mix.eval(joint)));
        }
      } catch (const std::exception&) {
        res.pass = false;
        res.max_residual = 1.0;
      }
    }
    if (res.max_residual > 1e-10) res.pass = false;
    report.results.push_back(res);
  }

  // no-signalling: Bob's measurement choice leaves Alice's summed state fixed
  {
    ConstraintResult res{"no-signalling", true, 0.0, trials};
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(seed, t);
      BipartiteVec psi = bipartite(rng);
      Mat reduced = reduced_state(psi).matrix();
      Mat u = haar_unitary(rng, d_b);
      for (int m = 0; m < 2; ++m) {
        Mat sum = Mat::Zero(d_a * d_a, d_a * d_a);
        for (const auto& e : meas_b.effects) {
          ToyEffect eff = (m == 0) ? e : e.rotated(u);
          try {
            auto [w, cond] = conditional_state(psi, eff);
            sum += w * cond.matrix();
          } catch (const ZeroProbabilityBranch&) {
            continue;
          }
        }
        res.max_residual = std::max(res.max_residual, (sum - reduced).norm());
      }
    }
    if (res.max_residual > 1e-10) res.pass = false;
    report.results.push_back(res);
  }

  return report;
}

std::string report_to_json(const ConstraintReport& report) {
  nlohmann::ordered_json doc;
  doc["d_a"] = report.d_a;
  doc["d_b"] = report.d_b;
  doc["seed"] = std::to_string(report.seed);
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json item;
    item["constraint"] = r.constraint;
    item["pass"] = r.pass;
    item["max_residual"] = r.max_residual;
    item["trials"] = r.trials;
    results.push_back(item);
  }
  doc["results"] = results;
  doc["all_pass"] = report.all_pass();
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Figure-1 projection data (d = 2)

namespace {

FigurePoint project_point(const Mat& omega) {
  static const Mat zsym = [] {
    Mat z(2, 2);
    z << 1, 0, 0, -1;
    Mat i2 = Mat::Identity(2, 2);
    return Mat(0.5 * (kron(z, i2) + kron(i2, z)));
  }();
  static const Mat phi_proj = [] {
    Vec phi(4);
    phi << 0, 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0;
    return dyad(phi);
  }();
  return {(zsym * omega).trace().real(), (phi_proj * omega).trace().real()};
}

}  // namespace

FigureData figure_data(int samples, std::uint64_t seed) {
  FigureData out;
  Vec e0 = Vec::Zero(2), e1 = Vec::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  Mat corner0 = dyad_square(e0), corner1 = dyad_square(e1);

  for (int i = 0; i < samples; ++i) {
    out.pure.push_back(project_point(dyad_square(tensor::random_pure_state(2, seed + i))));
  }
  for (int i = 0; i < samples; ++i) {
    // the first 101 mixed points sweep the corner segment p|0><0|^⊗2 + (1-p)|1><1|^⊗2
    if (i <= 100 && samples > 100) {
      double p = i / 100.0;
      out.mixed.push_back(project_point(p * corner0 + (1.0 - p) * corner1));
      continue;
    }
    auto rng = trial_rng(seed ^ 0x9e3779b97f4a7c15ULL, i);
    std::uniform_int_distribution<int> kdist(2, 4);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int k = kdist(rng);
    Mat m = Mat::Zero(4, 4);
    double total = 0.0;
    std::vector<std::pair<double, Vec>> pieces;
    for (int j = 0; j < k; ++j) {
      double w = -std::log(std::max(1e-12, uni(rng)));
      total += w;
      pieces.push_back({w, haar_state(rng, 2)});
    }
    for (auto& [w, v] : pieces) m += (w / total) * dyad_square(v);
    out.mixed.push_back(project_point(m));
  }
  for (int i = 0; i < samples; ++i) {
    auto rng = trial_rng(seed ^ 0xc2b2ae3d27d4eb4fULL, i);
    BipartiteVec psi(2, 2, haar_state(rng, 4));
    out.reduced.push_back(project_point(reduced_state(psi).matrix()));
  }
  return out;
}

void write_figure_csv(const FigureData& data, std::ostream& out) {
  out << "kind,x,y\n";
  out << std::setprecision(17);
  auto dump = [&](const char* kind, const std::vector<FigurePoint>& points) {
    for (const auto& p : points) out << kind << ',' << p.x << ',' << p.y << '\n';
  };
  dump("pure", data.pure);
  dump("mixed", data.mixed);
  dump("reduced", data.reduced);
}

}  // namespace opflab::toy
