#pragma once

#include "opflab/tensor.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opflab::toy {

using tensor::Mat;
using tensor::Vec;

/// Effects F on C^d act through the Hermitian matrix F_hat on (C^d)^⊗2 via
/// F(psi) = tr(F_hat |psi><psi|^⊗2). Validity requires 0 <= F_hat <= S and
/// that both F_hat and S - F_hat are nonnegative mixtures of symmetric
/// product projectors |phi><phi|^⊗2.

struct WeightedVec {
  double weight;  // > 0
  Vec vec;        // unit vector in C^d
};
using Terms = std::vector<WeightedVec>;

struct NotAnEffect : std::runtime_error {
  enum class Reason { SpectralViolation, IndecomposableEffect, IndecomposableComplement };
  NotAnEffect(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
  Reason reason;
};

struct ZeroProbabilityBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecompositionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrime : std::runtime_error {
  explicit NotPrime(int d) : std::runtime_error("canonical measurement requires prime d, got " + std::to_string(d)), d(d) {}
  int d;
};

/// Options for the matrix-only decomposition search (a semidecision: failure
/// means the search could not exhibit a decomposition, not a proof that none
/// exists).
struct DecompOptions {
  int frame_size = 200;
  std::uint64_t seed = 0x0f1ab5eedULL;
  double tol = 1e-8;
};

class ToyEffect {
 public:
  int dim() const { return d_; }
  const Mat& matrix() const { return matrix_; }
  const Terms& terms() const { return terms_; }
  const Terms& complement_terms() const { return complement_; }

  double trace() const;

  /// tr(F_hat |psi><psi|^⊗2), clamped to [0,1] against roundoff.
  double eval(const Vec& psi) const;

  /// Verifies both supplied decompositions against the reconstructed matrix
  /// and the spectral constraints 0 <= F_hat <= S.
  static ToyEffect from_terms(int d, Terms terms, Terms complement, double tol = 1e-9);

  /// Runs the decomposition search for both F_hat and S - F_hat.
  static ToyEffect from_matrix(int d, const Mat& f_hat, const DecompOptions& opt = {});

  static ToyEffect unit(int d);  // F_hat = S, empty complement
  static ToyEffect zero(int d);  // F_hat = 0, complement = S

  /// Sub-measurement of a unit design: F = sum_i c_i w_i |chi_i><chi_i|^⊗2
  /// with c_i in [0,1] and complement weights (1-c_i) w_i. Relies on the
  /// design identity sum_i w_i |chi_i><chi_i|^⊗2 = S; skips re-validation.
  static ToyEffect from_design_scaling(int d, const Terms& design, const std::vector<double>& scale);

  /// The effect psi -> F(U psi); terms rotate by U†.
  ToyEffect rotated(const Mat& u) const;

  /// Scaled effect c*F for c in [0,1]; complement = c*(S-F) + (1-c)*S.
  ToyEffect scaled(double c) const;

 private:
  ToyEffect(int d, Terms terms, Terms complement, Mat matrix)
      : d_(d), terms_(std::move(terms)), complement_(std::move(complement)), matrix_(std::move(matrix)) {}
  int d_;
  Terms terms_;
  Terms complement_;
  Mat matrix_;
};

/// A measurement is a list of effects summing to the unit effect S. Every
/// normalized list of valid effects is treated as a measurement here; this is
/// a modeling assumption, not a derived fact.
struct ToyMeasurement {
  std::vector<ToyEffect> effects;
  int dim() const { return effects.empty() ? 0 : effects.front().dim(); }
  double normalization_residual() const;  // ||sum F_hat_i - S||_F
};

bool is_prime(int n);

/// d+1 mutually unbiased bases for prime d, flattened to d(d+1) unit vectors.
/// d = 2 uses the Z, X, Y eigenbases; odd primes use the computational basis
/// plus bases with components w^(b k^2 + i k)/sqrt(d).
std::vector<Vec> mub_vectors(int d);

/// The d(d+1)-outcome measurement with effects (1/2)|phi><phi|^⊗2 over all
/// MUB vectors; the effects sum to S exactly. Throws NotPrime otherwise.
ToyMeasurement canonical_measurement(int d);

/// A finite weighted set {(w_i, phi_i)} with sum_i w_i |phi_i><phi_i|^⊗2 = S.
/// MUB-based for prime d; for composite d >= 3 built from pair superpositions
/// (e_j + w^t e_k)/sqrt(2) and Z_3^d phase-averaged uniform vectors.
Terms symmetric_unit_design(int d);

/// Finite ensemble of pure states averaging to S/tr(S).
std::vector<std::pair<double, Vec>> maximally_mixed_ensemble(int d);

/// Unit vector in C^{da} ⊗ C^{db} with the A factor first.
struct BipartiteVec {
  int da = 0;
  int db = 0;
  Vec vec;
  BipartiteVec(int da, int db, Vec v);
};

/// Mixed state: unit-trace positive matrix omega on (C^d)^⊗2 supported on the
/// symmetric subspace. States built by this library carry a witness: a list
/// of (weight, rho) components with omega = sum_j w_j [S(rho⊗rho)S +
/// (1 - tr S(rho⊗rho)S) S/trS], which makes convex_decomposition exact.
class ToyState {
 public:
  int dim() const { return d_; }
  const Mat& matrix() const { return matrix_; }
  const std::vector<std::pair<double, Mat>>& witness() const { return witness_; }
  bool has_witness() const { return !witness_.empty(); }

  static ToyState from_matrix(int d, const Mat& omega, double tol = 1e-9);
  static ToyState from_rho_mixture(int d, std::vector<std::pair<double, Mat>> components);
  /// Copy of this state carrying the given witness components.
  ToyState with_witness(std::vector<std::pair<double, Mat>> w) const;

 private:
  ToyState(int d, Mat m, std::vector<std::pair<double, Mat>> w)
      : d_(d), matrix_(std::move(m)), witness_(std::move(w)) {}
  int d_;
  Mat matrix_;
  std::vector<std::pair<double, Mat>> witness_;
};

/// The member of the reduced-state family for a density matrix rho:
/// S(rho⊗rho)S + (1 - tr S(rho⊗rho)S) * S/trS.
Mat state_family_member(const Mat& rho);

struct Ensemble {
  std::vector<std::pair<double, Vec>> items;  // (p_i, psi_i), p_i >= 0, sum = 1
  Mat reconstruct(int d) const;               // sum p_i |psi_i><psi_i|^⊗2
  double total_weight() const;
};

/// Bipartite global effects on (C^{da db})^⊗2 with copy order A1,B1,A2,B2.
/// Provenance is kept as a convex combination of product parts (F_A ⋆ F_B)
/// and intrinsic parts (effects of C^{da db} viewed as a single system).
class GlobalEffect {
 public:
  struct ProductPart {
    double weight;
    ToyEffect fa;
    ToyEffect fb;
  };
  struct IntrinsicPart {
    double weight;
    ToyEffect f;
  };

  int da() const { return da_; }
  int db() const { return db_; }
  const Mat& matrix() const { return matrix_; }
  const std::vector<ProductPart>& products() const { return products_; }
  const std::vector<IntrinsicPart>& intrinsics() const { return intrinsics_; }

  double eval(const BipartiteVec& psi_ab) const;

  static GlobalEffect product(const ToyEffect& fa, const ToyEffect& fb);
  static GlobalEffect intrinsic(int da, int db, ToyEffect f);
  /// Convex combination; weights must sum to 1.
  static GlobalEffect mixture(const std::vector<std::pair<double, GlobalEffect>>& parts);

 private:
  GlobalEffect() = default;
  int da_ = 0, db_ = 0;
  Mat matrix_;
  std::vector<ProductPart> products_;
  std::vector<IntrinsicPart> intrinsics_;
};

/// The ⋆-product matrix F_A ⊗ F_B + (trF_A/trS_A) A_A ⊗ (trF_B/trS_B) A_B,
/// reordered to copy order A1,B1,A2,B2. Bilinear in both arguments.
GlobalEffect star(const ToyEffect& fa, const ToyEffect& fb);

/// (F_A ⋆ F_B)(psi_AB).
double joint_prob(const ToyEffect& fa, const ToyEffect& fb, const BipartiteVec& psi_ab);

/// Reduced state tr_B(S_B psi psi^⊗2) + (S_A/trS_A) tr(A_A A_B psi psi^⊗2);
/// equals S(rho⊗rho)S + (1-tr(...)) S/trS with rho = tr_B |psi><psi|.
ToyState reduced_state(const BipartiteVec& psi_ab);

/// Conditional state of A given Bob's outcome fb. Returns the outcome weight
/// (u_A ⋆ F_B)(psi) and the normalized state. Throws ZeroProbabilityBranch
/// when the weight vanishes.
std::pair<double, ToyState> conditional_state(const BipartiteVec& psi_ab, const ToyEffect& fb);

/// Explicit finite ensemble {(p_i, psi_i)} with sum p_i |psi_i><psi_i|^⊗2 =
/// omega. Exact (phase-averaged over 5th roots of unity) when omega carries a
/// witness; otherwise a frame-based search. Throws DecompositionFailed.
Ensemble convex_decomposition(const ToyState& omega, const DecompOptions& opt = {});

/// The local effect F'_A with F'_A(psi) = F_AB(psi ⊗ phi_b), with explicit
/// term lists derived from the provenance of f_ab. Passes validate checks.
ToyEffect induced_local_effect(const GlobalEffect& f_ab, const Vec& phi_b);

/// tr_2(|psi><psi|^⊗2) ⊗ |0><0| = |psi><psi| ⊗ |0><0| on C^d ⊗ C^d.
Mat hyper_decohere(const Vec& psi);
/// Linear extension M -> tr_2(M) ⊗ |0><0|.
Mat hyper_decohere_map(const Mat& m);

struct MembershipResult {
  bool member = false;
  double distance = 0.0;  // Frobenius distance to the reduced-state image
};

/// Decides membership of omega in the closure of reduced states of pure
/// bipartite states with ancilla dimension d_b, by minimizing the Frobenius
/// distance over the rho-parametrized family (rank(rho) <= min(d, d_b)).
/// Full 40-point tensor grid for d = 2; seeded multi-start line scans plus
/// coordinate descent otherwise.
MembershipResult is_reduced_state(const ToyState& omega, int d_b, double tol = 1e-3);

struct ConstraintResult {
  std::string constraint;
  bool pass = false;
  double max_residual = 0.0;
  int trials = 0;
};

struct ConstraintReport {
  int d_a = 0, d_b = 0;
  std::uint64_t seed = 0;
  std::vector<ConstraintResult> results;
  bool all_pass() const;
};

struct VerifyOptions {
  /// Negative control: drop the A⊗A term of the ⋆-product, which breaks the
  /// unit normalization u ⋆ u = u checked by C3.
  bool corrupt_star = false;
};

/// Seeded consistency suite: C1 (rotated effects revalidate), C2 (distinct
/// rays are distinguished by some canonical effect), C3 (product states carry
/// no correlations; u ⋆ u = u), C4 (conditional states admit convex
/// decompositions), C5 (induced local effects validate), plus no-signalling.
/// Trials are independently seeded as seed + trial index.
ConstraintReport verify_constraints(int d_a, int d_b, int trials, std::uint64_t seed,
                                    const VerifyOptions& options = {});

std::string report_to_json(const ConstraintReport& report);

struct FigurePoint {
  double x, y;
};

struct FigureData {
  std::vector<FigurePoint> pure, mixed, reduced;
};

/// 2-D projection of the d=2 state space: x = tr(omega (Z⊗I + I⊗Z))/2,
/// y = tr(omega |Phi><Phi|) with Phi = (|01> + |10>)/sqrt(2). Pure states lie
/// on y = (1 - x^2)/2; |0><0|^⊗2 -> (1,0), |1><1|^⊗2 -> (-1,0).
FigureData figure_data(int samples, std::uint64_t seed);

/// CSV with header kind,x,y and kind in {pure, mixed, reduced}.
void write_figure_csv(const FigureData& data, std::ostream& out);

}  // namespace opflab::toy
