#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opflab::rep {

using Int = boost::multiprecision::cpp_int;

/// Weakly decreasing sequence of positive integers. Doubles as Young diagram,
/// S_n irrep label and SU(d) irrep label. The empty partition is allowed.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  /// Parses "4,2,2,2" or the exponent shorthand "4,2^3". Whitespace ignored.
  static Partition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }  // total number of boxes
  int rows() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Row-wise sum (shorter partition implicitly zero-padded).
  Partition operator+(const Partition& other) const;

  bool operator==(const Partition& other) const { return parts_ == other.parts_; }
  bool operator!=(const Partition& other) const { return parts_ != other.parts_; }
  bool operator<(const Partition& other) const { return parts_ < other.parts_; }

  std::string to_string() const;  // comma-separated, "" for the empty partition

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct NonIntegerPadding : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All partitions of n (optionally with at most max_rows parts) in
/// reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
std::vector<Partition> partitions(int n, int max_rows = -1);

/// Number of partitions of n via the Euler pentagonal-number recurrence.
Int partition_count(int n);

/// Dimension of the S_n irrep labelled lambda (hook-length formula).
Int sym_dim(const Partition& lambda);

/// Dimension of the SU(d) irrep labelled lambda (Weyl hook-content formula);
/// 0 if lambda has more than d rows.
Int su_dim(const Partition& lambda, int d);

/// Size of the S_n conjugacy class with cycle type mu: n!/z_mu.
Int class_size(const Partition& mu);

Int factorial(int n);

/// Character chi_lambda(mu) of S_n, |lambda| = |mu| = n. Exact integer,
/// Murnaghan-Nakayama recursion memoized through the shared character cache.
Int mn_character(const Partition& lambda, const Partition& mu);

/// Kronecker coefficient g(lambda,mu,nu) = (1/n!) sum_C |C| chi chi chi.
/// Symmetric in all three arguments. Streams over classes; only the needed
/// character rows are computed.
Int kronecker(const Partition& lambda, const Partition& mu, const Partition& nu);

/// mu zero-padded to m rows with (f-|mu|)/m added to every row, so |result|=f.
/// Throws NonIntegerPadding when the divisibility fails.
Partition pad(const Partition& mu, int m, int f);
std::optional<Partition> try_pad(const Partition& mu, int m, int f);

/// Multiplicity of Gamma_mu^m x Gamma_nu^n in the restriction of
/// Gamma_lambda^{mn} to SU(m) x SU(n). Padding failure folds to 0.
Int branching_multiplicity(const Partition& lambda, int m, int n, const Partition& mu,
                           const Partition& nu);

struct BranchTerm {
  Partition mu;  // SU(m) label, given as the |lambda|-box representative
  Partition nu;  // SU(n) label, likewise
  Int multiplicity;
};

/// Full decomposition of Gamma_lambda^{mn} restricted to SU(m) x SU(n).
/// Satisfies sum mult * su_dim(mu,m) * su_dim(nu,n) = su_dim(lambda, m*n).
std::vector<BranchTerm> branch_decompose(const Partition& lambda, int m, int n);

/// Young diagram (2j, j^{d-2}); (2j) for d=2; empty for j=0.
Partition born_rep_partition(int j, int d);

/// Closed-form dimension (2j/(d-1)+1) prod_{k=1}^{d-2} (1+j/k)^2, evaluated
/// exactly. Equals su_dim(born_rep_partition(j,d), d).
Int dim_Dj(int j, int d);

struct HolismCertificate {
  int j = 0;
  int d_a = 0;
  int d_b = 0;
  std::string method;        // "direct" | "inductive"
  Int multiplicity = 0;      // exact when method == "direct", else a lower bound of 1
  bool holistic = false;
  std::vector<int> inductive_chain;  // base j followed by +2 steps, empty for direct
};

/// Certifies whether the restriction of the (2j, j^{d-2}) representation of
/// SU(d_a*d_b) to SU(d_a) x SU(d_b) contains trivial x trivial. Direct
/// Kronecker computation for j <= 3 (and j == 1, the quantum control, which
/// yields multiplicity 0); the +2 induction for j > 3 unless force_direct.
HolismCertificate certify_holistic(int j, int d_a, int d_b, bool force_direct = false);

/// All achievable K = sum_{j in J} dim_Dj(j,d) over finite sets J of distinct
/// positive integers, K <= limit, K >= 2d-2. For d = 2, J must contain at
/// least one odd j. For d >= 3 no parity filter applies (experimental).
std::vector<Int> enumerate_K_values(int d, const Int& limit);

}  // namespace opflab::rep
