#include "opflab/rep.hpp"

#include "opflab/char_cache.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace opflab::rep {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
    size_ += parts_[i];
  }
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    auto caret = token.find('^');
    int value = std::stoi(token.substr(0, caret));
    int repeat = caret == std::string::npos ? 1 : std::stoi(token.substr(caret + 1));
    if (repeat < 0) throw std::invalid_argument("negative repeat count in partition");
    for (int r = 0; r < repeat; ++r) parts.push_back(value);
    token.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  flush();
  return Partition(std::move(parts));
}

Partition Partition::operator+(const Partition& other) const {
  std::vector<int> sum(std::max(parts_.size(), other.parts_.size()), 0);
  for (size_t i = 0; i < parts_.size(); ++i) sum[i] += parts_[i];
  for (size_t i = 0; i < other.parts_.size(); ++i) sum[i] += other.parts_[i];
  return Partition(std::move(sum));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  return os.str();
}

namespace {

void gen_partitions(int n, int max_part, int rows_left, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(cur));
    return;
  }
  if (rows_left == 0) return;
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n, int max_rows) {
  if (n < 0) throw std::invalid_argument("partitions: n must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, max_rows < 0 ? n : max_rows, cur, out);
  if (n == 0) out.assign(1, Partition());
  return out;
}

Int partition_count(int n) {
  if (n < 0) return 0;
  std::vector<Int> p(static_cast<size_t>(n) + 1);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Int total = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2;
      int g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      Int term = 0;
      if (g1 <= m) term += p[m - g1];
      if (g2 <= m) term += p[m - g2];
      if (k % 2 == 1)
        total += term;
      else
        total -= term;
    }
    p[m] = total;
  }
  return p[n];
}

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

std::vector<int> conjugate(const std::vector<int>& parts) {
  if (parts.empty()) return {};
  std::vector<int> conj(parts[0], 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) ++conj[j];
  return conj;
}

}  // namespace

Int sym_dim(const Partition& lambda) {
  const auto& parts = lambda.parts();
  auto conj = conjugate(parts);
  Int hooks = 1;
  for (size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j)
      hooks *= parts[i] - j + conj[j] - static_cast<int>(i) - 1;
  return factorial(lambda.size()) / hooks;
}

Int su_dim(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("su_dim: d must be positive");
  if (lambda.rows() > d) return 0;
  const auto& parts = lambda.parts();
  auto conj = conjugate(parts);
  Int num = 1, den = 1;
  for (size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j) {
      num *= d + j - static_cast<int>(i);
      den *= parts[i] - j + conj[j] - static_cast<int>(i) - 1;
    }
  return num / den;
}

Int class_size(const Partition& mu) {
  Int z = 1;
  const auto& parts = mu.parts();
  size_t i = 0;
  while (i < parts.size()) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    int mult = static_cast<int>(j - i);
    for (int r = 0; r < mult; ++r) z *= parts[i];
    z *= factorial(mult);
    i = j;
  }
  return factorial(mu.size()) / z;
}

Int mn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size())
    throw std::invalid_argument("character: irrep and class must partition the same n");
  return CharacterCache::instance().character(lambda, mu);
}

Int kronecker(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (lambda.size() != mu.size() || lambda.size() != nu.size())
    throw std::invalid_argument("kronecker: partitions must have equal size");
  const int n = lambda.size();
  // evaluate the cheapest row first so zero characters short-circuit
  std::array<const Partition*, 3> irreps = {&lambda, &mu, &nu};
  std::sort(irreps.begin(), irreps.end(),
            [](const Partition* a, const Partition* b) { return a->rows() < b->rows(); });
  auto& cache = CharacterCache::instance();
  Int total = 0;
  for (const Partition& cls : partitions(n)) {
    Int prod = class_size(cls);
    bool zero = false;
    for (const Partition* irrep : irreps) {
      Int chi = cache.character(*irrep, cls);
      if (chi == 0) {
        zero = true;
        break;
      }
      prod *= chi;
    }
    if (!zero) total += prod;
  }
  cache.save();
  Int nf = factorial(n);
  if (total % nf != 0) throw std::logic_error("kronecker: sum not divisible by n!");
  return total / nf;
}

std::optional<Partition> try_pad(const Partition& mu, int m, int f) {
  if (mu.rows() > m) return std::nullopt;
  int deficit = f - mu.size();
  if (deficit < 0 || deficit % m != 0) return std::nullopt;
  int add = deficit / m;
  std::vector<int> parts(static_cast<size_t>(m), add);
  for (int i = 0; i < mu.rows(); ++i) parts[i] += mu.parts()[i];
  return Partition(std::move(parts));
}

Partition pad(const Partition& mu, int m, int f) {
  if (mu.rows() > m) throw std::invalid_argument("pad: partition has more rows than requested");
  auto padded = try_pad(mu, m, f);
  if (!padded) throw NonIntegerPadding("pad: (f - |mu|) is not divisible by the row count");
  return *padded;
}

Int branching_multiplicity(const Partition& lambda, int m, int n, const Partition& mu,
                           const Partition& nu) {
  if (lambda.rows() > m * n) return 0;
  auto mu_f = try_pad(mu, m, lambda.size());
  auto nu_f = try_pad(nu, n, lambda.size());
  if (!mu_f || !nu_f) return 0;
  return kronecker(lambda, *mu_f, *nu_f);
}

std::vector<BranchTerm> branch_decompose(const Partition& lambda, int m, int n) {
  const int f = lambda.size();
  auto classes = partitions(f);
  std::vector<Int> sizes(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) sizes[c] = class_size(classes[c]);
  auto& cache = CharacterCache::instance();
  auto row_l = cache.character_row(lambda);

  std::vector<BranchTerm> terms;
  auto mus = partitions(f, m);
  auto nus = partitions(f, n);
  Int nf = factorial(f);
  for (const auto& kappa : mus) {
    auto row_k = cache.character_row(kappa);
    for (const auto& tau : nus) {
      auto row_t = cache.character_row(tau);
      Int total = 0;
      for (size_t c = 0; c < classes.size(); ++c) {
        if (row_l[c] == 0 || row_k[c] == 0 || row_t[c] == 0) continue;
        total += sizes[c] * row_l[c] * row_k[c] * row_t[c];
      }
      if (total == 0) continue;
      if (total % nf != 0) throw std::logic_error("branch_decompose: sum not divisible by n!");
      terms.push_back({kappa, tau, total / nf});
    }
  }
  return terms;
}

Partition born_rep_partition(int j, int d) {
  if (j < 0) throw std::invalid_argument("born_rep_partition: j must be nonnegative");
  if (d < 2) throw std::invalid_argument("born_rep_partition: d must be at least 2");
  if (j == 0) return Partition();
  std::vector<int> parts;
  parts.push_back(2 * j);
  for (int i = 0; i < d - 2; ++i) parts.push_back(j);
  return Partition(std::move(parts));
}

Int dim_Dj(int j, int d) {
  if (j < 0 || d < 2) throw std::invalid_argument("dim_Dj: requires j >= 0 and d >= 2");
  Int num = 2 * j + d - 1;
  Int den = d - 1;
  for (int k = 1; k <= d - 2; ++k) {
    num *= Int(k + j) * (k + j);
    den *= Int(k) * k;
  }
  if (num % den != 0) throw std::logic_error("dim_Dj: formula did not produce an integer");
  return num / den;
}

HolismCertificate certify_holistic(int j, int d_a, int d_b, bool force_direct) {
  if (j < 1) throw std::invalid_argument("certify_holistic: j must be at least 1");
  if (d_a < 2 || d_b < 2) throw std::invalid_argument("certify_holistic: local dimensions must be >= 2");
  const int d = d_a * d_b;
  HolismCertificate cert;
  cert.j = j;
  cert.d_a = d_a;
  cert.d_b = d_b;
  if (j <= 3 || force_direct) {
    Partition lambda = born_rep_partition(j, d);
    Partition mu_f = pad(Partition(), d_a, lambda.size());
    Partition nu_f = pad(Partition(), d_b, lambda.size());
    cert.method = "direct";
    cert.multiplicity = kronecker(lambda, mu_f, nu_f);
    cert.holistic = cert.multiplicity > 0;
    return cert;
  }
  // +2 induction down to the base cases j=2 (even) or j=3 (odd)
  const int base = (j % 2 == 0) ? 2 : 3;
  HolismCertificate base_cert = certify_holistic(base, d_a, d_b);
  HolismCertificate step_cert = certify_holistic(2, d_a, d_b);
  cert.method = "inductive";
  cert.holistic = base_cert.holistic && step_cert.holistic;
  cert.multiplicity = cert.holistic ? 1 : 0;
  cert.inductive_chain.push_back(base);
  for (int s = base; s < j; s += 2) cert.inductive_chain.push_back(2);
  return cert;
}

std::vector<Int> enumerate_K_values(int d, const Int& limit) {
  if (d < 2) throw std::invalid_argument("enumerate_K_values: d must be at least 2");
  if (limit > 10'000'000) throw std::invalid_argument("enumerate_K_values: limit too large");
  const long cap = limit < 0 ? -1 : limit.convert_to<long>();
  std::vector<long> dims;
  std::vector<int> js;
  for (int j = 1;; ++j) {
    Int dim = dim_Dj(j, d);
    if (dim > limit) break;
    dims.push_back(dim.convert_to<long>());
    js.push_back(j);
  }
  // 0/1 subset-sum reachability, tracking whether the set contains an odd j
  std::vector<char> even_only(cap + 1, 0), with_odd(cap + 1, 0);
  even_only[0] = 1;
  for (size_t i = 0; i < dims.size(); ++i) {
    const long w = dims[i];
    const bool odd = js[i] % 2 == 1;
    for (long s = cap; s >= w; --s) {
      if (odd) {
        if (even_only[s - w] || with_odd[s - w]) with_odd[s] = 1;
      } else {
        if (with_odd[s - w]) with_odd[s] = 1;
        if (even_only[s - w]) even_only[s] = 1;
      }
    }
  }
  std::vector<Int> out;
  const long min_k = 2 * d - 2;
  for (long s = std::max(1L, min_k); s <= cap; ++s) {
    bool achievable = (d == 2) ? with_odd[s] != 0 : (with_odd[s] || even_only[s]);
    if (achievable) out.push_back(s);
  }
  return out;
}

}  // namespace opflab::rep
