#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opflab/char_cache.hpp"
#include "opflab/rep.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

using namespace opflab::rep;

namespace {

// Euler pentagonal-number recurrence, kept independent of the library
long pentagonal_count(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long total = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      long term = (g1 <= m ? p[m - g1] : 0) + (g2 <= m ? p[m - g2] : 0);
      total += (k % 2 == 1) ? term : -term;
    }
    p[m] = total;
  }
  return p[n];
}

Partition random_partition(int n, std::mt19937_64& rng) {
  auto all = partitions(n);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace

TEST_CASE("partition parsing and shorthand") {
  CHECK(Partition::parse("4,2^7").parts() == std::vector<int>({4, 2, 2, 2, 2, 2, 2, 2}));
  CHECK(Partition::parse("3, 1, 1").size() == 5);
  CHECK(Partition::parse("").empty());
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK((Partition({2, 1}) + Partition({2, 1})).parts() == std::vector<int>({4, 2}));
}

TEST_CASE("partitions enumeration in reverse-lexicographic order") {
  auto p4 = partitions(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0].parts() == std::vector<int>({4}));
  CHECK(p4[1].parts() == std::vector<int>({3, 1}));
  CHECK(p4[2].parts() == std::vector<int>({2, 2}));
  CHECK(p4[3].parts() == std::vector<int>({2, 1, 1}));
  CHECK(p4[4].parts() == std::vector<int>({1, 1, 1, 1}));

  auto p4r2 = partitions(4, 2);
  REQUIRE(p4r2.size() == 3);
  CHECK(p4r2[2].parts() == std::vector<int>({2, 2}));

  CHECK(partitions(18).size() == 385);
  CHECK(partitions(27).size() == 3010);
  for (int n : {10, 18, 27}) {
    CHECK(partition_count(n) == Int(pentagonal_count(n)));
    CHECK(Int(partitions(n).size()) == partition_count(n));
  }
  CHECK(partitions(0).size() == 1);
}

TEST_CASE("symmetric-group dimensions via hooks") {
  CHECK(sym_dim(Partition({5})) == 1);
  CHECK(sym_dim(Partition({1, 1, 1, 1, 1})) == 1);
  CHECK(sym_dim(Partition({2, 1})) == 2);  // hooks 3,1,1
  // sum of squared dimensions is n!
  for (int n : {4, 6, 8}) {
    Int total = 0;
    for (const auto& lam : partitions(n)) total += sym_dim(lam) * sym_dim(lam);
    CHECK(total == factorial(n));
  }
}

TEST_CASE("unitary-group dimensions") {
  for (int d = 2; d <= 9; ++d) CHECK(su_dim(Partition({1}), d) == d);
  for (int d = 2; d <= 9; ++d) {
    std::vector<int> parts{2};
    for (int i = 0; i < d - 2; ++i) parts.push_back(1);
    CHECK(su_dim(Partition(parts), d) == Int(d) * d - 1);
  }
  // SU(3) irrep (4,2): Dynkin labels (a,b) = (2,2), dim = (a+1)(b+1)(a+b+2)/2
  Int dynkin = Int(3) * 3 * 6 / 2;
  CHECK(su_dim(Partition({4, 2}), 3) == dynkin);
  CHECK(dynkin == 27);
  // full columns do not change the irrep
  CHECK(su_dim(Partition({6, 6, 6}), 3) == 1);
  CHECK(su_dim(Partition({3, 2, 1}), 2) == 0);  // too many rows
}

TEST_CASE("conjugacy class sizes") {
  CHECK(class_size(Partition({1, 1, 1})) == 1);
  CHECK(class_size(Partition({5})) == factorial(4));
  CHECK(class_size(Partition({2, 1})) == 3);
  for (int n = 1; n <= 20; ++n) {
    Int total = 0;
    for (const auto& mu : partitions(n)) total += class_size(mu);
    CHECK(total == factorial(n));
  }
}

TEST_CASE("characters: identity column, trivial row, and a brute-force value") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> ones(n, 1);
    Partition identity(ones);
    for (const auto& lam : partitions(n)) {
      CHECK(mn_character(lam, identity) == sym_dim(lam));
      CHECK(mn_character(Partition({n}), lam) == 1);
    }
  }
  // chi_{(2,1)} is the standard representation: fixed points minus one.
  // The 3-cycle (0 1 2) fixes nothing, so the character there is 0 - 1 = -1.
  std::array<int, 3> cycle{1, 2, 0};
  int fixed = 0;
  for (int i = 0; i < 3; ++i)
    if (cycle[i] == i) ++fixed;
  CHECK(mn_character(Partition({2, 1}), Partition({3})) == Int(fixed - 1));
  CHECK(mn_character(Partition({2, 1}), Partition({3})) == -1);
}

TEST_CASE("character orthogonality up to n = 8") {
  for (int n = 2; n <= 8; ++n) {
    auto irreps = partitions(n);
    auto classes = partitions(n);
    std::vector<Int> sizes;
    for (const auto& c : classes) sizes.push_back(class_size(c));
    for (size_t a = 0; a < irreps.size(); ++a)
      for (size_t b = a; b < irreps.size(); ++b) {
        Int sum = 0;
        for (size_t c = 0; c < classes.size(); ++c)
          sum += sizes[c] * mn_character(irreps[a], classes[c]) * mn_character(irreps[b], classes[c]);
        CHECK(sum == (a == b ? factorial(n) : Int(0)));
      }
  }
}

TEST_CASE("kronecker coefficients: fixed values and symmetries") {
  CHECK(kronecker(Partition({2}), Partition({1, 1}), Partition({1, 1})) == 1);
  CHECK(kronecker(Partition({2, 1}), Partition({2, 1}), Partition({2, 1})) == 1);
  // tensoring with the trivial representation is the identity
  for (int n : {3, 4, 5}) {
    auto irreps = partitions(n);
    for (const auto& a : irreps)
      for (const auto& b : irreps)
        CHECK(kronecker(a, b, Partition({n})) == (a == b ? Int(1) : Int(0)));
  }
  // full symmetry in the three arguments
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    Partition a = random_partition(n, rng), b = random_partition(n, rng), c = random_partition(n, rng);
    Int g = kronecker(a, b, c);
    CHECK(g == kronecker(a, c, b));
    CHECK(g == kronecker(b, a, c));
    CHECK(g == kronecker(c, b, a));
  }
  // dimension sum rule: sum_lambda g * dim(lambda) = dim(mu) dim(nu)
  for (int n : {4, 5, 6}) {
    auto irreps = partitions(n);
    for (const auto& mu : irreps)
      for (const auto& nu : irreps) {
        Int sum = 0;
        for (const auto& lam : irreps) sum += kronecker(lam, mu, nu) * sym_dim(lam);
        CHECK(sum == sym_dim(mu) * sym_dim(nu));
      }
  }
}

TEST_CASE("padding") {
  CHECK(pad(Partition(), 3, 9).parts() == std::vector<int>({3, 3, 3}));
  CHECK(pad(Partition({2, 1}), 2, 5).parts() == std::vector<int>({3, 2}));
  CHECK_THROWS_AS(pad(Partition({1}), 3, 9), NonIntegerPadding);
  CHECK_THROWS_AS(pad(Partition({1, 1, 1}), 2, 5), std::invalid_argument);

  // additivity: pad(mu,m,f) + pad(mu',m,f') = pad(mu+mu', m, f+f')
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 2 + static_cast<int>(rng() % 3);
    int n1 = 1 + static_cast<int>(rng() % 5), n2 = 1 + static_cast<int>(rng() % 5);
    Partition mu = random_partition(n1, rng), nu = random_partition(n2, rng);
    if (mu.rows() > m || nu.rows() > m) continue;
    int f1 = mu.size() + m * static_cast<int>(rng() % 3);
    int f2 = nu.size() + m * static_cast<int>(rng() % 3);
    CHECK(pad(mu, m, f1) + pad(nu, m, f2) == pad(mu + nu, m, f1 + f2));
  }
}

TEST_CASE("branching multiplicities") {
  CHECK(branching_multiplicity(Partition({1}), 3, 3, Partition({1}), Partition({1})) == 1);
  CHECK(branching_multiplicity(Partition({1, 1}), 2, 2, Partition({2}), Partition({1, 1})) == 1);
  CHECK(branching_multiplicity(Partition({1, 1}), 2, 2, Partition({2}), Partition({2})) == 0);
  // impossible padding folds to zero: (|lambda| - |mu|)/m = 3/2
  CHECK(branching_multiplicity(Partition({2, 1}), 2, 2, Partition(), Partition({1})) == 0);
}

TEST_CASE("branch decomposition with dimension checks") {
  auto terms = branch_decompose(Partition({1, 1}), 2, 2);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].mu.parts() == std::vector<int>({2}));
  CHECK(terms[0].nu.parts() == std::vector<int>({1, 1}));
  CHECK(terms[0].multiplicity == 1);
  CHECK(terms[1].mu.parts() == std::vector<int>({1, 1}));
  CHECK(terms[1].nu.parts() == std::vector<int>({2}));
  Int dim_sum = 0;
  for (const auto& t : terms) dim_sum += t.multiplicity * su_dim(t.mu, 2) * su_dim(t.nu, 2);
  CHECK(dim_sum == 6);

  auto sq = branch_decompose(Partition({2}), 2, 2);
  REQUIRE(sq.size() == 2);
  Int sq_sum = 0;
  for (const auto& t : sq) sq_sum += t.multiplicity * su_dim(t.mu, 2) * su_dim(t.nu, 2);
  CHECK(sq_sum == 10);

  auto fund = branch_decompose(Partition({1}), 3, 2);
  REQUIRE(fund.size() == 1);
  CHECK(fund[0].mu.parts() == std::vector<int>({1}));
  CHECK(fund[0].nu.parts() == std::vector<int>({1}));
  CHECK(fund[0].multiplicity == 1);

  // dimension identity across small diagrams
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    for (int f = 1; f <= 6; ++f)
      for (const auto& lam : partitions(f, m * n)) {
        Int total = 0;
        for (const auto& t : branch_decompose(lam, m, n))
          total += t.multiplicity * su_dim(t.mu, m) * su_dim(t.nu, n);
        CHECK(total == su_dim(lam, m * n));
      }
  }
}

TEST_CASE("diagrams and dimensions of the (2j, j^{d-2}) family") {
  CHECK(born_rep_partition(1, 3).parts() == std::vector<int>({2, 1}));
  CHECK(born_rep_partition(2, 9).parts() == std::vector<int>({4, 2, 2, 2, 2, 2, 2, 2}));
  CHECK(born_rep_partition(0, 5).empty());
  CHECK(born_rep_partition(3, 2).parts() == std::vector<int>({6}));

  for (int d = 2; d <= 9; ++d) CHECK(dim_Dj(1, d) == Int(d) * d - 1);
  CHECK(dim_Dj(2, 3) == 27);
  CHECK(dim_Dj(2, 2) == 5);
  for (int d = 2; d <= 9; ++d)
    for (int j = 0; j <= 4; ++j) CHECK(dim_Dj(j, d) == su_dim(born_rep_partition(j, d), d));
  // j = 1 is the strict minimum over nontrivial members of the family
  for (int d = 2; d <= 9; ++d)
    for (int j = 2; j <= 6; ++j) CHECK(dim_Dj(1, d) < dim_Dj(j, d));
}

TEST_CASE("semigroup property on seeded positive pairs") {
  std::mt19937_64 rng(99);
  int found = 0;
  while (found < 200) {
    int n1 = 2 + static_cast<int>(rng() % 5), n2 = 2 + static_cast<int>(rng() % 5);
    Partition l1 = random_partition(n1, rng), m1 = random_partition(n1, rng),
              v1 = random_partition(n1, rng);
    Partition l2 = random_partition(n2, rng), m2 = random_partition(n2, rng),
              v2 = random_partition(n2, rng);
    if (kronecker(l1, m1, v1) == 0 || kronecker(l2, m2, v2) == 0) continue;
    ++found;
    CHECK(kronecker(l1 + l2, m1 + m2, v1 + v2) > 0);
  }
}

TEST_CASE("K-value enumeration for d = 2") {
  auto values = enumerate_K_values(2, 14);
  std::vector<Int> expected{3, 7, 8, 10, 11, 12, 14};
  CHECK(values == expected);
  for (const auto& v : values) CHECK(v != 13);  // even-only sets are excluded
  CHECK(enumerate_K_values(2, 3) == std::vector<Int>{3});
  CHECK(enumerate_K_values(2, 2).empty());

  // frozen from an exhaustive subset enumeration: above 14 every value up to
  // the limit becomes achievable
  std::vector<Int> wide = enumerate_K_values(2, 30);
  std::vector<Int> expected30{3, 7, 8, 10, 11, 12, 14};
  for (int v = 15; v <= 30; ++v) expected30.push_back(v);
  CHECK(wide == expected30);
  CHECK_THROWS_AS(enumerate_K_values(2, Int("100000000000")), std::invalid_argument);
}

TEST_CASE("holism certificates at small degree") {
  auto quantum = certify_holistic(1, 3, 3);
  CHECK(quantum.method == "direct");
  CHECK(quantum.multiplicity == 0);
  CHECK_FALSE(quantum.holistic);
  // the 2x2 quantum case: (2,1,1) restricted to SU(2) x SU(2) over S_4
  auto small = certify_holistic(1, 2, 2);
  CHECK(small.multiplicity == 0);
}

TEST_CASE("concurrent character evaluation agrees with the serial result") {
  auto& cache = CharacterCache::instance();
  cache.clear(11);
  auto classes = partitions(11);
  Partition lambda({4, 3, 2, 1, 1});
  std::vector<Int> serial;
  for (const auto& c : classes) serial.push_back(mn_character(lambda, c));
  cache.clear(11);

  std::vector<std::vector<Int>> results(4);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (size_t i = w; i < classes.size(); i += 4) {
        // interleaved strides force concurrent memo insertion
        results[w].push_back(mn_character(lambda, classes[i]));
      }
    });
  for (auto& t : workers) t.join();
  for (int w = 0; w < 4; ++w)
    for (size_t k = 0; k < results[w].size(); ++k) CHECK(results[w][k] == serial[w + 4 * k]);
}

TEST_CASE("size mismatches are rejected") {
  CHECK_THROWS_AS(mn_character(Partition({2, 1}), Partition({2})), std::invalid_argument);
  CHECK_THROWS_AS(kronecker(Partition({2}), Partition({2}), Partition({3})), std::invalid_argument);
  CHECK_THROWS_AS(partitions(-1), std::invalid_argument);
  CHECK_THROWS_AS(dim_Dj(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(certify_holistic(0, 3, 3), std::invalid_argument);
}

TEST_CASE("character cache warm/stat/clear round trip") {
  auto& cache = CharacterCache::instance();
  cache.clear(9);
  CHECK(cache.entry_count(9) == 0);
  // computing any degree-9 character repopulates the cache
  mn_character(Partition({3, 3, 3}), Partition({3, 3, 3}));
  cache.save();
  CHECK(cache.entry_count(9) > 0);
  auto hits_before = cache.hit_count();
  mn_character(Partition({3, 3, 3}), Partition({3, 3, 3}));
  CHECK(cache.hit_count() > hits_before);
  cache.clear(9);
  CHECK(cache.entry_count(9) == 0);
  CHECK_THROWS_AS(cache.warm(10), std::invalid_argument);
}
