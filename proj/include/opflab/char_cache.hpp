#pragma once

#include "opflab/rep.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

namespace opflab::rep {

/// Process-wide memo for symmetric-group characters, persisted to disk as one
/// JSON file per degree n. The memo key is (shape, class); intermediate shapes
/// arising inside the Murnaghan-Nakayama recursion are themselves characters
/// of smaller symmetric groups and are cached under their own degree.
///
/// Cache directory: $OPFLAB_CACHE_DIR, default ".opflab-cache/".
/// File format: {"version":1, "n":<int>, "order":"revlex",
///               "entries":{"<irrep>|<class>": "<decimal integer>", ...}}
class CharacterCache {
 public:
  static CharacterCache& instance();

  /// chi_lambda(mu), memoized; loads/persists the disk cache as needed.
  Int character(const Partition& lambda, const Partition& mu);

  /// Characters of lambda on every class of S_n in reverse-lexicographic
  /// class order.
  std::vector<Int> character_row(const Partition& lambda);

  /// Precomputes the character rows used by the SU(9) local-tomography
  /// certificates of degree n (n = 9j): the (2j, j^7) row and the (3j)^3 row.
  /// Returns the number of entries now cached for degree n.
  std::size_t warm(int n);

  std::size_t entry_count(int n);
  void clear(int n);
  void clear_all();
  /// Flush dirty degrees to disk.
  void save();

  std::uint64_t hit_count() const;

  static std::filesystem::path cache_dir();

 private:
  CharacterCache() = default;

  struct Degree {
    std::unordered_map<std::string, Int> entries;
    bool loaded = false;
    bool dirty = false;
  };

  Degree& degree_locked(int n);
  void load_locked(int n);
  void save_locked(int n);

  mutable std::mutex mutex_;
  std::map<int, Degree> degrees_;
  std::uint64_t hits_ = 0;
};

}  // namespace opflab::rep
