#include "opflab/char_cache.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>

namespace opflab::rep {

namespace {

std::string key_of(const std::vector<int>& shape, const std::vector<int>& cls) {
  std::string key;
  key.reserve(3 * (shape.size() + cls.size()) + 1);
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(shape[i]);
  }
  key += '|';
  for (size_t i = 0; i < cls.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(cls[i]);
  }
  return key;
}

int sum_of(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

}  // namespace

CharacterCache& CharacterCache::instance() {
  static CharacterCache cache;
  return cache;
}

std::filesystem::path CharacterCache::cache_dir() {
  if (const char* env = std::getenv("OPFLAB_CACHE_DIR")) return std::filesystem::path(env);
  return std::filesystem::path(".opflab-cache");
}

CharacterCache::Degree& CharacterCache::degree_locked(int n) {
  Degree& deg = degrees_[n];
  if (!deg.loaded) load_locked(n);
  return deg;
}

void CharacterCache::load_locked(int n) {
  Degree& deg = degrees_[n];
  deg.loaded = true;
  auto path = cache_dir() / ("char-n" + std::to_string(n) + ".json");
  std::ifstream in(path);
  if (!in) return;
  try {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("version", 0) != 1 || doc.value("order", "") != "revlex") return;
    for (auto& [key, value] : doc.at("entries").items())
      deg.entries.emplace(key, Int(value.get<std::string>()));
  } catch (const std::exception&) {
    // unreadable cache files are ignored and rebuilt
    deg.entries.clear();
  }
}

void CharacterCache::save_locked(int n) {
  Degree& deg = degrees_[n];
  if (!deg.dirty) return;
  std::error_code ec;
  std::filesystem::create_directories(cache_dir(), ec);
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, value] : deg.entries) entries[key] = value.str();
  nlohmann::json doc;
  doc["version"] = 1;
  doc["n"] = n;
  doc["order"] = "revlex";
  doc["entries"] = std::move(entries);
  auto path = cache_dir() / ("char-n" + std::to_string(n) + ".json");
  std::ofstream out(path);
  out << doc.dump();
  deg.dirty = false;
}

void CharacterCache::save() {
  std::lock_guard<std::mutex> lock(mutex_);
  for (auto& [n, deg] : degrees_)
    if (deg.dirty) save_locked(n);
}

std::size_t CharacterCache::entry_count(int n) {
  std::lock_guard<std::mutex> lock(mutex_);
  return degree_locked(n).entries.size();
}

void CharacterCache::clear(int n) {
  std::lock_guard<std::mutex> lock(mutex_);
  degrees_.erase(n);
  std::error_code ec;
  std::filesystem::remove(cache_dir() / ("char-n" + std::to_string(n) + ".json"), ec);
  Degree& deg = degrees_[n];  // mark as loaded-and-empty so the file is not re-read
  deg.loaded = true;
}

void CharacterCache::clear_all() {
  std::lock_guard<std::mutex> lock(mutex_);
  degrees_.clear();
  std::error_code ec;
  std::filesystem::remove_all(cache_dir(), ec);
}

std::uint64_t CharacterCache::hit_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return hits_;
}

// Murnaghan-Nakayama over beta-sets. Class parts are consumed largest first;
// every recursion node is itself a character of a smaller symmetric group and
// lands in the memo under its own degree.
Int CharacterCache::character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size())
    throw std::invalid_argument("character: irrep and class must partition the same n");
  std::lock_guard<std::mutex> lock(mutex_);

  // iterative-on-recursion helper bound to the locked maps
  std::function<Int(const std::vector<int>&, const std::vector<int>&, size_t)> chi =
      [&](const std::vector<int>& shape, const std::vector<int>& cls, size_t cls_pos) -> Int {
    if (shape.empty()) return 1;
    const int n = sum_of(shape);
    Degree& deg = degree_locked(n);
    std::vector<int> cls_rest(cls.begin() + cls_pos, cls.end());
    std::string key = key_of(shape, cls_rest);
    auto it = deg.entries.find(key);
    if (it != deg.entries.end()) {
      ++hits_;
      return it->second;
    }

    const int strip = cls[cls_pos];
    const int k = static_cast<int>(shape.size());
    // beta set: strictly decreasing first-column hook lengths
    std::vector<int> beta(k);
    for (int i = 0; i < k; ++i) beta[i] = shape[i] + (k - 1 - i);

    Int total = 0;
    for (int pick = 0; pick < k; ++pick) {
      int b = beta[pick];
      int target = b - strip;
      if (target < 0) continue;
      bool occupied = false;
      int height = 0;
      for (int i = 0; i < k; ++i) {
        if (i == pick) continue;
        if (beta[i] == target) {
          occupied = true;
          break;
        }
        if (beta[i] > target && beta[i] < b) ++height;
      }
      if (occupied) continue;
      std::vector<int> new_beta = beta;
      new_beta[pick] = target;
      std::sort(new_beta.begin(), new_beta.end(), std::greater<int>());
      std::vector<int> new_shape(k);
      for (int i = 0; i < k; ++i) new_shape[i] = new_beta[i] - (k - 1 - i);
      while (!new_shape.empty() && new_shape.back() == 0) new_shape.pop_back();
      Int sub = chi(new_shape, cls, cls_pos + 1);
      if (height % 2 == 0)
        total += sub;
      else
        total -= sub;
    }
    deg.entries.emplace(std::move(key), total);
    deg.dirty = true;
    return total;
  };

  return chi(lambda.parts(), mu.parts(), 0);
}

std::vector<Int> CharacterCache::character_row(const Partition& lambda) {
  auto classes = partitions(lambda.size());
  std::vector<Int> row;
  row.reserve(classes.size());
  for (const auto& cls : classes) row.push_back(character(lambda, cls));
  save();
  return row;
}

std::size_t CharacterCache::warm(int n) {
  if (n <= 0 || n % 9 != 0)
    throw std::invalid_argument("warm: expects a degree n = 9j used by the SU(9) certificates");
  const int j = n / 9;
  character_row(born_rep_partition(j, 9));
  character_row(pad(Partition(), 3, n));
  save();
  return entry_count(n);
}

}  // namespace opflab::rep
