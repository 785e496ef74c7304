#pragma once

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "asdim/building.hpp"

namespace asdim::detail {

/// Thread-safe two-way map between chamber keys and dense ids.
template <typename Key, typename Hash = std::hash<Key>>
class Interner {
 public:
  ChamberId intern(const Key& key) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.emplace(key, ChamberId{keys_.size()});
    if (inserted) keys_.push_back(key);
    return it->second;
  }

  Key key(ChamberId id) const {
    std::shared_lock lock(mutex_);
    const auto i = static_cast<std::size_t>(id);
    if (i >= keys_.size()) throw UnknownChamber("unknown chamber id " + std::to_string(i));
    return keys_[i];
  }

  bool contains(ChamberId id) const {
    std::shared_lock lock(mutex_);
    return static_cast<std::size_t>(id) < keys_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, ChamberId, Hash> ids_;
  std::deque<Key> keys_;
};

}  // namespace asdim::detail
