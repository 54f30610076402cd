#pragma once

// Internally synchronized memo table. Caches hang off the closures that own
// them (via shared_ptr capture), so copies of an object share one cache and
// the caching is invisible to callers.

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace ptyx {

template <class K, class V>
class Memo {
 public:
  V get(const K& key, const std::function<V()>& compute) const {
    {
      std::lock_guard<std::mutex> lock(state_->mutex);
      auto it = state_->table.find(key);
      if (it != state_->table.end()) return it->second;
    }
    V value = compute();
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->table.emplace(key, std::move(value)).first->second;
  }

 private:
  struct State {
    std::mutex mutex;
    std::map<K, V> table;
  };
  std::shared_ptr<State> state_ = std::make_shared<State>();
};

}  // namespace ptyx
