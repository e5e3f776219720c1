#pragma once

#include <chrono>
#include <exception>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace hk {

// Thread-safe memo table. Concurrent lookups are safe, at most one
// computation per key is in flight, and stored values are never mutated.
// A computation that throws is forgotten so a later call may retry.
template <class Key, class Value, class Hash = std::hash<Key>>
class MemoCache {
 public:
  template <class Compute>
  Value get_or_compute(const Key& key, Compute&& compute) {
    std::unique_lock lock(mu_);
    if (auto it = map_.find(key); it != map_.end()) {
      auto fut = it->second;
      lock.unlock();
      return fut.get();
    }
    std::promise<Value> promise;
    auto fut = promise.get_future().share();
    map_.emplace(key, fut);
    lock.unlock();
    try {
      promise.set_value(compute());
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard relock(mu_);
      map_.erase(key);
    }
    return fut.get();
  }

  std::optional<Value> find(const Key& key) const {
    std::unique_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    auto fut = it->second;
    lock.unlock();
    return fut.get();
  }

  template <class Visit>
  void for_each_ready(Visit&& visit) const {
    std::lock_guard lock(mu_);
    for (const auto& [k, fut] : map_)
      if (fut.wait_for(std::chrono::seconds(0)) == std::future_status::ready) {
        try {
          visit(k, fut.get());
        } catch (const std::exception&) {
        }
      }
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

  void clear() {
    std::lock_guard lock(mu_);
    map_.clear();
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<Key, std::shared_future<Value>, Hash> map_;
};

}  // namespace hk
