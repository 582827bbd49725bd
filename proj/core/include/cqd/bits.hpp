#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace cqd {

// Dynamic bitset sized at construction; used for adjacency rows, candidate
// sets in backtracking, and search states.  Kept deliberately small: only the
// operations the solvers need.
class Bits {
 public:
  Bits() : n_(0) {}
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void set(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] |= uint64_t(1) << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  void flip(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] ^= uint64_t(1) << (i & 63);
  }
  void clear() { w_.assign(w_.size(), 0); }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  // lowest set bit >= from, or -1
  int next(int from = 0) const {
    if (from >= n_) return -1;
    int wi = from >> 6;
    uint64_t cur = w_[wi] & (~uint64_t(0) << (from & 63));
    while (true) {
      if (cur) return (wi << 6) + std::countr_zero(cur);
      if (++wi >= (int)w_.size()) return -1;
      cur = w_[wi];
    }
  }

  // clear all bits < i
  void reset_below(int i) {
    if (i <= 0) return;
    if (i >= n_) {
      clear();
      return;
    }
    int wi = i >> 6;
    for (int k = 0; k < wi; k++) w_[k] = 0;
    w_[wi] &= ~uint64_t(0) << (i & 63);
  }

  Bits& operator&=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
    return *this;
  }
  // this &= ~o
  Bits& and_not(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool intersects(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  // is this a subset of o?
  bool subset_of(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  template <class F>
  void for_each(F f) const {
    for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
  }
  std::vector<int> to_vector() const {
    std::vector<int> v;
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

 private:
  int n_;
  std::vector<uint64_t> w_;
};

}  // namespace cqd
