#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>

// Graphs are capped at FLATBAND_MAX_VERTICES (default 64). Define it to 128
// before including any header to switch to wide masks.
#ifndef FLATBAND_MAX_VERTICES
#define FLATBAND_MAX_VERTICES 64
#endif

namespace flatband {

// Fixed-capacity bitmask over vertex indices. All set operations are exact.
class VertexSet {
 public:
  static constexpr int max_vertices = FLATBAND_MAX_VERTICES;
  static constexpr int word_count = (max_vertices + 63) / 64;

  constexpr VertexSet() : words_{} {}

  static VertexSet single(int v) {
    VertexSet s;
    s.add(v);
    return s;
  }

  // {0, 1, ..., n-1}
  static VertexSet all(int n) {
    check_index(n == 0 ? 0 : n - 1);
    VertexSet s;
    for (int w = 0; w < word_count; ++w) {
      const int lo = w * 64;
      if (n <= lo) break;
      const int k = n - lo >= 64 ? 64 : n - lo;
      s.words_[w] = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    }
    return s;
  }

  void add(int v) {
    check_index(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void remove(int v) {
    check_index(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
  bool contains(int v) const {
    check_index(v);
    return (words_[v >> 6] >> (v & 63)) & 1;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet unite(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < word_count; ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  VertexSet intersect(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < word_count; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  VertexSet difference(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < word_count; ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }
  VertexSet complement_in(int n) const { return all(n).difference(*this); }

  bool subset_of(const VertexSet& o) const {
    for (int i = 0; i < word_count; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    for (int i = 0; i < word_count; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  // Lowest member, or -1 if empty.
  int first() const {
    for (int i = 0; i < word_count; ++i)
      if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
    return -1;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < word_count; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int b = std::countr_zero(w);
        fn(i * 64 + b);
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.words_ == b.words_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    for (int i = word_count - 1; i >= 0; --i)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) {
      h ^= static_cast<std::size_t>(w);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  static void check_index(int v) {
    if (v < 0 || v >= max_vertices)
      throw std::out_of_range("vertex index exceeds FLATBAND_MAX_VERTICES");
  }

  std::array<std::uint64_t, word_count> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace flatband
