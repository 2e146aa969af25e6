#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "splogic/errors.hpp"

namespace splogic {

namespace detail {
// Largest tuple space we are willing to materialize as a bitmap.
inline constexpr std::uint64_t kMaxTupleSpace = std::uint64_t{1} << 24;

inline std::uint64_t checked_tuple_space(int domain, int arity) {
  if (domain < 1) throw DomainError("universe size must be >= 1");
  if (arity < 0) throw ArityError("negative arity");
  std::uint64_t space = 1;
  for (int i = 0; i < arity; ++i) {
    space *= static_cast<std::uint64_t>(domain);
    if (space > kMaxTupleSpace)
      throw DomainError("relation tuple space exceeds supported bound");
  }
  return space;
}
}  // namespace detail

/// A k-ary relation over the universe {0, ..., n-1}, stored as a bitmap over
/// the row-major tuple index. Index order coincides with lexicographic tuple
/// order, which makes every enumeration built on top of it deterministic.
class Relation {
 public:
  Relation(int domain, int arity)
      : domain_(domain),
        arity_(arity),
        capacity_(detail::checked_tuple_space(domain, arity)),
        words_((capacity_ + 63) / 64, 0) {}

  static Relation empty(int domain, int arity) { return Relation(domain, arity); }

  static Relation full(int domain, int arity) {
    Relation r(domain, arity);
    for (std::uint64_t i = 0; i < r.capacity_; ++i) r.set(i);
    return r;
  }

  int domain() const { return domain_; }
  int arity() const { return arity_; }
  std::uint64_t capacity() const { return capacity_; }

  static std::uint64_t encode(std::span<const int> tuple, int domain) {
    std::uint64_t idx = 0;
    for (int c : tuple) {
      if (c < 0 || c >= domain) throw DomainError("tuple component out of range");
      idx = idx * static_cast<std::uint64_t>(domain) + static_cast<std::uint64_t>(c);
    }
    return idx;
  }

  static std::vector<int> decode(std::uint64_t idx, int domain, int arity) {
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    for (int i = arity - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % domain);
      idx /= static_cast<std::uint64_t>(domain);
    }
    return t;
  }

  bool test(std::uint64_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1;
  }
  void set(std::uint64_t idx, bool value = true) {
    if (value)
      words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    else
      words_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
  }

  bool contains(std::span<const int> tuple) const {
    check_tuple(tuple);
    return test(encode(tuple, domain_));
  }
  void insert(std::span<const int> tuple) {
    check_tuple(tuple);
    set(encode(tuple, domain_), true);
  }
  void erase(std::span<const int> tuple) {
    check_tuple(tuple);
    set(encode(tuple, domain_), false);
  }
  bool contains(std::initializer_list<int> tuple) const {
    return contains(std::span<const int>(tuple.begin(), tuple.size()));
  }
  void insert(std::initializer_list<int> tuple) {
    insert(std::span<const int>(tuple.begin(), tuple.size()));
  }
  void erase(std::initializer_list<int> tuple) {
    erase(std::span<const int>(tuple.begin(), tuple.size()));
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }
  bool is_full() const { return count() == capacity_; }

  Relation operator|(const Relation& o) const {
    Relation r = shaped_like(o);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  Relation operator&(const Relation& o) const {
    Relation r = shaped_like(o);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  /// Tuples in this relation but not in `o`.
  Relation minus(const Relation& o) const {
    Relation r = shaped_like(o);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }
  Relation complement() const {
    Relation r(domain_, arity_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.mask_tail();
    return r;
  }
  bool disjoint_with(const Relation& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return false;
    return true;
  }
  bool subset_of(const Relation& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.domain_ == b.domain_ && a.arity_ == b.arity_ && a.words_ == b.words_;
  }

  /// Sorted tuple indices of the members.
  std::vector<std::uint64_t> member_indices() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < capacity_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  /// Members decoded as tuples, in lexicographic order.
  std::vector<std::vector<int>> tuples() const {
    std::vector<std::vector<int>> out;
    for (std::uint64_t i = 0; i < capacity_; ++i)
      if (test(i)) out.push_back(decode(i, domain_, arity_));
    return out;
  }

  /// Treats the bitmap as a binary counter and adds one. Returns false on
  /// wrap-around back to the empty relation.
  bool increment() {
    for (std::uint64_t i = 0; i < capacity_; ++i) {
      if (!test(i)) {
        set(i, true);
        return true;
      }
      set(i, false);
    }
    return false;
  }

 private:
  Relation shaped_like(const Relation& o) const {
    if (domain_ != o.domain_ || arity_ != o.arity_)
      throw ArityError("relation shape mismatch");
    return Relation(domain_, arity_);
  }
  void check_tuple(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != arity_)
      throw ArityError("tuple length does not match relation arity");
  }
  void mask_tail() {
    std::uint64_t tail = capacity_ & 63;
    if (tail != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  int domain_;
  int arity_;
  std::uint64_t capacity_;
  std::vector<std::uint64_t> words_;
};

/// The full relation U^k over a universe of the given size.
inline Relation full_relation(int size, int arity) {
  return Relation::full(size, arity);
}

}  // namespace splogic
