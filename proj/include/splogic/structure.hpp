#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splogic/errors.hpp"
#include "splogic/relation.hpp"
#include "splogic/vocabulary.hpp"

namespace splogic {

/// A finite relational structure: a universe {0, ..., n-1} together with one
/// valuation covering first-order variables and predicate symbols. Every
/// symbol of the governing vocabulary is always interpreted; symbols beyond
/// the vocabulary may be added by functional update (quantifier semantics and
/// translations rely on that).
class Structure {
 public:
  Structure(Vocabulary vocab, int size) : size_(size), vocab_(std::move(vocab)) {
    if (size < 1) throw DomainError("universe size must be >= 1");
    for (const auto& s : vocab_.symbols()) {
      names_.push_back(s.name);
      rels_.emplace_back(size_, s.arity);
    }
  }

  int size() const { return size_; }
  const Vocabulary& vocab() const { return vocab_; }
  const std::map<std::string, int>& fo_val() const { return fo_; }

  std::optional<int> lookup_var(const std::string& x) const {
    auto it = fo_.find(x);
    if (it == fo_.end()) return std::nullopt;
    return it->second;
  }

  /// Interpreted predicate names: vocabulary order, then later extensions.
  const std::vector<std::string>& pred_names() const { return names_; }

  bool has_pred(const std::string& p) const { return index_of(p) >= 0; }

  const Relation& pred(const std::string& p) const {
    int i = index_of(p);
    if (i < 0) throw NameError("structure does not interpret predicate " + p);
    return rels_[static_cast<std::size_t>(i)];
  }

  int pred_arity(const std::string& p) const { return pred(p).arity(); }

  Structure with_var(const std::string& x, int v) const {
    if (v < 0 || v >= size_)
      throw DomainError("element " + std::to_string(v) + " outside universe of size " +
                        std::to_string(size_));
    Structure out = *this;
    out.fo_[x] = v;
    return out;
  }

  Structure with_pred(const std::string& p, Relation r) const {
    if (r.domain() != size_)
      throw DomainError("relation domain does not match structure size");
    Structure out = *this;
    int i = out.index_of(p);
    if (i >= 0) {
      if (r.arity() != out.rels_[static_cast<std::size_t>(i)].arity())
        throw ArityError("relation arity does not match interpretation of " + p);
      out.rels_[static_cast<std::size_t>(i)] = std::move(r);
    } else {
      if (!is_predicate_name(p)) throw NameError("invalid predicate name " + p);
      out.names_.push_back(p);
      out.rels_.push_back(std::move(r));
    }
    return out;
  }

  friend bool operator==(const Structure& a, const Structure& b) {
    if (a.size_ != b.size_ || a.fo_ != b.fo_ || a.names_.size() != b.names_.size())
      return false;
    for (const auto& p : a.names_) {
      int j = b.index_of(p);
      if (j < 0 || !(a.pred(p) == b.rels_[static_cast<std::size_t>(j)])) return false;
    }
    return true;
  }
  friend bool operator!=(const Structure& a, const Structure& b) { return !(a == b); }

 private:
  friend class SplitEnumerator;
  friend class StructureEnumerator;

  int index_of(const std::string& p) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == p) return static_cast<int>(i);
    return -1;
  }

  int size_;
  Vocabulary vocab_;
  std::map<std::string, int> fo_;
  std::vector<std::string> names_;
  std::vector<Relation> rels_;
};

inline Structure update_var(const Structure& e, const std::string& x, int v) {
  return e.with_var(x, v);
}

inline Structure update_pred(const Structure& e, const std::string& p, Relation r) {
  return e.with_pred(p, std::move(r));
}

/// One way of splitting a structure: each named relation is partitioned
/// between the two components, everything else (including the first-order
/// valuation) is shared.
struct SplitPair {
  Structure left;
  Structure right;
};

/// Deterministic stream of all splits of `e` along the relations in `sigma`.
/// For each relation, member tuples are taken in lexicographic order and
/// subsets run through a binary counter; relations advance odometer-style
/// with the last one fastest. Yields exactly prod_{P in sigma} 2^|e(P)| pairs.
class SplitEnumerator {
 public:
  SplitEnumerator(const Structure& e, const PredicateSet& sigma) : base_(e) {
    for (const auto& p : sigma.members())
      if (!e.has_pred(p))
        throw NameError("split set names uninterpreted predicate " + p);
    for (const auto& name : e.pred_names()) {
      if (!sigma.contains(name)) continue;
      Slot s;
      s.pred_index = e.index_of(name);
      s.members = e.rels_[static_cast<std::size_t>(s.pred_index)].member_indices();
      s.counter = 0;
      slots_.push_back(std::move(s));
    }
  }

  /// Total number of pairs the stream yields.
  std::uint64_t total() const {
    std::uint64_t t = 1;
    for (const auto& s : slots_) {
      if (s.members.size() >= 63) throw BudgetError("split stream too large to count");
      t *= std::uint64_t{1} << s.members.size();
    }
    return t;
  }

  std::optional<SplitPair> next() {
    if (done_) return std::nullopt;
    SplitPair out{base_, base_};
    for (const auto& s : slots_) {
      const Relation& parent = base_.rels_[static_cast<std::size_t>(s.pred_index)];
      Relation left(parent.domain(), parent.arity());
      for (std::size_t j = 0; j < s.members.size(); ++j)
        if ((s.counter >> j) & 1) left.set(s.members[j]);
      Relation right = parent.minus(left);
      out.left.rels_[static_cast<std::size_t>(s.pred_index)] = std::move(left);
      out.right.rels_[static_cast<std::size_t>(s.pred_index)] = std::move(right);
    }
    advance();
    return out;
  }

 private:
  struct Slot {
    int pred_index = 0;
    std::vector<std::uint64_t> members;
    std::uint64_t counter = 0;
  };

  void advance() {
    for (std::size_t i = slots_.size(); i-- > 0;) {
      Slot& s = slots_[i];
      ++s.counter;
      if (s.counter < (std::uint64_t{1} << s.members.size())) return;
      s.counter = 0;
    }
    done_ = true;
  }

  Structure base_;
  std::vector<Slot> slots_;
  bool done_ = false;
};

/// All splits of `e` along `sigma`, materialized in stream order.
inline std::vector<SplitPair> enumerate_splits(const Structure& e, const PredicateSet& sigma) {
  SplitEnumerator en(e, sigma);
  std::vector<SplitPair> out;
  while (auto p = en.next()) out.push_back(std::move(*p));
  return out;
}

/// True iff the directed graph obtained by uniting all binary relations and
/// erasing their labels is acyclic with in-degree at most one everywhere.
/// Self-loops count as cycles. Unary and nullary relations are ignored.
inline bool is_forest(const Structure& e) {
  int n = e.size();
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (const auto& name : e.pred_names()) {
    const Relation& r = e.pred(name);
    if (r.arity() > 2)
      throw ArityError("forest check requires arity <= 2, predicate " + name +
                       " has arity " + std::to_string(r.arity()));
    if (r.arity() != 2) continue;
    for (std::uint64_t idx = 0; idx < r.capacity(); ++idx) {
      if (!r.test(idx)) continue;
      int from = static_cast<int>(idx) / n;
      int to = static_cast<int>(idx) % n;
      if (parent[static_cast<std::size_t>(to)] == from) continue;  // same edge via another label
      if (++indegree[static_cast<std::size_t>(to)] > 1) return false;
      parent[static_cast<std::size_t>(to)] = from;
    }
  }
  // with in-degree <= 1 a cycle exists iff following parents loops
  for (int v = 0; v < n; ++v) {
    int steps = 0;
    int cur = v;
    while (cur != -1) {
      cur = parent[static_cast<std::size_t>(cur)];
      if (cur == v) return false;
      if (++steps > n) return false;
    }
  }
  return true;
}

}  // namespace splogic
