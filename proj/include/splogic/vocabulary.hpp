#pragma once

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "splogic/errors.hpp"

namespace splogic {

inline bool is_predicate_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

inline bool is_variable_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

/// A relational symbol: an uppercase-led name with a fixed arity (>= 0).
struct PredicateSymbol {
  std::string name;
  int arity = 0;

  friend bool operator==(const PredicateSymbol& a, const PredicateSymbol& b) {
    return a.name == b.name && a.arity == b.arity;
  }
};

/// An ordered signature of predicate symbols. Declaration order is preserved
/// and is the canonical iteration order for every enumeration in the toolkit.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<PredicateSymbol> syms) {
    for (const auto& s : syms) declare(s.name, s.arity);
  }

  void declare(const std::string& name, int arity) {
    if (!is_predicate_name(name))
      throw NameError("invalid predicate name '" + name +
                      "' (must start with an uppercase letter)");
    if (arity < 0) throw ArityError("negative arity for predicate " + name);
    if (contains(name)) throw NameError("duplicate predicate " + name);
    symbols_.push_back({name, arity});
  }

  bool contains(const std::string& name) const {
    return find(name) != nullptr;
  }

  int arity(const std::string& name) const {
    if (const PredicateSymbol* s = find(name)) return s->arity;
    throw NameError("undeclared predicate " + name);
  }

  const std::vector<PredicateSymbol>& symbols() const { return symbols_; }
  bool empty() const { return symbols_.empty(); }
  std::size_t size() const { return symbols_.size(); }

  int max_arity() const {
    int m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(symbols_.size());
    for (const auto& s : symbols_) out.push_back(s.name);
    return out;
  }

  /// Names of all symbols of the given arity, in declaration order.
  std::vector<std::string> names_of_arity(int k) const {
    std::vector<std::string> out;
    for (const auto& s : symbols_)
      if (s.arity == k) out.push_back(s.name);
    return out;
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  const PredicateSymbol* find(const std::string& name) const {
    for (const auto& s : symbols_)
      if (s.name == name) return &s;
    return nullptr;
  }

  std::vector<PredicateSymbol> symbols_;
};

/// A set of predicate names, used to parameterize spatial conjunction.
class PredicateSet {
 public:
  PredicateSet() = default;
  PredicateSet(std::initializer_list<std::string> names)
      : members_(names) {}
  explicit PredicateSet(std::set<std::string> names)
      : members_(std::move(names)) {}

  void insert(const std::string& name) { members_.insert(name); }
  bool contains(const std::string& name) const {
    return members_.count(name) != 0;
  }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::set<std::string>& members() const { return members_; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const PredicateSet& a, const PredicateSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::set<std::string> members_;
};

}  // namespace splogic
