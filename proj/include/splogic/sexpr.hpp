#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "splogic/errors.hpp"

namespace splogic {

/// A parsed s-expression: either an atom token or a list. Positions are
/// 1-based and refer to the original text; `;` starts a line comment.
struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;

  bool is_list() const { return !is_atom; }
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }
};

namespace detail {

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read_single() {
    SExpr e = read();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("trailing input after expression", line_, col_);
    return e;
  }

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_ws();
    }
    return out;
  }

 private:
  SExpr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    char c = text_[pos_];
    if (c == '(') {
      SExpr list;
      list.line = line_;
      list.column = col_;
      bump();
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        list.items.push_back(read());
        skip_ws();
      }
      if (pos_ >= text_.size()) throw ParseError("missing ')'", list.line, list.column);
      bump();  // consume ')'
      return list;
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    SExpr atom;
    atom.is_atom = true;
    atom.line = line_;
    atom.column = col_;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      atom.atom.push_back(text_[pos_]);
      bump();
    }
    return atom;
  }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c));
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
    if (v > 1000000000) return false;
  }
  out = static_cast<int>(v);
  return true;
}

}  // namespace detail

inline SExpr read_sexpr(std::string_view text) {
  return detail::SExprReader(text).read_single();
}

}  // namespace splogic
