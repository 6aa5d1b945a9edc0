#pragma once

// Group words over x, y, c<i> and z(<m>,<n>).
//
//   word := term {"*" term}
//   term := atom ["^" int]
//   atom := "1" | "x" | "y" | "c" int | "z" "(" int "," int ")" | "(" word ")" | "[" word {"," word} "]"
//
// Brackets are left-normed: [a,b,c] = [[a,b],c].

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hspec/gsymb.hpp"

namespace hspec {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct WordNode {
  enum class Kind { One, X, Y, C, Z, Product, Bracket };
  Kind kind = Kind::Product;
  int i = 0;  // c index, or m for z
  int j = 0;  // n for z
  long long exponent = 1;
  std::vector<WordNode> children;  // terms of a product, arguments of a bracket
  std::size_t offset = 0;          // byte offset of the atom

  /// Structural equality; offsets are ignored.
  friend bool operator==(const WordNode& a, const WordNode& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j && a.exponent == b.exponent && a.children == b.children;
  }
};

/// Returns a Product node. Throws ParseError.
WordNode parse_word(std::string_view text);
/// Splits on ';' and parses each piece; offsets refer to the whole text.
std::vector<WordNode> parse_word_list(std::string_view text);

std::string to_string(const WordNode& w);

GElement evaluate(const GCtx& ctx, const WordNode& w);

}  // namespace hspec
