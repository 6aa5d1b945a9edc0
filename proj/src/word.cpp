#include "hspec/word.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace hspec {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::size_t base) : s_(s), base_(base) {}

  WordNode parse_all() {
    WordNode w = word();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  long long integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    skip();
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = digits;
      fail("expected integer");
    }
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, v);
    if (ec != std::errc()) {
      pos_ = digits;
      fail("integer out of range");
    }
    (void)ptr;
    return s_[start] == '-' ? -v : v;
  }

  int index() {
    skip();
    std::size_t at = pos_;
    long long v = integer(false);
    if (v < 1 || v > std::numeric_limits<int>::max()) {
      pos_ = at;
      fail("index must be positive");
    }
    return static_cast<int>(v);
  }

  WordNode word() {
    WordNode w;
    skip();
    w.offset = base_ + pos_;
    w.children.push_back(term());
    while (eat('*')) w.children.push_back(term());
    return w;
  }

  WordNode term() {
    WordNode a = atom();
    if (eat('^')) a.exponent = integer(true);
    return a;
  }

  WordNode atom() {
    skip();
    WordNode a;
    a.offset = base_ + pos_;
    if (pos_ >= s_.size()) fail("unexpected end of word");
    char ch = s_[pos_];
    switch (ch) {
      case '1':
        ++pos_;
        a.kind = WordNode::Kind::One;
        return a;
      case 'x':
        ++pos_;
        a.kind = WordNode::Kind::X;
        return a;
      case 'y':
        ++pos_;
        a.kind = WordNode::Kind::Y;
        return a;
      case 'c':
        ++pos_;
        a.kind = WordNode::Kind::C;
        a.i = index();
        return a;
      case 'z': {
        ++pos_;
        a.kind = WordNode::Kind::Z;
        expect('(');
        a.i = index();
        expect(',');
        a.j = index();
        expect(')');
        if (a.i == a.j) throw ParseError("z(m,n) needs m != n (z(m,m) is the identity)", a.offset);
        return a;
      }
      case '(': {
        std::size_t at = a.offset;
        ++pos_;
        a = word();
        a.offset = at;
        expect(')');
        return a;
      }
      case '[': {
        ++pos_;
        a.kind = WordNode::Kind::Bracket;
        a.children.push_back(word());
        while (eat(',')) a.children.push_back(word());
        if (a.children.size() < 2) fail("bracket needs at least two entries");
        expect(']');
        return a;
      }
      default:
        fail("unexpected '" + std::string(1, ch) + "'");
    }
  }
};

void print(const WordNode& w, std::string& out, bool nested) {
  switch (w.kind) {
    case WordNode::Kind::One: out += "1"; break;
    case WordNode::Kind::X: out += "x"; break;
    case WordNode::Kind::Y: out += "y"; break;
    case WordNode::Kind::C: out += "c" + std::to_string(w.i); break;
    case WordNode::Kind::Z: out += "z(" + std::to_string(w.i) + "," + std::to_string(w.j) + ")"; break;
    case WordNode::Kind::Product:
      if (nested) out += "(";
      for (std::size_t t = 0; t < w.children.size(); ++t) {
        if (t) out += "*";
        print(w.children[t], out, true);
      }
      if (nested) out += ")";
      break;
    case WordNode::Kind::Bracket:
      out += "[";
      for (std::size_t t = 0; t < w.children.size(); ++t) {
        if (t) out += ",";
        print(w.children[t], out, false);
      }
      out += "]";
      break;
  }
  if (w.exponent != 1) out += "^" + std::to_string(w.exponent);
}

}  // namespace

WordNode parse_word(std::string_view text) { return Parser(text, 0).parse_all(); }

std::vector<WordNode> parse_word_list(std::string_view text) {
  std::vector<WordNode> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") == std::string_view::npos) {
      if (end < text.size() || !out.empty()) throw ParseError("empty word", start);
      throw ParseError("no generators", start);
    }
    out.push_back(Parser(piece, start).parse_all());
    start = end + 1;
  }
  return out;
}

std::string to_string(const WordNode& w) {
  std::string out;
  print(w, out, false);
  return out;
}

GElement evaluate(const GCtx& ctx, const WordNode& w) {
  GElement g;
  switch (w.kind) {
    case WordNode::Kind::One: g = ctx.identity(); break;
    case WordNode::Kind::X: g = ctx.x(); break;
    case WordNode::Kind::Y: g = ctx.y(); break;
    case WordNode::Kind::C: g = ctx.c(w.i); break;
    case WordNode::Kind::Z: g = ctx.from_z(ctx.zword({{BasisIndex::Com, w.i, w.j, 1}})); break;
    case WordNode::Kind::Product:
      g = ctx.identity();
      for (const auto& t : w.children) g = ctx.mul(g, evaluate(ctx, t));
      break;
    case WordNode::Kind::Bracket: {
      std::vector<GElement> args;
      for (const auto& t : w.children) args.push_back(evaluate(ctx, t));
      g = ctx.commutator(args);
      break;
    }
  }
  return w.exponent == 1 ? g : ctx.power(g, w.exponent);
}

}  // namespace hspec
