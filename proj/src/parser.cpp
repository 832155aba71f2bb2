#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "strel/error.hpp"
#include "strel/logic.hpp"

namespace strel {

namespace {

enum class Tok {
  ident,
  number,
  bang,
  amp,
  bar,
  implies,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  gt,
  lt,
  ge,
  le,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double value = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto fail = [&](const std::string& msg) {
    throw ParseError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col, {});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    auto peek = [&](std::size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };
    if (ident_start(c)) {
      while (i < text.size() && (ident_start(text[i]) || digit(text[i]))) ++i;
      t.kind = Tok::ident;
    } else if (digit(c) || (c == '.' && digit(peek(1))) ||
               (c == '-' && (digit(peek(1)) || (peek(1) == '.' && digit(peek(2))))) ||
               (c == '+' && (digit(peek(1)) || (peek(1) == '.' && digit(peek(2)))))) {
      if (c == '-' || c == '+') ++i;
      while (i < text.size() && digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && digit(text[j])) {
          i = j;
          while (i < text.size() && digit(text[i])) ++i;
        }
      }
      t.kind = Tok::number;
      std::string_view num = text.substr(start, i - start);
      if (!num.empty() && num.front() == '+') num.remove_prefix(1);
      auto res = std::from_chars(num.data(), num.data() + num.size(), t.value);
      if (res.ec != std::errc() || res.ptr != num.data() + num.size() || !std::isfinite(t.value))
        fail("malformed number '" + std::string(text.substr(start, i - start)) + "'");
    } else {
      char n = peek(1);
      std::size_t len = 1;
      switch (c) {
        case '!': t.kind = Tok::bang; break;
        case '&': t.kind = Tok::amp; break;
        case '|': t.kind = Tok::bar; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case '[': t.kind = Tok::lbracket; break;
        case ']': t.kind = Tok::rbracket; break;
        case ',': t.kind = Tok::comma; break;
        case '>':
          t.kind = n == '=' ? Tok::ge : Tok::gt;
          len = n == '=' ? 2 : 1;
          break;
        case '<':
          t.kind = n == '=' ? Tok::le : Tok::lt;
          len = n == '=' ? 2 : 1;
          break;
        case '=':
        case '-':
          if (n != '>') fail(std::string("unexpected character '") + c + "'");
          t.kind = Tok::implies;
          len = 2;
          break;
        default: fail(std::string("unexpected character '") + c + "'");
      }
      i += len;
    }
    t.text = std::string(text.substr(start, i - start));
    col += i - start;
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "F" || s == "G" || s == "reach" || s == "escape" || s == "somewhere" ||
         s == "everywhere" || s == "surround" || s == "inf" || s == "true" || s == "false";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::end) fail({"'&'", "'|'", "'=>'", "temporal or spatial operator", "end of input"});
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_ident(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::ident && peek(k).text == s;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const { fail_at(peek(), std::move(expected)); }

  [[noreturn]] void fail_at(const Token& t, std::vector<std::string> expected) const {
    std::string msg = std::to_string(t.line) + ":" + std::to_string(t.column) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + describe(t);
    throw ParseError(msg, t.line, t.column, std::move(expected));
  }

  [[noreturn]] void fail_message(const Token& t, const std::string& what) const {
    throw ParseError(std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + what, t.line,
                     t.column, {});
  }

  void expect(Tok kind, const char* name) {
    if (peek().kind != kind) fail({name});
    advance();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::implies) {
      advance();
      Formula rhs = implication();
      return implies(lhs, rhs);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::bar) {
      advance();
      f = f || conjunction();
    }
    return f;
  }

  Formula conjunction() {
    Formula f = binary();
    while (peek().kind == Tok::amp) {
      advance();
      f = f && binary();
    }
    return f;
  }

  Formula binary() {
    Formula lhs = unary();
    if ((at_ident("U") || at_ident("S")) && peek(1).kind == Tok::lbracket) {
      bool is_until = peek().text == "U";
      advance();
      Interval i = interval(true);
      Formula rhs = unary();
      return is_until ? until(i, lhs, rhs) : since(i, lhs, rhs);
    }
    if (at_ident("reach")) {
      advance();
      std::string d = distance_arg();
      Interval i = peek().kind == Tok::lbracket ? interval(false) : Interval::all();
      Formula rhs = unary();
      return reach(i, d, lhs, rhs);
    }
    if (at_ident("surround")) {
      advance();
      std::string d = distance_arg();
      const Token& at = peek();
      Interval i = interval(false);
      if (i.lo != 0 || !i.hi) fail_message(at, "surround needs an interval [0,d] with finite d");
      Formula rhs = unary();
      return surround(i, d, lhs, rhs);
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::bang:
        advance();
        return !unary();
      case Tok::lparen: {
        advance();
        Formula f = implication();
        expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::ident: break;
      default: fail({"'!'", "'('", "'F'", "'G'", "spatial operator", "atom"});
    }
    if (t.text == "true") {
      advance();
      return Formula::top();
    }
    if (t.text == "false") {
      advance();
      return Formula::bottom();
    }
    if (t.text == "F" || t.text == "G") {
      bool is_f = t.text == "F";
      advance();
      Interval i = peek().kind == Tok::lbracket ? interval(true) : Interval::all();
      Formula f = unary();
      return is_f ? eventually(i, f) : globally(i, f);
    }
    if (t.text == "escape" || t.text == "somewhere" || t.text == "everywhere") {
      std::string op = t.text;
      advance();
      std::string d = distance_arg();
      Interval i = peek().kind == Tok::lbracket ? interval(false) : Interval::all();
      Formula f = unary();
      if (op == "escape") return escape(i, d, f);
      if (op == "somewhere") return somewhere(i, d, f);
      return everywhere(i, d, f);
    }
    if (is_keyword(t.text)) fail({"'!'", "'('", "'F'", "'G'", "spatial operator", "atom"});
    return atom();
  }

  Formula atom() {
    std::string name = advance().text;
    Comparison c = Comparison::none;
    switch (peek().kind) {
      case Tok::gt: c = Comparison::greater; break;
      case Tok::lt: c = Comparison::less; break;
      case Tok::ge: c = Comparison::greater_equal; break;
      case Tok::le: c = Comparison::less_equal; break;
      default: return Formula::atomic(name);
    }
    advance();
    if (peek().kind != Tok::number) fail({"number"});
    double v = advance().value;
    return Formula::compare(name, c, v);
  }

  std::string distance_arg() {
    expect(Tok::lparen, "'('");
    const Token& t = peek();
    if (t.kind != Tok::ident || is_keyword(t.text)) fail({"distance function name"});
    std::string name = advance().text;
    expect(Tok::rparen, "')'");
    return name;
  }

  double bound(const Token& t) {
    if (t.kind != Tok::number) fail({"number"});
    if (t.value < 0) fail_message(t, "interval bounds must be nonnegative");
    return advance().value;
  }

  Interval interval(bool temporal) {
    const Token& open = peek();
    expect(Tok::lbracket, "'['");
    double lo = bound(peek());
    expect(Tok::comma, "','");
    std::optional<double> hi;
    if (at_ident("inf")) {
      if (temporal)
        fail_message(peek(), "temporal intervals must be bounded; omit the interval of F/G to "
                             "range to the end of the trace");
      advance();
    } else {
      if (peek().kind != Tok::number) fail(temporal ? std::vector<std::string>{"number"}
                                                    : std::vector<std::string>{"number", "'inf'"});
      hi = bound(peek());
    }
    expect(Tok::rbracket, "']'");
    if (hi && *hi < lo) fail_message(open, "interval upper bound is below its lower bound");
    return Interval{lo, hi};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace strel
