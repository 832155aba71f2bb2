#include "strel/logic.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "strel/error.hpp"

namespace strel {

double Interval::upper() const noexcept {
  return hi ? *hi : std::numeric_limits<double>::infinity();
}

std::string_view kind_name(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::True: return "true";
    case NodeKind::Atomic: return "atomic";
    case NodeKind::Not: return "not";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    case NodeKind::Until: return "until";
    case NodeKind::Since: return "since";
    case NodeKind::Eventually: return "eventually";
    case NodeKind::Globally: return "globally";
    case NodeKind::Reach: return "reach";
    case NodeKind::Escape: return "escape";
    case NodeKind::Somewhere: return "somewhere";
    case NodeKind::Everywhere: return "everywhere";
    case NodeKind::Surround: return "surround";
  }
  return "?";
}

std::string_view comparison_token(Comparison c) noexcept {
  switch (c) {
    case Comparison::none: return "";
    case Comparison::greater: return ">";
    case Comparison::less: return "<";
    case Comparison::greater_equal: return ">=";
    case Comparison::less_equal: return "<=";
  }
  return "";
}

namespace {

constexpr std::array<std::string_view, 10> reserved_words{
    "F", "G", "reach", "escape", "somewhere", "everywhere", "surround", "inf", "true", "false"};

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

bool is_reserved(std::string_view s) {
  return std::find(reserved_words.begin(), reserved_words.end(), s) != reserved_words.end();
}

void check_name(const std::string& name, const char* what) {
  if (!is_identifier(name) || is_reserved(name))
    throw SemanticError(std::string("invalid ") + what + " name '" + name + "'");
}

void check_interval(const Interval& i) {
  if (!std::isfinite(i.lo) || i.lo < 0)
    throw SemanticError("interval lower bound must be finite and nonnegative");
  if (i.hi) {
    if (!std::isfinite(*i.hi)) throw SemanticError("interval upper bound must be finite or absent");
    if (*i.hi < i.lo) throw SemanticError("interval upper bound is below its lower bound");
  }
}

}  // namespace

Formula make_node(NodeKind kind, Atom atom, Interval interval, std::string distance,
                  std::vector<Formula> children) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->atom = std::move(atom);
  node->interval = interval;
  node->distance = std::move(distance);
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula t = make_node(NodeKind::True, {}, {}, {}, {});
  return t;
}

Formula Formula::bottom() { return !top(); }

Formula Formula::atomic(std::string name) { return atom(Atom{std::move(name)}); }

Formula Formula::compare(std::string name, Comparison comparison, double threshold) {
  if (comparison == Comparison::none) throw SemanticError("comparison atom needs an operator");
  return atom(Atom{std::move(name), comparison, threshold});
}

Formula Formula::atom(Atom a) {
  check_name(a.name, "atom");
  if (a.is_comparison() && !std::isfinite(a.threshold))
    throw SemanticError("comparison threshold must be finite");
  if (!a.is_comparison()) a.threshold = 0.0;
  return make_node(NodeKind::Atomic, std::move(a), {}, {}, {});
}

NodeKind Formula::kind() const noexcept { return node_->kind; }
const Atom& Formula::atom() const { return node_->atom; }
const Interval& Formula::interval() const { return node_->interval; }
const std::string& Formula::distance() const { return node_->distance; }
std::size_t Formula::arity() const noexcept { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }

bool Formula::is_temporal() const noexcept {
  switch (kind()) {
    case NodeKind::Until:
    case NodeKind::Since:
    case NodeKind::Eventually:
    case NodeKind::Globally: return true;
    default: return false;
  }
}

bool Formula::is_spatial() const noexcept {
  switch (kind()) {
    case NodeKind::Reach:
    case NodeKind::Escape:
    case NodeKind::Somewhere:
    case NodeKind::Everywhere:
    case NodeKind::Surround: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  return x.kind == y.kind && x.atom == y.atom && x.interval == y.interval &&
         x.distance == y.distance && x.children == y.children;
}

Formula operator!(const Formula& f) { return make_node(NodeKind::Not, {}, {}, {}, {f}); }
Formula operator&&(const Formula& a, const Formula& b) {
  return make_node(NodeKind::And, {}, {}, {}, {a, b});
}
Formula operator||(const Formula& a, const Formula& b) {
  return make_node(NodeKind::Or, {}, {}, {}, {a, b});
}
Formula implies(const Formula& a, const Formula& b) { return !a || b; }

Formula until(Interval i, const Formula& a, const Formula& b) {
  check_interval(i);
  return make_node(NodeKind::Until, {}, i, {}, {a, b});
}
Formula since(Interval i, const Formula& a, const Formula& b) {
  check_interval(i);
  return make_node(NodeKind::Since, {}, i, {}, {a, b});
}
Formula eventually(Interval i, const Formula& f) {
  check_interval(i);
  return make_node(NodeKind::Eventually, {}, i, {}, {f});
}
Formula globally(Interval i, const Formula& f) {
  check_interval(i);
  return make_node(NodeKind::Globally, {}, i, {}, {f});
}
Formula eventually(const Formula& f) { return eventually(Interval::all(), f); }
Formula globally(const Formula& f) { return globally(Interval::all(), f); }

Formula reach(Interval i, std::string distance, const Formula& a, const Formula& b) {
  check_interval(i);
  check_name(distance, "distance");
  return make_node(NodeKind::Reach, {}, i, std::move(distance), {a, b});
}
Formula escape(Interval i, std::string distance, const Formula& f) {
  check_interval(i);
  check_name(distance, "distance");
  return make_node(NodeKind::Escape, {}, i, std::move(distance), {f});
}
Formula somewhere(Interval i, std::string distance, const Formula& f) {
  check_interval(i);
  check_name(distance, "distance");
  return make_node(NodeKind::Somewhere, {}, i, std::move(distance), {f});
}
Formula everywhere(Interval i, std::string distance, const Formula& f) {
  check_interval(i);
  check_name(distance, "distance");
  return make_node(NodeKind::Everywhere, {}, i, std::move(distance), {f});
}
Formula surround(Interval i, std::string distance, const Formula& a, const Formula& b) {
  check_interval(i);
  check_name(distance, "distance");
  if (i.lo != 0 || !i.hi) throw SemanticError("surround needs an interval [0, d] with finite d");
  return make_node(NodeKind::Surround, {}, i, std::move(distance), {a, b});
}

// Printing.

namespace {

std::string number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string interval_text(const Interval& i) {
  return "[" + number(i.lo) + "," + (i.hi ? number(*i.hi) : std::string("inf")) + "]";
}

// Precedence levels of the grammar: or < and < binary temporal/spatial < prefix.
enum Level { kOr = 1, kAnd = 2, kBinary = 3, kPrefix = 4 };

int level(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Or: return kOr;
    case NodeKind::And: return kAnd;
    case NodeKind::Until:
    case NodeKind::Since:
    case NodeKind::Reach:
    case NodeKind::Surround: return kBinary;
    default: return kPrefix;
  }
}

void print(const Formula& f, int required, std::string& out);

void print_prefix(std::string_view op, const Formula& f, std::string& out) {
  out += op;
  out += ' ';
  print(f.child(0), kPrefix, out);
}

void print(const Formula& f, int required, std::string& out) {
  const bool parens = level(f) < required;
  if (parens) out += '(';
  switch (f.kind()) {
    case NodeKind::True: out += "true"; break;
    case NodeKind::Atomic: {
      const Atom& a = f.atom();
      out += a.name;
      if (a.is_comparison()) {
        out += ' ';
        out += comparison_token(a.comparison);
        out += ' ';
        out += number(a.threshold);
      }
      break;
    }
    case NodeKind::Not:
      out += '!';
      print(f.child(0), kPrefix, out);
      break;
    case NodeKind::And:
      print(f.child(0), kAnd, out);
      out += " & ";
      print(f.child(1), kBinary, out);
      break;
    case NodeKind::Or:
      print(f.child(0), kOr, out);
      out += " | ";
      print(f.child(1), kAnd, out);
      break;
    case NodeKind::Until:
    case NodeKind::Since:
      print(f.child(0), kPrefix, out);
      out += f.kind() == NodeKind::Until ? " U" : " S";
      out += interval_text(f.interval());
      out += ' ';
      print(f.child(1), kPrefix, out);
      break;
    case NodeKind::Reach:
    case NodeKind::Surround:
      print(f.child(0), kPrefix, out);
      out += f.kind() == NodeKind::Reach ? " reach(" : " surround(";
      out += f.distance();
      out += ')';
      out += interval_text(f.interval());
      out += ' ';
      print(f.child(1), kPrefix, out);
      break;
    case NodeKind::Eventually:
    case NodeKind::Globally: {
      std::string op = f.kind() == NodeKind::Eventually ? "F" : "G";
      if (f.interval() != Interval::all()) op += interval_text(f.interval());
      print_prefix(op, f, out);
      break;
    }
    case NodeKind::Escape:
    case NodeKind::Somewhere:
    case NodeKind::Everywhere: {
      std::string op(kind_name(f.kind()));
      op += "(" + f.distance() + ")" + interval_text(f.interval());
      print_prefix(op, f, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kOr, out);
  return out;
}

// Desugaring.

namespace {

class Desugarer {
 public:
  Formula run(const Formula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    Formula out = rewrite(f);
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  Formula rewrite(const Formula& f) {
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::Atomic: return f;
      case NodeKind::Not: return !run(f.child(0));
      case NodeKind::And: return run(f.child(0)) && run(f.child(1));
      case NodeKind::Or: return !(!run(f.child(0)) && !run(f.child(1)));
      case NodeKind::Until: return until(f.interval(), run(f.child(0)), run(f.child(1)));
      case NodeKind::Since: return since(f.interval(), run(f.child(0)), run(f.child(1)));
      case NodeKind::Eventually: return until(f.interval(), Formula::top(), run(f.child(0)));
      case NodeKind::Globally:
        return !until(f.interval(), Formula::top(), !run(f.child(0)));
      case NodeKind::Reach:
        return reach(f.interval(), f.distance(), run(f.child(0)), run(f.child(1)));
      case NodeKind::Escape: return escape(f.interval(), f.distance(), run(f.child(0)));
      case NodeKind::Somewhere:
        return reach(f.interval(), f.distance(), Formula::top(), run(f.child(0)));
      case NodeKind::Everywhere:
        return !reach(f.interval(), f.distance(), Formula::top(), !run(f.child(0)));
      case NodeKind::Surround: {
        Formula a = run(f.child(0));
        Formula b = run(f.child(1));
        Formula a_or_b = !(!a && !b);
        Formula leak = reach(f.interval(), f.distance(), a, !a_or_b);
        Formula out = escape(Interval::from(f.interval().upper()), f.distance(), a);
        return (a && !leak) && !out;
      }
    }
    return f;
  }

  std::unordered_map<const FormulaNode*, Formula> memo_;
};

template <class Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  for (std::size_t i = 0; i < f.arity(); ++i) walk(f.child(i), visit);
}

}  // namespace

Formula desugar(const Formula& f) { return Desugarer{}.run(f); }

bool is_core(const Formula& f) {
  bool core = true;
  walk(f, [&](const Formula& g) {
    switch (g.kind()) {
      case NodeKind::Or:
      case NodeKind::Eventually:
      case NodeKind::Globally:
      case NodeKind::Somewhere:
      case NodeKind::Everywhere:
      case NodeKind::Surround: core = false; break;
      default: break;
    }
  });
  return core;
}

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == NodeKind::Atomic) out.insert(g.atom().name);
  });
  return out;
}

std::set<std::string> distance_names(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.is_spatial()) out.insert(g.distance());
  });
  return out;
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, depth(f.child(i)));
  return d + 1;
}

}  // namespace strel
