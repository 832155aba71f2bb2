#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace strel {

/// A closed interval [lo, hi]; a missing hi is unbounded.
struct Interval {
  double lo = 0.0;
  std::optional<double> hi;

  static Interval bounded(double lo, double hi) { return {lo, hi}; }
  static Interval from(double lo) { return {lo, std::nullopt}; }
  static Interval all() { return {0.0, std::nullopt}; }

  bool is_bounded() const noexcept { return hi.has_value(); }
  double upper() const noexcept;
  bool contains(double v) const noexcept { return v >= lo && v <= upper(); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class NodeKind {
  True,
  Atomic,
  Not,
  And,
  Or,
  Until,
  Since,
  Eventually,
  Globally,
  Reach,
  Escape,
  Somewhere,
  Everywhere,
  Surround,
};

std::string_view kind_name(NodeKind kind) noexcept;

enum class Comparison { none, greater, less, greater_equal, less_equal };

std::string_view comparison_token(Comparison c) noexcept;

/// An atomic proposition: a bare name, or `name cmp threshold`.
struct Atom {
  std::string name;
  Comparison comparison = Comparison::none;
  double threshold = 0.0;

  bool is_comparison() const noexcept { return comparison != Comparison::none; }

  friend bool operator==(const Atom&, const Atom&) = default;
};

class Formula;

struct FormulaNode;

/// Immutable formula tree with shared subterms. Equality is structural.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula top();
  static Formula bottom();  // !true
  static Formula atomic(std::string name);
  static Formula compare(std::string name, Comparison comparison, double threshold);
  static Formula atom(Atom atom);

  NodeKind kind() const noexcept;
  const Atom& atom() const;
  const Interval& interval() const;
  const std::string& distance() const;
  std::size_t arity() const noexcept;
  const Formula& child(std::size_t i) const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(arity() - 1); }

  /// Identity of the shared node; equal trees built separately differ.
  const FormulaNode* id() const noexcept { return node_.get(); }

  bool is_temporal() const noexcept;
  bool is_spatial() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  friend Formula make_node(NodeKind, Atom, Interval, std::string, std::vector<Formula>);

  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  NodeKind kind = NodeKind::True;
  Atom atom;
  Interval interval;
  std::string distance;
  std::vector<Formula> children;
};

Formula operator!(const Formula& f);
Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);
/// !a | b
Formula implies(const Formula& a, const Formula& b);

// Interval checks throw SemanticError: bounds must be finite and nonnegative
// with lo <= hi; spatial upper bounds may be unbounded.
Formula until(Interval i, const Formula& a, const Formula& b);
Formula since(Interval i, const Formula& a, const Formula& b);
Formula eventually(Interval i, const Formula& f);
Formula globally(Interval i, const Formula& f);
Formula eventually(const Formula& f);
Formula globally(const Formula& f);
Formula reach(Interval i, std::string distance, const Formula& a, const Formula& b);
Formula escape(Interval i, std::string distance, const Formula& f);
Formula somewhere(Interval i, std::string distance, const Formula& f);
Formula everywhere(Interval i, std::string distance, const Formula& f);
/// Requires i = [0, d] with finite d.
Formula surround(Interval i, std::string distance, const Formula& a, const Formula& b);

/// Parses the concrete syntax; throws ParseError with position and the set of
/// expected tokens.
Formula parse(std::string_view text);

/// Concrete syntax that parses back to an equal tree (for every tree the
/// parser can produce).
std::string to_string(const Formula& f);

/// Rewrites or, eventually, globally, somewhere, everywhere and surround into
/// true/atomic/not/and/until/since/reach/escape.
Formula desugar(const Formula& f);

/// Whether only core nodes occur in `f`.
bool is_core(const Formula& f);

std::set<std::string> atom_names(const Formula& f);
std::set<std::string> distance_names(const Formula& f);
std::size_t depth(const Formula& f);

}  // namespace strel
