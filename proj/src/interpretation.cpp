#include "strel/interpretation.hpp"

#include <charconv>
#include <limits>

#include "strel/error.hpp"

namespace strel {

AtomValue AtomValue::boolean(bool b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {b, b ? inf : -inf};
}

AtomicInterpretation::AtomicInterpretation(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

std::size_t AtomicInterpretation::column(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return static_cast<std::size_t>(-1);
}

void AtomicInterpretation::add_label(const std::string& name, const std::string& variable,
                                     double code) {
  std::size_t c = column(variable);
  if (c == static_cast<std::size_t>(-1))
    throw SemanticError("label '" + name + "' refers to unknown variable '" + variable + "'");
  labels_.insert_or_assign(name, Label{c, code});
}

void AtomicInterpretation::add_predicate(
    const std::string& name, std::function<double(std::span<const double>, Location)> g) {
  predicates_.insert_or_assign(name, std::move(g));
}

namespace {

bool parse_location_atom(const std::string& name, Location& out) {
  if (name.size() <= 3 || name.compare(0, 3, "at_") != 0) return false;
  const char* first = name.data() + 3;
  const char* last = name.data() + name.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

AtomFunction AtomicInterpretation::resolve(const Atom& atom) const {
  if (!atom.is_comparison()) {
    if (auto it = predicates_.find(atom.name); it != predicates_.end()) {
      auto g = it->second;
      return [g](std::span<const double> x, Location l) {
        double v = g(x, l);
        return AtomValue{v >= 0, v};
      };
    }
    if (auto it = labels_.find(atom.name); it != labels_.end()) {
      Label lab = it->second;
      return [lab](std::span<const double> x, Location) {
        return AtomValue::boolean(x[lab.column] == lab.code);
      };
    }
    if (column(atom.name) == static_cast<std::size_t>(-1)) {
      Location target = 0;
      if (parse_location_atom(atom.name, target))
        return [target](std::span<const double>, Location l) { return AtomValue::boolean(l == target); };
      throw SemanticError("atom '" + atom.name + "' matches no trace variable, label or predicate");
    }
    std::size_t c = column(atom.name);
    return [c](std::span<const double> x, Location) { return AtomValue::boolean(x[c] != 0.0); };
  }
  std::size_t c = column(atom.name);
  if (c == static_cast<std::size_t>(-1))
    throw SemanticError("comparison atom '" + atom.name + "' matches no trace variable");
  const double k = atom.threshold;
  switch (atom.comparison) {
    case Comparison::greater:
      return [c, k](std::span<const double> x, Location) { return AtomValue{x[c] > k, x[c] - k}; };
    case Comparison::greater_equal:
      return [c, k](std::span<const double> x, Location) { return AtomValue{x[c] >= k, x[c] - k}; };
    case Comparison::less:
      return [c, k](std::span<const double> x, Location) { return AtomValue{x[c] < k, k - x[c]}; };
    case Comparison::less_equal:
      return [c, k](std::span<const double> x, Location) { return AtomValue{x[c] <= k, k - x[c]}; };
    case Comparison::none: break;
  }
  throw SemanticError("invalid comparison atom");
}

void add_epidemic_labels(AtomicInterpretation& interpretation, const std::string& variable) {
  interpretation.add_label("S", variable, 0);
  interpretation.add_label("E", variable, 1);
  interpretation.add_label("I", variable, 2);
  interpretation.add_label("R", variable, 3);
}

}  // namespace strel
