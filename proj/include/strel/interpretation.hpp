#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "strel/algebra.hpp"
#include "strel/logic.hpp"
#include "strel/space.hpp"

namespace strel {

/// Both readings of an atomic proposition at one sample: satisfaction, and
/// the signed margin g(x) used by the quantitative domain.
struct AtomValue {
  bool holds = false;
  double margin = 0.0;

  static AtomValue boolean(bool b);
};

constexpr bool atom_value(const BooleanDomain&, AtomValue v) noexcept { return v.holds; }
constexpr double atom_value(const MaxMinDomain&, AtomValue v) noexcept { return v.margin; }

/// A resolved atom, evaluated on one trace sample at one location.
using AtomFunction = std::function<AtomValue(std::span<const double> sample, Location location)>;

/// Maps atom names onto trace variables.
///
/// Resolution order for a bare name: custom predicates, labels, `at_<id>`,
/// then trace variables (true when nonzero). Comparison atoms `x cmp c`
/// need `x` to be a trace variable; their margin is x - c for > and >=, and
/// c - x for < and <=.
class AtomicInterpretation {
 public:
  AtomicInterpretation() = default;
  explicit AtomicInterpretation(std::vector<std::string> variables);

  const std::vector<std::string>& variables() const noexcept { return variables_; }

  /// `name` holds where `variable` equals `code`.
  void add_label(const std::string& name, const std::string& variable, double code);
  /// `name` holds where g >= 0; its margin is g.
  void add_predicate(const std::string& name,
                     std::function<double(std::span<const double>, Location)> g);

  /// Throws SemanticError when the atom does not resolve.
  AtomFunction resolve(const Atom& atom) const;

 private:
  std::size_t column(const std::string& name) const;

  struct Label {
    std::size_t column;
    double code;
  };

  std::vector<std::string> variables_;
  std::map<std::string, Label> labels_;
  std::map<std::string, std::function<double(std::span<const double>, Location)>> predicates_;
};

/// Labels S, E, I, R for the codes 0..3 of `variable`.
void add_epidemic_labels(AtomicInterpretation& interpretation, const std::string& variable = "state");

}  // namespace strel
