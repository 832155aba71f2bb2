#pragma once

// Verdict domains (idempotent semirings with a De Morgan negation) and
// distance domains (totally ordered monoids used to accumulate route
// lengths).

#include <algorithm>
#include <concepts>
#include <limits>
#include <string_view>

namespace strel {

/// A signal domain <D, choose, combine, negate, bottom, top>.
///
/// `choose` and `combine` must be associative, commutative and idempotent,
/// `combine` must distribute over `choose`, and `negate` must be an
/// involution swapping bottom/top and exchanging the two operations.
/// `is_total` declares that the order a <= b <=> choose(a, b) == b is a
/// total order; the reach monitor uses that to prune dominated labels.
template <class D>
concept SignalDomain = requires(const D& d, typename D::value_type a,
                                typename D::value_type b) {
  typename D::value_type;
  { d.bottom() } -> std::same_as<typename D::value_type>;
  { d.top() } -> std::same_as<typename D::value_type>;
  { d.choose(a, b) } -> std::same_as<typename D::value_type>;
  { d.combine(a, b) } -> std::same_as<typename D::value_type>;
  { d.negate(a) } -> std::same_as<typename D::value_type>;
  { D::is_total } -> std::convertible_to<bool>;
  { D::name } -> std::convertible_to<std::string_view>;
} && std::equality_comparable<typename D::value_type>;

template <SignalDomain D>
using value_t = typename D::value_type;

/// Qualitative verdicts: {false, true} with or/and/not.
struct BooleanDomain {
  using value_type = bool;
  static constexpr bool is_total = true;
  static constexpr std::string_view name = "boolean";

  constexpr bool bottom() const noexcept { return false; }
  constexpr bool top() const noexcept { return true; }
  constexpr bool choose(bool a, bool b) const noexcept { return a || b; }
  constexpr bool combine(bool a, bool b) const noexcept { return a && b; }
  constexpr bool negate(bool a) const noexcept { return !a; }
};

/// Quantitative verdicts: extended reals with max/min and arithmetic
/// negation. Infinities are IEEE infinities, never finite sentinels.
struct MaxMinDomain {
  using value_type = double;
  static constexpr bool is_total = true;
  static constexpr std::string_view name = "quantitative";

  constexpr double bottom() const noexcept {
    return -std::numeric_limits<double>::infinity();
  }
  constexpr double top() const noexcept {
    return std::numeric_limits<double>::infinity();
  }
  constexpr double choose(double a, double b) const noexcept { return std::max(a, b); }
  constexpr double combine(double a, double b) const noexcept { return std::min(a, b); }
  constexpr double negate(double a) const noexcept { return -a; }
};

constexpr BooleanDomain boolean_domain() noexcept { return {}; }
constexpr MaxMinDomain maxmin_domain() noexcept { return {}; }

/// The order induced by choose: a <= b iff choose(a, b) == b.
template <SignalDomain D>
constexpr bool precedes(const D& domain, value_t<D> a, value_t<D> b) {
  return domain.choose(a, b) == b;
}

/// Strict version of `precedes`.
template <SignalDomain D>
constexpr bool strictly_precedes(const D& domain, value_t<D> a, value_t<D> b) {
  return a != b && precedes(domain, a, b);
}

/// Route lengths live in a distance domain; values are carried as doubles so
/// that the hop count and the real-valued domain can appear in one formula.
using Distance = double;

/// A totally ordered monoid (B, zero, +) with maximum `infinity`.
///
/// Addition saturates at infinity and is monotone in both arguments, which
/// the shortest-distance and flooding algorithms rely on.
class DistanceDomain {
 public:
  enum class Kind { hop, real };

  static constexpr DistanceDomain hop() noexcept { return DistanceDomain(Kind::hop); }
  static constexpr DistanceDomain real() noexcept { return DistanceDomain(Kind::real); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr std::string_view name() const noexcept {
    return kind_ == Kind::hop ? "hop" : "real";
  }

  constexpr Distance zero() const noexcept { return 0.0; }
  constexpr Distance infinity() const noexcept {
    return std::numeric_limits<double>::infinity();
  }
  constexpr Distance add(Distance a, Distance b) const noexcept {
    if (a == infinity() || b == infinity()) return infinity();
    return a + b;
  }
  constexpr bool leq(Distance a, Distance b) const noexcept { return a <= b; }
  constexpr bool less(Distance a, Distance b) const noexcept { return a < b; }

  /// Whether `d` belongs to the carrier (naturals for hop, nonnegative
  /// reals for real, both extended with infinity).
  bool contains(Distance d) const noexcept;

  friend constexpr bool operator==(DistanceDomain, DistanceDomain) = default;

 private:
  constexpr explicit DistanceDomain(Kind kind) noexcept : kind_(kind) {}
  Kind kind_;
};

constexpr DistanceDomain hop_distance_domain() noexcept { return DistanceDomain::hop(); }
constexpr DistanceDomain real_distance_domain() noexcept { return DistanceDomain::real(); }

}  // namespace strel
