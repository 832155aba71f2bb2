#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "strel/error.hpp"

namespace strel {

/// A piecewise-constant signal over [start, end]: step i holds on
/// [t_i, t_{i+1}) and the last step holds on [t_n, end].
template <class V>
class TemporalSignal {
 public:
  using value_type = V;

  struct Step {
    double time = 0.0;
    V value{};

    friend bool operator==(const Step&, const Step&) = default;
  };

  TemporalSignal() = default;

  /// Throws SemanticError unless the steps are nonempty, finite and strictly
  /// increasing and `end_time` is not before the last step.
  TemporalSignal(std::vector<Step> steps, double end_time)
      : steps_(std::move(steps)), end_(end_time) {
    if (steps_.empty()) throw SemanticError("a temporal signal needs at least one step");
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (!std::isfinite(steps_[i].time)) throw SemanticError("signal step times must be finite");
      if (i > 0 && !(steps_[i - 1].time < steps_[i].time))
        throw SemanticError("signal step times must be strictly increasing");
    }
    if (!std::isfinite(end_) || end_ < steps_.back().time)
      throw SemanticError("signal end time precedes its last step");
  }

  static TemporalSignal constant(V value, double start, double end) {
    return TemporalSignal({{start, std::move(value)}}, end);
  }

  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  double start_time() const { return steps_.front().time; }
  double end_time() const noexcept { return end_; }

  bool in_domain(double t) const { return !steps_.empty() && t >= start_time() && t <= end_; }

  /// Index of the step in force at t.
  std::size_t segment_index(double t) const {
    if (!in_domain(t))
      throw SemanticError("time " + std::to_string(t) + " is outside the signal domain [" +
                          std::to_string(empty() ? 0.0 : start_time()) + ", " +
                          std::to_string(end_) + "]");
    auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                               [](double v, const Step& s) { return v < s.time; });
    return static_cast<std::size_t>(it - steps_.begin()) - 1;
  }

  V value_at(double t) const { return steps_[segment_index(t)].value; }

  std::vector<double> times() const {
    std::vector<double> out;
    out.reserve(steps_.size());
    for (const Step& s : steps_) out.push_back(s.time);
    return out;
  }

  friend bool operator==(const TemporalSignal&, const TemporalSignal&) = default;

 private:
  std::vector<Step> steps_;
  double end_ = 0.0;
};

/// Merges consecutive steps carrying equal values.
template <class V>
TemporalSignal<V> minimize(const TemporalSignal<V>& s) {
  std::vector<typename TemporalSignal<V>::Step> out;
  out.reserve(s.size());
  for (const auto& step : s.steps())
    if (out.empty() || !(out.back().value == step.value)) out.push_back(step);
  return TemporalSignal<V>(std::move(out), s.end_time());
}

/// Sorted, duplicate-free union of step times.
template <class V>
std::vector<double> time_step_union(std::span<const TemporalSignal<V>> signals) {
  std::vector<double> out;
  for (const auto& s : signals) {
    if (s.start_time() != signals.front().start_time() ||
        s.end_time() != signals.front().end_time())
      throw SemanticError("signals have different time domains");
    for (const auto& step : s.steps()) out.push_back(step.time);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The signal restricted to [from, to], which must be a nonempty subrange.
template <class V>
TemporalSignal<V> restrict_to(const TemporalSignal<V>& s, double from, double to) {
  if (!(from <= to) || from < s.start_time() || to > s.end_time())
    throw SemanticError("cannot restrict a signal to [" + std::to_string(from) + ", " +
                        std::to_string(to) + "]");
  if (from == s.start_time() && to == s.end_time()) return s;
  std::vector<typename TemporalSignal<V>::Step> out;
  out.push_back({from, s.value_at(from)});
  for (const auto& step : s.steps())
    if (step.time > from && step.time <= to) out.push_back(step);
  return TemporalSignal<V>(std::move(out), to);
}

/// Values of `s` resampled onto `grid` (sorted times inside the domain).
template <class V>
std::vector<V> sample(const TemporalSignal<V>& s, std::span<const double> grid) {
  std::vector<V> out;
  out.reserve(grid.size());
  std::size_t k = 0;
  const auto& steps = s.steps();
  for (double t : grid) {
    if (!s.in_domain(t)) throw SemanticError("sample time outside the signal domain");
    while (k + 1 < steps.size() && steps[k + 1].time <= t) ++k;
    out.push_back(steps[k].value);
  }
  return out;
}

template <class V, class Op>
auto pointwise_unary(Op op, const TemporalSignal<V>& s) {
  using R = decltype(op(std::declval<V>()));
  std::vector<typename TemporalSignal<R>::Step> out;
  out.reserve(s.size());
  for (const auto& step : s.steps()) out.push_back({step.time, op(step.value)});
  return minimize(TemporalSignal<R>(std::move(out), s.end_time()));
}

/// op applied at every time of the common domain. Domains that differ are
/// intersected; a disjoint pair is rejected.
template <class V, class W, class Op>
auto pointwise_binary(Op op, const TemporalSignal<V>& a, const TemporalSignal<W>& b) {
  using R = decltype(op(std::declval<V>(), std::declval<W>()));
  const double from = std::max(a.start_time(), b.start_time());
  const double to = std::min(a.end_time(), b.end_time());
  if (from > to) throw SemanticError("signals have disjoint time domains");
  std::vector<typename TemporalSignal<R>::Step> out;
  out.reserve(a.size() + b.size());
  const auto& sa = a.steps();
  const auto& sb = b.steps();
  std::size_t i = a.segment_index(from);
  std::size_t j = b.segment_index(from);
  double t = from;
  while (true) {
    out.push_back({t, op(sa[i].value, sb[j].value)});
    double na = i + 1 < sa.size() ? sa[i + 1].time : INFINITY;
    double nb = j + 1 < sb.size() ? sb[j + 1].time : INFINITY;
    double next = std::min(na, nb);
    if (!(next <= to)) break;
    if (na == next) ++i;
    if (nb == next) ++j;
    t = next;
  }
  return minimize(TemporalSignal<R>(std::move(out), to));
}

/// A value per location.
template <class V>
using SpatialSignal = std::vector<V>;

/// One temporal signal per location, all over the same domain.
template <class V>
class SpatioTemporalSignal {
 public:
  SpatioTemporalSignal() = default;
  explicit SpatioTemporalSignal(std::vector<TemporalSignal<V>> per_location)
      : per_location_(std::move(per_location)) {
    for (const auto& s : per_location_)
      if (s.start_time() != per_location_.front().start_time() ||
          s.end_time() != per_location_.front().end_time())
        throw SemanticError("spatio-temporal signal locations have different time domains");
  }

  std::size_t location_count() const noexcept { return per_location_.size(); }
  const TemporalSignal<V>& at(std::size_t location) const { return per_location_.at(location); }
  const TemporalSignal<V>& operator[](std::size_t location) const { return per_location_[location]; }
  const std::vector<TemporalSignal<V>>& signals() const noexcept { return per_location_; }
  double start_time() const { return per_location_.front().start_time(); }
  double end_time() const { return per_location_.front().end_time(); }

  /// Sorted union of the step times of every location.
  std::vector<double> step_times() const {
    return time_step_union(std::span<const TemporalSignal<V>>(per_location_));
  }

  friend bool operator==(const SpatioTemporalSignal&, const SpatioTemporalSignal&) = default;

 private:
  std::vector<TemporalSignal<V>> per_location_;
};

/// The spatial signal holding each location's value at t.
template <class V>
SpatialSignal<V> spatial_slice(const SpatioTemporalSignal<V>& sigma, double t) {
  SpatialSignal<V> out;
  out.reserve(sigma.location_count());
  for (const auto& s : sigma.signals()) out.push_back(s.value_at(t));
  return out;
}

/// Vector-valued input signals, one per location, sharing one step grid.
class Trace {
 public:
  using Sample = std::vector<double>;

  Trace() = default;
  /// Validates arity and domains, then resamples every location onto the
  /// union of all step times.
  Trace(std::vector<std::string> variables, std::vector<TemporalSignal<Sample>> per_location);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t location_count() const noexcept { return per_location_.size(); }
  const TemporalSignal<Sample>& at(std::size_t location) const { return per_location_.at(location); }
  const std::vector<TemporalSignal<Sample>>& signals() const noexcept { return per_location_; }
  double start_time() const { return per_location_.front().start_time(); }
  double end_time() const { return per_location_.front().end_time(); }
  std::vector<double> times() const { return per_location_.front().times(); }

  /// Column of `name`, or npos when absent.
  std::size_t variable_index(const std::string& name) const;
  bool has_variable(const std::string& name) const { return variable_index(name) != npos; }

  /// Scalar signal of one variable at one location.
  TemporalSignal<double> variable(std::size_t location, std::size_t index) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<TemporalSignal<Sample>> per_location_;
};

}  // namespace strel
