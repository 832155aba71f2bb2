#pragma once

// Offline monitoring: recursive evaluation of formulas over a trace and a
// dynamical spatial model, with the temporal sweeps and spatial fixpoints
// used by each operator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "strel/algebra.hpp"
#include "strel/distance.hpp"
#include "strel/error.hpp"
#include "strel/interpretation.hpp"
#include "strel/logic.hpp"
#include "strel/signal.hpp"
#include "strel/space.hpp"

namespace strel {

/// Relative tolerance used when locating shifted event times in a step grid.
inline constexpr double time_tolerance = 1e-9;

namespace detail {

/// FIFO window over a monoid, with amortized O(1) push, pop and fold.
template <class T, class Op>
class SlidingFold {
 public:
  SlidingFold(T identity, Op op) : identity_(identity), back_fold_(identity), op_(op) {}

  void push_back(T x) {
    back_.push_back(x);
    back_fold_ = op_(back_fold_, x);
  }

  void pop_front() {
    if (front_.empty()) {
      T acc = identity_;
      for (std::size_t k = back_.size(); k-- > 0;) {
        T x = back_[k];
        acc = op_(x, acc);
        front_.push_back(acc);
      }
      back_.clear();
      back_fold_ = identity_;
    }
    front_.pop_back();
  }

  void clear() {
    front_.clear();
    back_.clear();
    back_fold_ = identity_;
  }

  T fold() const {
    T head = front_.empty() ? identity_ : T(front_.back());
    return op_(head, back_fold_);
  }

 private:
  T identity_;
  T back_fold_;
  Op op_;
  std::vector<T> front_;  // suffix folds; back() covers the whole front part
  std::vector<T> back_;
};

/// A window [lo, hi) over indices of a sequence, folded in order.
template <class T, class Op, class Element>
class IndexWindow {
 public:
  IndexWindow(T identity, Op op, Element element)
      : fold_(identity, op), element_(std::move(element)) {}

  /// Moves the window to [lo, hi); both ends must be nondecreasing.
  void move_to(std::size_t lo, std::size_t hi) {
    if (lo >= hi_) {
      fold_.clear();
      lo_ = hi_ = lo;
    }
    while (hi_ < hi) fold_.push_back(element_(hi_++));
    while (lo_ < lo) {
      fold_.pop_front();
      ++lo_;
    }
  }

  T fold() const { return fold_.fold(); }

 private:
  SlidingFold<T, Op> fold_;
  Element element_;
  std::size_t lo_ = 0;
  std::size_t hi_ = 0;
};

template <class V>
struct RangeFold {
  V all;   // combine over the range
  V best;  // choose over positions j of value(j) combined with everything before j
};

inline std::vector<double> merged_grid(const std::vector<double>& a, const std::vector<double>& b,
                                       double from, double to) {
  std::vector<double> out{from};
  for (double t : a)
    if (t > from && t <= to) out.push_back(t);
  for (double t : b)
    if (t > from && t <= to) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Index of the last grid time <= x, tolerating rounding in shifted times.
inline std::size_t locate(const std::vector<double>& grid, double x, double tol) {
  auto it = std::upper_bound(grid.begin(), grid.end(), x + tol);
  if (it == grid.begin()) return 0;
  return static_cast<std::size_t>(it - grid.begin()) - 1;
}

inline std::vector<double> dedup_events(std::vector<double> events, double tol) {
  std::sort(events.begin(), events.end());
  std::vector<double> out;
  for (double e : events)
    if (out.empty() || e - out.back() > tol) out.push_back(e);
  return out;
}

inline std::string interval_text(const Interval& i) {
  return "[" + std::to_string(i.lo) + ", " + (i.hi ? std::to_string(*i.hi) : "inf") + "]";
}

}  // namespace detail

/// Until over piecewise-constant signals:
///   out(t) = choose over t' in [t+t1, t+t2] of b(t') combined with a on [t, t'].
/// The output is defined on [start, T - t2] ([start, T - t1] when unbounded);
/// an empty output domain is a SemanticError.
template <SignalDomain D>
TemporalSignal<value_t<D>> monitor_until(const D& dom, const Interval& interval,
                                         const TemporalSignal<value_t<D>>& a,
                                         const TemporalSignal<value_t<D>>& b) {
  using V = value_t<D>;
  const double s = std::max(a.start_time(), b.start_time());
  const double T = std::min(a.end_time(), b.end_time());
  if (s > T) throw SemanticError("until operands have disjoint time domains");
  const double t1 = interval.lo;
  const bool bounded = interval.is_bounded();
  const double t2 = bounded ? *interval.hi : t1;
  const double last = T - t2;
  if (last < s)
    throw SemanticError("temporal interval " + detail::interval_text(interval) +
                        " exceeds the signal horizon [" + std::to_string(s) + ", " +
                        std::to_string(T) + "]");
  const double tol = time_tolerance * std::max({1.0, std::abs(s), std::abs(T)});
  const std::vector<double> grid = detail::merged_grid(a.times(), b.times(), s, T);
  const std::vector<V> av = sample(a, std::span<const double>(grid));
  const std::vector<V> bv = sample(b, std::span<const double>(grid));
  const std::size_t K = grid.size();

  std::vector<double> events{s};
  for (double p : grid) {
    for (double e : {p, p - t1, p - t2})
      if (e > s && e <= last) events.push_back(e);
  }
  events = detail::dedup_events(std::move(events), tol);

  auto comb = [&dom](V x, V y) { return dom.combine(x, y); };
  detail::IndexWindow prefix(dom.top(), comb, [&av](std::size_t j) { return V(av[j]); });
  using Acc = detail::RangeFold<V>;
  auto acc_op = [&dom](Acc l, Acc r) {
    return Acc{dom.combine(l.all, r.all), dom.choose(l.best, dom.combine(l.all, r.best))};
  };
  detail::IndexWindow window(Acc{dom.top(), dom.bottom()}, acc_op, [&](std::size_t j) {
    V x = av[j];
    V y = bv[j];
    return Acc{x, dom.combine(x, y)};
  });

  std::vector<typename TemporalSignal<V>::Step> out;
  out.reserve(events.size());
  for (double e : events) {
    const std::size_t i = detail::locate(grid, e, tol);
    const std::size_t jlo = std::max(i, detail::locate(grid, e + t1, tol));
    const std::size_t jhi = bounded ? std::max(jlo, detail::locate(grid, e + t2, tol)) : K - 1;
    prefix.move_to(i, jlo);
    window.move_to(jlo, jhi + 1);
    out.push_back({e, dom.combine(prefix.fold(), window.fold().best)});
  }
  return minimize(TemporalSignal<V>(std::move(out), last));
}

/// Since over piecewise-constant signals:
///   out(t) = choose over t' in [t-t2, t-t1] of b(t') combined with a on [t', t].
/// The output is defined on [start + t2, T] ([start + t1, T] when unbounded).
template <SignalDomain D>
TemporalSignal<value_t<D>> monitor_since(const D& dom, const Interval& interval,
                                         const TemporalSignal<value_t<D>>& a,
                                         const TemporalSignal<value_t<D>>& b) {
  using V = value_t<D>;
  const double s = std::max(a.start_time(), b.start_time());
  const double T = std::min(a.end_time(), b.end_time());
  if (s > T) throw SemanticError("since operands have disjoint time domains");
  const double t1 = interval.lo;
  const bool bounded = interval.is_bounded();
  const double t2 = bounded ? *interval.hi : t1;
  const double first = s + t2;
  if (first > T)
    throw SemanticError("temporal interval " + detail::interval_text(interval) +
                        " exceeds the signal horizon [" + std::to_string(s) + ", " +
                        std::to_string(T) + "]");
  const double tol = time_tolerance * std::max({1.0, std::abs(s), std::abs(T)});
  const std::vector<double> grid = detail::merged_grid(a.times(), b.times(), s, T);
  const std::vector<V> av = sample(a, std::span<const double>(grid));
  const std::vector<V> bv = sample(b, std::span<const double>(grid));

  std::vector<double> events{first};
  for (double p : grid) {
    for (double e : {p, p + t1, p + t2})
      if (e > first && e <= T) events.push_back(e);
  }
  events = detail::dedup_events(std::move(events), tol);

  auto comb = [&dom](V x, V y) { return dom.combine(x, y); };
  detail::IndexWindow suffix(dom.top(), comb, [&av](std::size_t j) { return V(av[j]); });
  using Acc = detail::RangeFold<V>;
  auto acc_op = [&dom](Acc l, Acc r) {
    return Acc{dom.combine(l.all, r.all), dom.choose(dom.combine(l.best, r.all), r.best)};
  };
  detail::IndexWindow window(Acc{dom.top(), dom.bottom()}, acc_op, [&](std::size_t j) {
    V x = av[j];
    V y = bv[j];
    return Acc{x, dom.combine(x, y)};
  });

  std::vector<typename TemporalSignal<V>::Step> out;
  out.reserve(events.size());
  for (double e : events) {
    const std::size_t i = detail::locate(grid, e, tol);
    const std::size_t jhi = std::min(i, detail::locate(grid, e - t1, tol));
    const std::size_t jlo = bounded ? std::min(jhi, detail::locate(grid, e - t2, tol)) : 0;
    window.move_to(jlo, jhi + 1);
    suffix.move_to(jhi + 1, i + 1);
    out.push_back({e, dom.combine(window.fold().best, suffix.fold())});
  }
  return minimize(TemporalSignal<V>(std::move(out), T));
}

/// Observations of one bounded-reach run.
struct ReachStats {
  std::size_t rounds = 0;
  std::size_t queue_entries = 0;
};

namespace detail {

struct LocationDistance {
  Location location;
  Distance distance;
  friend bool operator==(const LocationDistance&, const LocationDistance&) = default;
};

struct LocationDistanceHash {
  std::size_t operator()(const LocationDistance& k) const noexcept {
    std::uint64_t bits = 0;
    double d = k.distance == 0.0 ? 0.0 : k.distance;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof d);
    std::uint64_t h = bits * 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(k.location) + 0x632BE59BD9B4E019ull);
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

template <SignalDomain D>
void check_signal_sizes(const SpatialModel& m, std::size_t a, std::size_t b) {
  if (a != m.location_count() || b != m.location_count())
    throw SemanticError("spatial signal size does not match the location count");
}

/// Reach with a zero lower bound over a total verdict order: labels are
/// settled in order of distance and kept only when they improve the best
/// value already seen at their location.
template <SignalDomain D>
SpatialSignal<value_t<D>> dominance_reach(const SpatialModel& m, std::span<const Distance> ed,
                                          const DistanceDomain& B, Distance d2,
                                          const SpatialSignal<value_t<D>>& s1,
                                          const SpatialSignal<value_t<D>>& s2, const D& dom) {
  using V = value_t<D>;
  const std::size_t n = m.location_count();
  SpatialSignal<V> s(n, dom.bottom());
  struct Label {
    Distance d;
    Location l;
    V v;
  };
  auto later = [](const Label& x, const Label& y) { return x.d > y.d; };
  std::priority_queue<Label, std::vector<Label>, decltype(later)> heap(later);
  for (Location l = 0; l < n; ++l) {
    V v = s2[l];
    if (v != dom.bottom()) heap.push({B.zero(), l, v});
  }
  while (!heap.empty()) {
    Label top = heap.top();
    heap.pop();
    V cur = s[top.l];
    if (!strictly_precedes(dom, cur, top.v)) continue;
    s[top.l] = top.v;
    for (std::size_t ei : m.in_edges(top.l)) {
      const Location prev = m.edge(ei).src;
      const Distance nd = B.add(top.d, ed[ei]);
      if (!B.leq(nd, d2)) continue;
      V nv = dom.combine(top.v, s1[prev]);
      V known = s[prev];
      if (strictly_precedes(dom, known, nv)) heap.push({nd, prev, nv});
    }
  }
  return s;
}

}  // namespace detail

/// Reach with a bounded distance interval [d1, d2], by flooding along
/// in-edges one hop per round and merging entries that share a location
/// and an accumulated distance.
template <SignalDomain D>
SpatialSignal<value_t<D>> bounded_reach(const SpatialModel& m, std::span<const Distance> ed,
                                        const DistanceDomain& B, Distance d1, Distance d2,
                                        const SpatialSignal<value_t<D>>& s1,
                                        const SpatialSignal<value_t<D>>& s2, const D& dom,
                                        ReachStats* stats = nullptr) {
  using V = value_t<D>;
  detail::check_signal_sizes<D>(m, s1.size(), s2.size());
  if (d2 == B.infinity()) throw SemanticError("bounded reach needs a finite upper bound");
  const std::size_t n = m.location_count();
  if (stats) *stats = {};
  if (d1 == B.zero() && D::is_total && B.kind() == DistanceDomain::Kind::real)
    return detail::dominance_reach(m, ed, B, d2, s1, s2, dom);

  SpatialSignal<V> s(n, dom.bottom());
  if (d1 == B.zero()) s = s2;
  struct Entry {
    Location l;
    V v;
    Distance d;
  };
  std::vector<Entry> queue;
  queue.reserve(n);
  for (Location l = 0; l < n; ++l) {
    V v = s2[l];
    // Entries at bottom only ever contribute bottom.
    if (v != dom.bottom()) queue.push_back({l, v, B.zero()});
  }
  std::vector<Entry> next;
  std::unordered_map<detail::LocationDistance, std::size_t, detail::LocationDistanceHash> slot;
  while (!queue.empty()) {
    if (stats) {
      ++stats->rounds;
      stats->queue_entries += queue.size();
    }
    next.clear();
    slot.clear();
    for (const Entry& entry : queue) {
      for (std::size_t ei : m.in_edges(entry.l)) {
        const Location prev = m.edge(ei).src;
        const V v = dom.combine(entry.v, s1[prev]);
        if (v == dom.bottom()) continue;
        const Distance d = B.add(entry.d, ed[ei]);
        if (B.leq(d1, d) && B.leq(d, d2)) s[prev] = dom.choose(s[prev], v);
        if (B.less(d, d2)) {
          auto [it, inserted] = slot.try_emplace(detail::LocationDistance{prev, d}, next.size());
          if (inserted)
            next.push_back({prev, v, d});
          else
            next[it->second].v = dom.choose(next[it->second].v, v);
        }
      }
    }
    std::swap(queue, next);
  }
  return s;
}

/// Reach with the unbounded interval [d1, inf): seeds with the bounded
/// reach over [d1, d1 + max edge distance] (or s2 when d1 is zero), then
/// propagates backwards along in-edges until nothing changes.
template <SignalDomain D>
SpatialSignal<value_t<D>> unbounded_reach(const SpatialModel& m, std::span<const Distance> ed,
                                          const DistanceDomain& B, Distance d1,
                                          const SpatialSignal<value_t<D>>& s1,
                                          const SpatialSignal<value_t<D>>& s2, const D& dom) {
  using V = value_t<D>;
  detail::check_signal_sizes<D>(m, s1.size(), s2.size());
  if (d1 == B.infinity()) throw SemanticError("unbounded reach needs a finite lower bound");
  const std::size_t n = m.location_count();
  SpatialSignal<V> s;
  if (d1 == B.zero()) {
    s = s2;
  } else {
    Distance dmax = B.zero();
    for (Distance d : ed) dmax = std::max(dmax, d);
    s = bounded_reach(m, ed, B, d1, B.add(d1, dmax), s1, s2, dom);
  }
  std::vector<Location> work(n);
  for (Location l = 0; l < n; ++l) work[l] = l;
  std::vector<char> queued(n, 0);
  std::vector<Location> next;
  while (!work.empty()) {
    next.clear();
    for (Location l : work) {
      const V here = s[l];
      for (std::size_t ei : m.in_edges(l)) {
        const Location prev = m.edge(ei).src;
        const V old = s[prev];
        const V v = dom.choose(dom.combine(here, s1[prev]), old);
        if (v != old) {
          s[prev] = v;
          if (!queued[prev]) {
            queued[prev] = 1;
            next.push_back(prev);
          }
        }
      }
    }
    for (Location l : next) queued[l] = 0;
    std::swap(work, next);
  }
  return s;
}

/// Dispatches on whether the upper distance bound is finite.
template <SignalDomain D>
SpatialSignal<value_t<D>> reach(const SpatialModel& m, std::span<const Distance> ed,
                                const DistanceDomain& B, const Interval& interval,
                                const SpatialSignal<value_t<D>>& s1,
                                const SpatialSignal<value_t<D>>& s2, const D& dom) {
  if (interval.hi) return bounded_reach(m, ed, B, interval.lo, *interval.hi, s1, s2, dom);
  return unbounded_reach(m, ed, B, interval.lo, s1, s2, dom);
}

template <SignalDomain D>
SpatialSignal<value_t<D>> reach(const SpatialModel& m, const DistanceFunction& f,
                                const Interval& interval, const SpatialSignal<value_t<D>>& s1,
                                const SpatialSignal<value_t<D>>& s2, const D& dom) {
  const std::vector<Distance> ed = edge_distances(m, f);
  return reach(m, std::span<const Distance>(ed), f.domain, interval, s1, s2, dom);
}

/// Escape over [d1, d2] given the minimum-distance matrix of the model:
/// e[l][l'] accumulates, over routes from l to l', s1 combined along the
/// route; the verdict chooses among targets whose minimum distance from l
/// lies in [d1, d2].
template <SignalDomain D>
SpatialSignal<value_t<D>> escape(const SpatialModel& m, const DistanceMatrix& dist,
                                 Distance d1, Distance d2, const SpatialSignal<value_t<D>>& s1,
                                 const D& dom) {
  using V = value_t<D>;
  detail::check_signal_sizes<D>(m, s1.size(), s1.size());
  const std::size_t n = m.location_count();
  if (dist.size() != n) throw SemanticError("distance matrix does not match the model");
  std::vector<V> e(n * n, dom.bottom());
  std::vector<std::pair<Location, Location>> work;
  for (Location l = 0; l < n; ++l) {
    e[l * n + l] = s1[l];
    work.emplace_back(l, l);
  }
  std::vector<V> updated = e;
  std::vector<char> queued(n * n, 0);
  std::vector<std::pair<Location, Location>> next;
  while (!work.empty()) {
    next.clear();
    for (auto [l1, l2] : work) {
      const V v = e[l1 * n + l2];
      for (std::size_t ei : m.in_edges(l1)) {
        const Location prev = m.edge(ei).src;
        const std::size_t k = prev * n + l2;
        const V old = updated[k];
        const V nv = dom.choose(old, dom.combine(s1[prev], v));
        if (nv != old) {
          updated[k] = nv;
          if (!queued[k]) {
            queued[k] = 1;
            next.emplace_back(prev, l2);
          }
        }
      }
    }
    for (auto [a, b] : next) {
      queued[a * n + b] = 0;
      e[a * n + b] = updated[a * n + b];
    }
    std::swap(work, next);
  }
  SpatialSignal<V> s(n, dom.bottom());
  for (Location l = 0; l < n; ++l) {
    V acc = dom.bottom();
    for (Location t = 0; t < n; ++t) {
      const Distance d = dist(l, t);
      if (d >= d1 && d <= d2) acc = dom.choose(acc, e[l * n + t]);
    }
    s[l] = acc;
  }
  return s;
}

template <SignalDomain D>
SpatialSignal<value_t<D>> escape(const SpatialModel& m, std::span<const Distance> ed,
                                 const DistanceDomain& B, const Interval& interval,
                                 const SpatialSignal<value_t<D>>& s1, const D& dom) {
  const DistanceMatrix dist = min_distance_matrix(m, ed, B);
  return escape(m, dist, interval.lo, interval.upper(), s1, dom);
}

template <SignalDomain D>
SpatialSignal<value_t<D>> escape(const SpatialModel& m, const DistanceFunction& f,
                                 const Interval& interval, const SpatialSignal<value_t<D>>& s1,
                                 const D& dom) {
  const std::vector<Distance> ed = edge_distances(m, f);
  return escape(m, std::span<const Distance>(ed), f.domain, interval, s1, dom);
}

/// Everything a formula is evaluated against.
struct MonitorContext {
  const DynamicalSpatialModel& model;
  const Trace& trace;
  const AtomicInterpretation& interpretation;
  const DistanceRegistry& distances;
};

/// Evaluates formulas bottom-up, caching the signal of every subformula
/// node so shared subtrees are computed once.
template <SignalDomain D>
class Monitor {
 public:
  using V = value_t<D>;
  using Signal = SpatioTemporalSignal<V>;

  explicit Monitor(MonitorContext ctx, D domain = {}) : ctx_(ctx), dom_(domain) {
    if (ctx_.trace.location_count() != ctx_.model.location_count())
      throw SemanticError("trace has " + std::to_string(ctx_.trace.location_count()) +
                          " locations but the model has " +
                          std::to_string(ctx_.model.location_count()));
    if (ctx_.trace.start_time() < ctx_.model.snapshots().front().time)
      throw SemanticError("trace starts before the first model snapshot");
  }

  const D& domain() const noexcept { return dom_; }

  Signal evaluate(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
    Signal out = compute(f);
    memo_.emplace(f.id(), std::make_pair(f, out));
    return out;
  }

 private:
  using Temporal = TemporalSignal<V>;

  Signal compute(const Formula& f) {
    switch (f.kind()) {
      case NodeKind::True: return constant(dom_.top());
      case NodeKind::Atomic: return atomic(f.atom());
      case NodeKind::Not: return negate(evaluate(f.child(0)));
      case NodeKind::And: return binary(evaluate(f.child(0)), evaluate(f.child(1)), true);
      case NodeKind::Or: return binary(evaluate(f.child(0)), evaluate(f.child(1)), false);
      case NodeKind::Until:
        return temporal(f.interval(), evaluate(f.child(0)), evaluate(f.child(1)), true);
      case NodeKind::Since:
        return temporal(f.interval(), evaluate(f.child(0)), evaluate(f.child(1)), false);
      case NodeKind::Eventually: {
        Signal b = evaluate(f.child(0));
        return temporal(f.interval(), top_like(b), b, true);
      }
      case NodeKind::Globally: {
        Signal b = negate(evaluate(f.child(0)));
        return negate(temporal(f.interval(), top_like(b), b, true));
      }
      case NodeKind::Reach:
        return reach_signal(f.interval(), f.distance(), evaluate(f.child(0)), evaluate(f.child(1)));
      case NodeKind::Somewhere: {
        Signal b = evaluate(f.child(0));
        return reach_signal(f.interval(), f.distance(), top_like(b), b);
      }
      case NodeKind::Everywhere: {
        Signal b = negate(evaluate(f.child(0)));
        return negate(reach_signal(f.interval(), f.distance(), top_like(b), b));
      }
      case NodeKind::Escape: return escape_signal(f.interval(), f.distance(), evaluate(f.child(0)));
      case NodeKind::Surround: {
        // a & !(a reach[0,d] !(a | b)) & !(escape[d,inf] a)
        Signal a = evaluate(f.child(0));
        Signal b = evaluate(f.child(1));
        Signal leak = reach_signal(f.interval(), f.distance(), a, negate(binary(a, b, false)));
        Signal out = escape_signal(Interval::from(f.interval().upper()), f.distance(), a);
        return binary(binary(a, negate(leak), true), negate(out), true);
      }
    }
    throw SemanticError("unknown formula node");
  }

  Signal constant(V v) const {
    std::vector<Temporal> out;
    for (std::size_t l = 0; l < ctx_.trace.location_count(); ++l)
      out.push_back(Temporal::constant(v, ctx_.trace.start_time(), ctx_.trace.end_time()));
    return Signal(std::move(out));
  }

  Signal top_like(const Signal& s) const {
    std::vector<Temporal> out;
    for (const Temporal& x : s.signals())
      out.push_back(Temporal::constant(dom_.top(), x.start_time(), x.end_time()));
    return Signal(std::move(out));
  }

  Signal atomic(const Atom& atom) const {
    AtomFunction g = ctx_.interpretation.resolve(atom);
    std::vector<Temporal> out;
    for (Location l = 0; l < ctx_.trace.location_count(); ++l) {
      const D& dom = dom_;
      out.push_back(pointwise_unary(
          [&](const Trace::Sample& x) -> V {
            return atom_value(dom, g(std::span<const double>(x), l));
          },
          ctx_.trace.at(l)));
    }
    return Signal(std::move(out));
  }

  Signal negate(const Signal& s) const {
    std::vector<Temporal> out;
    for (const Temporal& x : s.signals())
      out.push_back(pointwise_unary([this](V v) { return dom_.negate(v); }, x));
    return Signal(std::move(out));
  }

  Signal binary(const Signal& a, const Signal& b, bool conjunction) const {
    std::vector<Temporal> out;
    for (std::size_t l = 0; l < a.location_count(); ++l) {
      if (conjunction)
        out.push_back(pointwise_binary([this](V x, V y) { return dom_.combine(x, y); }, a[l], b[l]));
      else
        out.push_back(pointwise_binary([this](V x, V y) { return dom_.choose(x, y); }, a[l], b[l]));
    }
    return Signal(std::move(out));
  }

  Signal temporal(const Interval& i, const Signal& a, const Signal& b, bool future) const {
    std::vector<Temporal> out;
    for (std::size_t l = 0; l < a.location_count(); ++l)
      out.push_back(future ? monitor_until(dom_, i, a[l], b[l]) : monitor_since(dom_, i, a[l], b[l]));
    return Signal(std::move(out));
  }

  const DistanceFunction& distance(const std::string& name) const {
    return ctx_.distances.at(name);
  }

  const std::vector<Distance>& edge_dist(std::size_t snapshot, const DistanceFunction& f) {
    auto key = std::make_pair(snapshot, f.name);
    auto it = edge_cache_.find(key);
    if (it == edge_cache_.end())
      it = edge_cache_.emplace(key, edge_distances(ctx_.model.snapshots()[snapshot].model, f)).first;
    return it->second;
  }

  const DistanceMatrix& min_dist(std::size_t snapshot, const DistanceFunction& f) {
    auto key = std::make_pair(snapshot, f.name);
    auto it = matrix_cache_.find(key);
    if (it == matrix_cache_.end()) {
      const std::vector<Distance>& ed = edge_dist(snapshot, f);
      it = matrix_cache_
               .emplace(key, min_distance_matrix(ctx_.model.snapshots()[snapshot].model,
                                                 std::span<const Distance>(ed), f.domain))
               .first;
    }
    return it->second;
  }

  // Evaluates a spatial operator at every step time of its operands and at
  // every model change inside their common domain.
  template <class Eval>
  Signal spatial(const Signal& a, const Signal* b, Eval eval) {
    double from = a.start_time(), to = a.end_time();
    if (b) {
      from = std::max(from, b->start_time());
      to = std::min(to, b->end_time());
    }
    if (from > to) throw SemanticError("spatial operands have disjoint time domains");
    std::vector<double> grid = detail::merged_grid(a.step_times(), b ? b->step_times() : std::vector<double>{},
                                                   from, to);
    for (double t : ctx_.model.times())
      if (t > from && t <= to) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const std::size_t n = a.location_count();
    std::vector<std::vector<V>> av(n), bv(n);
    for (std::size_t l = 0; l < n; ++l) {
      av[l] = sample(a[l], std::span<const double>(grid));
      if (b) bv[l] = sample((*b)[l], std::span<const double>(grid));
    }
    std::vector<std::vector<typename Temporal::Step>> steps(n);
    SpatialSignal<V> s1(n), s2(n);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        s1[l] = av[l][k];
        if (b) s2[l] = bv[l][k];
      }
      const std::size_t snap = ctx_.model.index_at(grid[k]);
      SpatialSignal<V> r = eval(snap, s1, s2);
      for (std::size_t l = 0; l < n; ++l) steps[l].push_back({grid[k], V(r[l])});
    }
    std::vector<Temporal> out;
    for (std::size_t l = 0; l < n; ++l) out.push_back(minimize(Temporal(std::move(steps[l]), to)));
    return Signal(std::move(out));
  }

  Signal reach_signal(const Interval& i, const std::string& name, const Signal& a, const Signal& b) {
    const DistanceFunction& f = distance(name);
    return spatial(a, &b, [&](std::size_t snap, const SpatialSignal<V>& s1, const SpatialSignal<V>& s2) {
      const std::vector<Distance>& ed = edge_dist(snap, f);
      return strel::reach(ctx_.model.snapshots()[snap].model, std::span<const Distance>(ed), f.domain,
                          i, s1, s2, dom_);
    });
  }

  Signal escape_signal(const Interval& i, const std::string& name, const Signal& a) {
    const DistanceFunction& f = distance(name);
    return spatial(a, nullptr, [&](std::size_t snap, const SpatialSignal<V>& s1, const SpatialSignal<V>&) {
      edge_dist(snap, f);
      return strel::escape(ctx_.model.snapshots()[snap].model, min_dist(snap, f), i.lo, i.upper(), s1,
                           dom_);
    });
  }

  MonitorContext ctx_;
  D dom_;
  std::unordered_map<const FormulaNode*, std::pair<Formula, Signal>> memo_;
  std::map<std::pair<std::size_t, std::string>, std::vector<Distance>> edge_cache_;
  std::map<std::pair<std::size_t, std::string>, DistanceMatrix> matrix_cache_;
};

/// One-shot evaluation of `f`.
template <SignalDomain D = BooleanDomain>
SpatioTemporalSignal<value_t<D>> monitor(const MonitorContext& ctx, const Formula& f, D domain = {}) {
  Monitor<D> m(ctx, domain);
  return m.evaluate(f);
}

extern template class Monitor<BooleanDomain>;
extern template class Monitor<MaxMinDomain>;

}  // namespace strel
