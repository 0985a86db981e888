#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tsfrac {

/// Absolute tolerance used to snap query points onto scale components.
inline constexpr double kSnapTolerance = 1e-12;

struct Interval {
  double lo;
  double hi;
};

struct Point {
  double x;
};

using Component = std::variant<Interval, Point>;

/// A closed subset of the real line made of finitely many disjoint closed
/// intervals and isolated points, stored in ascending order.
///
/// Instances are immutable; every query is const and thread-safe.
class TimeScale {
 public:
  /// Validates ordering, positive gaps and lo < hi. Throws ValidationError.
  explicit TimeScale(std::vector<Component> components);

  static TimeScale interval(double lo, double hi);
  /// Z ∩ [lo, hi].
  static TimeScale integers(long lo, long hi);
  /// Any finite set of reals; sorted and deduplicated.
  static TimeScale points(std::vector<double> xs);
  /// {0} ∪ {start·q^k : k >= 0, start·q^k <= horizon} for q > 1.
  static TimeScale quantum(double q, double start, double horizon, bool include_zero = true);

  const std::vector<Component>& components() const noexcept { return components_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

  bool contains(double t) const noexcept { return locate(t).has_value(); }
  /// Index of the component holding t (within kSnapTolerance).
  std::optional<std::size_t> locate(double t) const noexcept;

  bool is_discrete() const noexcept;
  bool is_single_interval() const noexcept;
  /// True when every point of [lo, hi] belongs to one interval component.
  bool covers_interval(double lo, double hi) const noexcept;

  bool right_scattered(double t) const;
  bool left_scattered(double t) const;

  /// ts ∩ [lo, hi]; lo and hi must both be members. Throws DomainError.
  TimeScale restrict(double lo, double hi) const;

  /// Every isolated point, in order (interval components skipped).
  std::vector<double> isolated_points() const;

  std::string describe() const;

 private:
  std::vector<Component> components_;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Forward jump: inf{s in ts : s > t}; sigma(max) = max. Throws DomainError off the scale.
double sigma(const TimeScale& ts, double t);
/// Backward jump: sup{s in ts : s < t}; rho(min) = min.
double rho(const TimeScale& ts, double t);
/// mu(t) = sigma(t) - t.
double graininess(const TimeScale& ts, double t);
/// T^kappa: drops a left-scattered maximum.
TimeScale kappa_restrict(const TimeScale& ts);
bool in_kappa(const TimeScale& ts, double t);

enum class NodeKind { isolated, panel };

/// How the grid continues to the right of a node.
enum class Step {
  none,   ///< last node
  panel,  ///< [t_i, t_{i+1}] lies in one interval component
  jump    ///< t_i is right-scattered; mu(t_i) = t_{i+1} - t_i
};

struct GridNode {
  double t;
  NodeKind kind;
  std::size_t component;
  Step step;
};

/// Discretization of a time scale: N equal panels per interval component,
/// every isolated point included once. Immutable after construction.
class Grid {
 public:
  Grid(TimeScale scale, std::vector<GridNode> nodes, int panels);

  const TimeScale& scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  int panels_per_interval() const noexcept { return panels_; }

  const GridNode& node(std::size_t i) const { return nodes_[i]; }
  double t(std::size_t i) const { return nodes_[i].t; }
  const std::vector<double>& times() const noexcept { return times_; }
  std::span<const Step> steps() const noexcept { return steps_; }

  /// Index of the node equal to t within kSnapTolerance.
  std::optional<std::size_t> find(double t) const noexcept;
  /// As find(), but throws DomainError off the scale and ResolutionError off the grid.
  std::size_t index_of(double t, const char* what) const;

  /// Graininess of node i read from the grid (0 at right-dense nodes).
  double graininess_at(std::size_t i) const noexcept;

 private:
  TimeScale scale_;
  std::vector<GridNode> nodes_;
  std::vector<double> times_;
  std::vector<Step> steps_;
  int panels_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Deterministic grid with N >= 1 panels per interval. Throws ParameterError for N < 1.
Grid build_grid(const TimeScale& ts, int panels);
GridPtr make_grid(const TimeScale& ts, int panels);

}  // namespace tsfrac
