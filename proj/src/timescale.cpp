#include "tsfrac/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsfrac/errors.hpp"

namespace tsfrac {
namespace {

double front(const Component& c) {
  return std::holds_alternative<Interval>(c) ? std::get<Interval>(c).lo : std::get<Point>(c).x;
}

double back(const Component& c) {
  return std::holds_alternative<Interval>(c) ? std::get<Interval>(c).hi : std::get<Point>(c).x;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

TimeScale::TimeScale(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("time scale: component list is empty");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (const auto* iv = std::get_if<Interval>(&c)) {
      if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi))
        throw ValidationError("time scale: component " + std::to_string(i) + " has a non-finite bound");
      if (!(iv->lo < iv->hi))
        throw ValidationError("time scale: component " + std::to_string(i) + " needs lo < hi");
    } else if (!std::isfinite(std::get<Point>(c).x)) {
      throw ValidationError("time scale: component " + std::to_string(i) + " is a non-finite point");
    }
    if (i > 0 && !(front(c) - back(components_[i - 1]) > kSnapTolerance))
      throw ValidationError("time scale: components " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " overlap or are not ascending");
  }
  min_ = front(components_.front());
  max_ = back(components_.back());
}

TimeScale TimeScale::interval(double lo, double hi) { return TimeScale({Interval{lo, hi}}); }

TimeScale TimeScale::integers(long lo, long hi) {
  if (hi < lo) throw ValidationError("integer scale: hi < lo");
  std::vector<Component> cs;
  for (long k = lo; k <= hi; ++k) cs.emplace_back(Point{static_cast<double>(k)});
  return TimeScale(std::move(cs));
}

TimeScale TimeScale::points(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= kSnapTolerance; }),
           xs.end());
  std::vector<Component> cs;
  cs.reserve(xs.size());
  for (double x : xs) cs.emplace_back(Point{x});
  return TimeScale(std::move(cs));
}

TimeScale TimeScale::quantum(double q, double start, double horizon, bool include_zero) {
  if (!(q > 1.0) || !(start > 0.0) || horizon < start)
    throw ValidationError("quantum scale needs q > 1, start > 0, horizon >= start");
  std::vector<double> xs;
  if (include_zero) xs.push_back(0.0);
  for (double x = start; x <= horizon * (1.0 + 1e-15); x *= q) xs.push_back(x);
  return points(std::move(xs));
}

std::optional<std::size_t> TimeScale::locate(double t) const noexcept {
  if (!std::isfinite(t)) return std::nullopt;
  // First component whose back end is >= t - tol.
  auto it = std::lower_bound(components_.begin(), components_.end(), t - kSnapTolerance,
                             [](const Component& c, double v) { return back(c) < v; });
  if (it == components_.end()) return std::nullopt;
  if (front(*it) - kSnapTolerance <= t) return static_cast<std::size_t>(it - components_.begin());
  return std::nullopt;
}

bool TimeScale::is_discrete() const noexcept {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return std::holds_alternative<Point>(c); });
}

bool TimeScale::is_single_interval() const noexcept {
  return components_.size() == 1 && std::holds_alternative<Interval>(components_.front());
}

bool TimeScale::covers_interval(double lo, double hi) const noexcept {
  auto c = locate(lo);
  if (!c) return false;
  const auto* iv = std::get_if<Interval>(&components_[*c]);
  return iv != nullptr && hi <= iv->hi + kSnapTolerance;
}

bool TimeScale::right_scattered(double t) const { return sigma(*this, t) - t > kSnapTolerance; }
bool TimeScale::left_scattered(double t) const { return t - rho(*this, t) > kSnapTolerance; }

TimeScale TimeScale::restrict(double lo, double hi) const {
  if (!contains(lo) || !contains(hi))
    throw DomainError("restrict: bounds [" + fmt(lo) + ", " + fmt(hi) + "] must lie on the scale");
  if (hi < lo) throw OrderError("restrict: hi < lo");
  std::vector<Component> out;
  for (const auto& c : components_) {
    if (const auto* iv = std::get_if<Interval>(&c)) {
      const double a = std::max(iv->lo, lo);
      const double b = std::min(iv->hi, hi);
      if (b - a > kSnapTolerance)
        out.emplace_back(Interval{a, b});
      else if (std::abs(b - a) <= kSnapTolerance)
        out.emplace_back(Point{a});
    } else {
      const double x = std::get<Point>(c).x;
      if (x >= lo - kSnapTolerance && x <= hi + kSnapTolerance) out.emplace_back(Point{x});
    }
  }
  return TimeScale(std::move(out));
}

std::vector<double> TimeScale::isolated_points() const {
  std::vector<double> xs;
  for (const auto& c : components_)
    if (const auto* p = std::get_if<Point>(&c)) xs.push_back(p->x);
  return xs;
}

std::string TimeScale::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) os << " ∪ ";
    if (const auto* iv = std::get_if<Interval>(&components_[i]))
      os << '[' << iv->lo << ", " << iv->hi << ']';
    else
      os << '{' << std::get<Point>(components_[i]).x << '}';
  }
  return os.str();
}

double sigma(const TimeScale& ts, double t) {
  const auto c = ts.locate(t);
  if (!c) throw DomainError("sigma: t = " + fmt(t) + " is not on the time scale");
  const auto& comps = ts.components();
  if (const auto* iv = std::get_if<Interval>(&comps[*c]); iv && t < iv->hi - kSnapTolerance) return t;
  if (*c + 1 == comps.size()) return ts.max();
  return front(comps[*c + 1]);
}

double rho(const TimeScale& ts, double t) {
  const auto c = ts.locate(t);
  if (!c) throw DomainError("rho: t = " + fmt(t) + " is not on the time scale");
  const auto& comps = ts.components();
  if (const auto* iv = std::get_if<Interval>(&comps[*c]); iv && t > iv->lo + kSnapTolerance) return t;
  if (*c == 0) return ts.min();
  return back(comps[*c - 1]);
}

double graininess(const TimeScale& ts, double t) {
  const double s = sigma(ts, t);
  // Snap so that right-dense points report exactly zero.
  return s - t > kSnapTolerance ? s - t : 0.0;
}

TimeScale kappa_restrict(const TimeScale& ts) {
  const auto& comps = ts.components();
  if (!std::holds_alternative<Point>(comps.back()) || comps.size() == 1) return ts;
  std::vector<Component> out(comps.begin(), comps.end() - 1);
  return TimeScale(std::move(out));
}

bool in_kappa(const TimeScale& ts, double t) {
  if (!ts.contains(t)) return false;
  if (std::abs(t - ts.max()) > kSnapTolerance) return true;
  return !ts.left_scattered(ts.max()) || ts.components().size() == 1;
}

Grid::Grid(TimeScale scale, std::vector<GridNode> nodes, int panels)
    : scale_(std::move(scale)), nodes_(std::move(nodes)), panels_(panels) {
  times_.reserve(nodes_.size());
  steps_.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    times_.push_back(n.t);
    steps_.push_back(n.step);
  }
}

std::optional<std::size_t> Grid::find(double t) const noexcept {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - kSnapTolerance);
  if (it != times_.end() && std::abs(*it - t) <= kSnapTolerance)
    return static_cast<std::size_t>(it - times_.begin());
  return std::nullopt;
}

std::size_t Grid::index_of(double t, const char* what) const {
  if (!scale_.contains(t))
    throw DomainError(std::string(what) + ": t = " + fmt(t) + " is not on the time scale");
  if (auto i = find(t)) return *i;
  throw ResolutionError(std::string(what) + ": t = " + fmt(t) + " is not a grid node");
}

double Grid::graininess_at(std::size_t i) const noexcept {
  return steps_[i] == Step::jump ? times_[i + 1] - times_[i] : 0.0;
}

Grid build_grid(const TimeScale& ts, int panels) {
  if (panels < 1) throw ParameterError("build_grid: panel count N must be >= 1");
  std::vector<GridNode> nodes;
  const auto& comps = ts.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const bool last = c + 1 == comps.size();
    const Step tail = last ? Step::none : Step::jump;
    if (const auto* iv = std::get_if<Interval>(&comps[c])) {
      const double width = iv->hi - iv->lo;
      for (int k = 0; k <= panels; ++k) {
        const double t = k == panels ? iv->hi : iv->lo + width * k / panels;
        nodes.push_back({t, NodeKind::panel, c, k == panels ? tail : Step::panel});
      }
    } else {
      nodes.push_back({std::get<Point>(comps[c]).x, NodeKind::isolated, c, tail});
    }
  }
  return Grid(ts, std::move(nodes), panels);
}

GridPtr make_grid(const TimeScale& ts, int panels) {
  return std::make_shared<const Grid>(build_grid(ts, panels));
}

}  // namespace tsfrac
