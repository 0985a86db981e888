#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tsfrac/psi.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

/// Values sampled at the nodes of a grid.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<double> values);

  /// Samples f at every node.
  static GridFunction sample(GridPtr grid, const ScalarFn& f);
  static GridFunction constant(GridPtr grid, double c);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const TimeScale& scale() const noexcept { return grid_->scale(); }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& mutable_values() noexcept { return values_; }

  /// Value at t: node value, or linear interpolation in psi inside a panel.
  /// Throws DomainError when t is off the scale.
  double at(double t, const PsiFunction& psi = PsiFunction::identity()) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// a*f + b*g on a shared grid.
GridFunction linear_combination(double a, const GridFunction& f, double b, const GridFunction& g);

/// CSV with header `t,value`; values printed with 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_header = "value");
/// Reads `t,value` rows and checks them node-by-node against the grid.
/// Throws ValidationError naming the first misaligned row.
GridFunction read_csv(std::istream& is, GridPtr grid);

}  // namespace tsfrac
