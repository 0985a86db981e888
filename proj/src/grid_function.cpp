#include "tsfrac/grid_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "tsfrac/errors.hpp"

namespace tsfrac {

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ValidationError("grid function: null grid");
  if (values_.size() != grid_->size())
    throw ValidationError("grid function: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_->size()) + " nodes");
}

GridFunction GridFunction::sample(GridPtr grid, const ScalarFn& f) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->t(i));
  return GridFunction(std::move(grid), std::move(v));
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
  const std::size_t n = grid->size();
  return GridFunction(std::move(grid), std::vector<double>(n, c));
}

double GridFunction::at(double t, const PsiFunction& psi) const {
  if (!scale().contains(t)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", t);
    throw DomainError(std::string("grid function: t = ") + buf + " is off the time scale");
  }
  if (auto i = grid_->find(t)) return values_[*i];
  const auto& ts = grid_->times();
  const auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
  const std::size_t lo = hi - 1;
  const double u0 = psi(ts[lo]), u1 = psi(ts[hi]);
  const double w = (psi(t) - u0) / (u1 - u0);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

GridFunction linear_combination(double a, const GridFunction& f, double b, const GridFunction& g) {
  if (f.grid_ptr() != g.grid_ptr() && f.grid().times() != g.grid().times())
    throw ValidationError("linear combination: grids differ");
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f[i] + b * g[i];
  return GridFunction(f.grid_ptr(), std::move(v));
}

void write_csv(std::ostream& os, const GridFunction& f, const std::string& value_header) {
  os << "t," << value_header << '\n';
  char buf[80];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid().t(i), f[i]);
    os << buf;
  }
}

GridFunction read_csv(std::istream& is, GridPtr grid) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("t,", 0) != 0) throw ValidationError("csv: header must start with 't,'");

  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ValidationError("csv: row " + std::to_string(row) + " has no comma");
    double t = 0.0, v = 0.0;
    const auto r1 = std::from_chars(line.data(), line.data() + comma, t);
    const auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
    if (r1.ec != std::errc{} || r2.ec != std::errc{})
      throw ValidationError("csv: row " + std::to_string(row) + " is not numeric");
    const std::size_t i = values.size();
    if (i >= grid->size())
      throw ValidationError("csv: row " + std::to_string(row) + " exceeds the " +
                            std::to_string(grid->size()) + " grid nodes");
    if (std::abs(t - grid->t(i)) > kSnapTolerance * (1.0 + std::abs(t)))
      throw ValidationError("csv: row " + std::to_string(row) + " has t = " + line.substr(0, comma) +
                            " but grid node " + std::to_string(i) + " is at a different time");
    values.push_back(v);
  }
  if (values.size() != grid->size())
    throw ValidationError("csv: " + std::to_string(values.size()) + " rows for " +
                          std::to_string(grid->size()) + " grid nodes");
  return GridFunction(std::move(grid), std::move(values));
}

}  // namespace tsfrac
