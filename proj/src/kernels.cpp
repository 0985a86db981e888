#include "tsfrac/kernels.hpp"

#include <limits>

namespace tsfrac::kernels {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> left_all(std::span<const double> u, std::span<const Step> steps,
                             std::span<const double> f, std::size_t first, std::size_t last,
                             double alpha) {
  std::vector<double> out(u.size(), kNaN);
  const auto lo = static_cast<std::ptrdiff_t>(first);
  const auto hi = static_cast<std::ptrdiff_t>(last);
  // Row j costs O(j - first); dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t j = lo; j <= hi; ++j)
    out[j] = left_at(u, steps, f, first, static_cast<std::size_t>(j), alpha);
  return out;
}

std::vector<double> right_all(std::span<const double> u, std::span<const Step> steps,
                              std::span<const double> f, std::size_t first, std::size_t last,
                              double alpha) {
  std::vector<double> out(u.size(), kNaN);
  const auto lo = static_cast<std::ptrdiff_t>(first);
  const auto hi = static_cast<std::ptrdiff_t>(last);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t j = lo; j <= hi; ++j)
    out[j] = right_at(u, steps, f, static_cast<std::size_t>(j), last, alpha);
  return out;
}

namespace serial {

std::vector<double> left_all(std::span<const double> u, std::span<const Step> steps,
                             std::span<const double> f, std::size_t first, std::size_t last,
                             double alpha) {
  std::vector<double> out(u.size(), kNaN);
  for (std::size_t j = first; j <= last; ++j) out[j] = left_at(u, steps, f, first, j, alpha);
  return out;
}

std::vector<double> right_all(std::span<const double> u, std::span<const Step> steps,
                              std::span<const double> f, std::size_t first, std::size_t last,
                              double alpha) {
  std::vector<double> out(u.size(), kNaN);
  for (std::size_t j = first; j <= last; ++j) out[j] = right_at(u, steps, f, j, last, alpha);
  return out;
}

}  // namespace serial
}  // namespace tsfrac::kernels
