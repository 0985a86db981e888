#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tsfrac {

/// Truncated Taylor series c_0 + c_1 e + ... + c_K e^K.
///
/// Arithmetic follows the usual recurrences for automatic differentiation;
/// two jets combined in one operation must share the same order.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  /// x + e: the seed for differentiating with respect to x.
  static Jet variable(double x, std::size_t order) {
    Jet j(order, x);
    if (order > 0) j.c_[1] = 1.0;
    return j;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  double value() const noexcept { return c_[0]; }
  double operator[](std::size_t k) const noexcept { return c_[k]; }
  double& operator[](std::size_t k) noexcept { return c_[k]; }
  const std::vector<double>& coeffs() const noexcept { return c_; }

  /// k-th derivative (k! c_k).
  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f * c_[k];
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a += -s; }
  friend Jet operator-(double s, Jet a) {
    a *= -1.0;
    return a += s;
  }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& b) { return Jet(b.order(), s) / b; }

  friend Jet exp(const Jet& a) {
    Jet r(a.order(), std::exp(a.c_[0]));
    for (std::size_t k = 1; k <= a.order(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / static_cast<double>(k);
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r(a.order(), std::log(a.c_[0]));
    for (std::size_t k = 1; k <= a.order(); ++k) {
      double s = static_cast<double>(k) * a.c_[k];
      for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * r.c_[j] * a.c_[k - j];
      r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
  }

  /// sin and cos together (their recurrences are coupled).
  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.order(), std::sin(a.c_[0]));
    c = Jet(a.order(), std::cos(a.c_[0]));
    for (std::size_t k = 1; k <= a.order(); ++k) {
      double ss = 0.0, cc = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        const double w = static_cast<double>(j) * a.c_[j];
        ss += w * c.c_[k - j];
        cc -= w * s.c_[k - j];
      }
      s.c_[k] = ss / static_cast<double>(k);
      c.c_[k] = cc / static_cast<double>(k);
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

  /// a^p. Non-negative integer p works at a(0) = 0; otherwise a(0) must be > 0.
  friend Jet pow(const Jet& a, double p) {
    if (p >= 0.0 && p == std::floor(p) && p <= 64.0) {
      Jet r(a.order(), 1.0);
      for (int i = 0; i < static_cast<int>(p); ++i) r = r * a;
      return r;
    }
    Jet r(a.order(), std::pow(a.c_[0], p));
    for (std::size_t k = 1; k <= a.order(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j)
        s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / (static_cast<double>(k) * a.c_[0]);
    }
    return r;
  }

 private:
  std::vector<double> c_{0.0};
};

using JetFn = std::function<Jet(const Jet&)>;

}  // namespace tsfrac
