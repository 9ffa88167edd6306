#include "cpforce/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpforce {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw std::invalid_argument("MonotoneCubic: need matching x/y with at least two nodes");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i] < x_[i + 1])) {
      throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");
    }
  }

  const std::size_t n = x_.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  }

  slope_.assign(n, 0.0);
  slope_.front() = secant.front();
  slope_.back() = secant.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = secant[i - 1];
    const double s1 = secant[i];
    // Harmonic mean of same-sign secants, zero otherwise: the classic
    // monotonicity-preserving slope choice.
    slope_[i] = (s0 * s1 > 0.0) ? 2.0 * s0 * s1 / (s0 + s1) : 0.0;
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x_.empty()) throw std::logic_error("MonotoneCubic: empty interpolant");
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();

  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace cpforce
