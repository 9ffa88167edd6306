#pragma once

/**
 * Monotone piecewise-cubic Hermite interpolation.
 *
 * Node slopes are the harmonic means of adjacent secants (zero across local
 * extrema), which keeps the interpolant monotone wherever the data are
 * monotone, exact on the nodes, and free of overshoot.  Queries outside the
 * abscissa range clamp to the endpoint values.
 */

#include <cstddef>
#include <vector>

namespace cpforce {

class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  /** x must be strictly increasing with at least two entries. */
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;

  bool empty() const { return x_.empty(); }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace cpforce
