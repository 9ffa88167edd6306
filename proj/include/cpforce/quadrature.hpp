#pragma once

/**
 * Adaptive Gauss--Kronrod 7/15 quadrature on a finite interval.
 *
 * The integration range is split at caller-supplied breakpoints (places where
 * the integrand is known to change character), each piece is estimated with a
 * 15-point Kronrod rule whose embedded 7-point Gauss rule provides the error
 * estimate, and the interval with the largest error is bisected until the
 * summed error meets max(abs_tol, rel_tol * |integral|).  Integrable
 * inverse-square-root edges are handled by bisection refinement; the rule
 * never evaluates interval endpoints.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpforce {

/** Thrown when an integral cannot reach its tolerance within budget. */
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace quad_detail {

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is
// symmetric) with the matching Kronrod weights.  Entries 1, 3, 5 and the
// midpoint are the embedded 7-point Gauss nodes.
inline constexpr double GK_X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double GK_WK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double GK_WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/** One Kronrod panel on [a, b]; returns the value and a conservative error. */
template <typename F>
inline void kronrod_panel(F&& f, double a, double b, double& value, double& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv_low[7];
  double fv_high[7];
  const double f_center = f(center);
  double res_gauss = GK_WG[3] * f_center;
  double res_kronrod = GK_WK[7] * f_center;
  double res_abs = GK_WK[7] * std::abs(f_center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * GK_X[j];
    fv_low[j] = f(center - dx);
    fv_high[j] = f(center + dx);
    const double pair_sum = fv_low[j] + fv_high[j];
    res_kronrod += GK_WK[j] * pair_sum;
    if (j % 2 == 1) res_gauss += GK_WG[j / 2] * pair_sum;
    res_abs += GK_WK[j] * (std::abs(fv_low[j]) + std::abs(fv_high[j]));
  }

  // Scale the raw Gauss/Kronrod difference by the integrand's variation so
  // that the estimate stays meaningful on nearly-cancelling integrands.
  const double mean = 0.5 * res_kronrod;
  double res_asc = GK_WK[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += GK_WK[j] * (std::abs(fv_low[j] - mean) + std::abs(fv_high[j] - mean));
  }

  value = res_kronrod * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (res_abs > uflow / (50.0 * eps)) {
    err = std::max(eps * 50.0 * res_abs, err);
  }
  error = err;
}

struct Interval {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct IntervalWorse {
  bool operator()(const Interval& lhs, const Interval& rhs) const {
    return lhs.error < rhs.error;
  }
};

}  // namespace quad_detail

/**
 * Adaptive integration over [breakpoints.front(), breakpoints.back()].
 * Breakpoints must be finite and nondecreasing; duplicates are ignored.
 * Does not throw on non-convergence -- inspect `converged`.
 */
template <typename F>
QuadratureResult integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                    double abs_tol, double rel_tol,
                                    int max_intervals = 400) {
  std::vector<double> edges(breakpoints);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) {
    throw std::invalid_argument("integrate_adaptive: need at least two distinct breakpoints");
  }
  for (double e : edges) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("integrate_adaptive: breakpoints must be finite");
    }
  }

  std::priority_queue<quad_detail::Interval, std::vector<quad_detail::Interval>,
                      quad_detail::IntervalWorse>
      heap;
  QuadratureResult out;
  double total = 0.0;
  double total_err = 0.0;
  double frozen_err = 0.0;  // error of intervals too narrow to split further
  int interval_count = 0;

  auto push_panel = [&](double a, double b) {
    quad_detail::Interval iv;
    iv.a = a;
    iv.b = b;
    quad_detail::kronrod_panel(f, a, b, iv.value, iv.error);
    out.evaluations += 15;
    total += iv.value;
    total_err += iv.error;
    heap.push(iv);
    ++interval_count;
  };

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    push_panel(edges[i], edges[i + 1]);
  }

  const double span = edges.back() - edges.front();
  auto tolerance = [&]() { return std::max(abs_tol, rel_tol * std::abs(total)); };

  while (total_err + frozen_err > tolerance() && interval_count < max_intervals &&
         !heap.empty()) {
    quad_detail::Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    const double width_floor =
        std::numeric_limits<double>::epsilon() *
        std::max({std::abs(worst.a), std::abs(worst.b), 1e-3 * span});
    if (width <= 4.0 * width_floor || mid <= worst.a || mid >= worst.b) {
      // Cannot be refined further in double precision; park its error.
      frozen_err += worst.error;
      total_err -= worst.error;
      continue;
    }
    total -= worst.value;
    total_err -= worst.error;
    --interval_count;
    push_panel(worst.a, mid);
    push_panel(mid, worst.b);
  }

  out.value = total;
  out.error_estimate = total_err + frozen_err;
  out.converged = out.error_estimate <= tolerance();
  return out;
}

/**
 * integrate_adaptive with a retry ladder: on non-convergence the subdivision
 * budget is doubled twice before giving up.  Throws QuadratureError (with the
 * context string) once the ladder is exhausted.
 */
template <typename F>
QuadratureResult integrate_with_retry(F&& f, const std::vector<double>& breakpoints,
                                      double abs_tol, double rel_tol,
                                      const std::string& context,
                                      int max_intervals = 400) {
  QuadratureResult result;
  for (int attempt = 0; attempt < 3; ++attempt) {
    result = integrate_adaptive(f, breakpoints, abs_tol, rel_tol,
                                max_intervals << attempt);
    if (result.converged) return result;
  }
  throw QuadratureError("quadrature failed to converge (" + context +
                        "): error estimate " + std::to_string(result.error_estimate) +
                        " above tolerance " +
                        std::to_string(std::max(abs_tol, rel_tol * std::abs(result.value))));
}

}  // namespace cpforce
