#pragma once

// Special functions and small numerical kernels shared by the rest of the
// library. Everything here is a pure function of its arguments.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aoa {

/// Thrown when a computation produces a non-finite value where a finite one
/// is required (the CLI maps this to exit code 3).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval [lo, hi] on a real axis.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] constexpr double width() const { return hi - lo; }
  [[nodiscard]] bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
};

/// Principal branch of the Lambert W function for x >= 0.
///
/// Halley iteration seeded with Winitzki's ln(1+x) approximation. For x > e
/// the iteration runs on w + ln w = ln x, which keeps e^w from overflowing
/// for very large arguments.
inline double lambert_w0(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("lambert_w0: argument must be finite and non-negative, got " +
                            std::to_string(x));
  }
  if (x == 0.0) return 0.0;

  constexpr int kMaxIterations = 50;
  constexpr double kRelStep = 1e-14;

  const double l1 = std::log1p(x);
  double w = l1 * (1.0 - std::log1p(l1) / (2.0 + l1));

  if (x <= std::numbers::e) {
    for (int i = 0; i < kMaxIterations; ++i) {
      const double ew = std::exp(w);
      const double f = w * ew - x;
      const double wp1 = w + 1.0;
      const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
      w -= step;
      if (std::abs(step) <= kRelStep * std::abs(w)) break;
    }
  } else {
    const double lx = std::log(x);
    for (int i = 0; i < kMaxIterations; ++i) {
      const double f = w + std::log(w) - lx;
      const double f1 = 1.0 + 1.0 / w;
      const double f2 = -1.0 / (w * w);
      const double step = f / (f1 - 0.5 * f * f2 / f1);
      w -= step;
      if (std::abs(step) <= kRelStep * std::abs(w)) break;
    }
  }
  return w;
}

/// Error function. Backed by the C library's erf (sub-ulp accuracy on glibc).
inline double erf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("erf: non-finite argument");
  return std::erf(x);
}

/// Probability mass of N(center, sigma^2) inside iv.
///
/// Tails are evaluated through erfc so that strips many sigma away from the
/// center keep their relative accuracy.
inline double gauss_mass(const Interval& iv, double center, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("gauss_mass: sigma must be finite and positive");
  }
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi || !std::isfinite(center)) {
    throw std::domain_error("gauss_mass: invalid interval or center");
  }
  const double s = std::numbers::sqrt2 * sigma;
  const double zl = (iv.lo - center) / s;
  const double zh = (iv.hi - center) / s;
  double mass = 0.0;
  if (zl >= 0.0) {
    mass = 0.5 * (std::erfc(zl) - std::erfc(zh));
  } else if (zh <= 0.0) {
    mass = 0.5 * (std::erfc(-zh) - std::erfc(-zl));
  } else {
    mass = 0.5 * (std::erf(zh) - std::erf(zl));
  }
  return mass < 0.0 ? 0.0 : (mass > 1.0 ? 1.0 : mass);
}

namespace detail {
inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw numerical_error(std::string(what) + ": non-finite function value");
  return v;
}
}  // namespace detail

/// Symmetric first difference (f(x+h) - f(x-h)) / 2h.
template <class F>
double central_diff(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::domain_error("central_diff: step must be positive");
  const double fp = detail::checked(f(x + h), "central_diff");
  const double fm = detail::checked(f(x - h), "central_diff");
  return (fp - fm) / (2.0 * h);
}

/// Symmetric second difference (f(x+h) - 2f(x) + f(x-h)) / h^2.
template <class F>
double central_diff2(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::domain_error("central_diff2: step must be positive");
  const double fp = detail::checked(f(x + h), "central_diff2");
  const double f0 = detail::checked(f(x), "central_diff2");
  const double fm = detail::checked(f(x - h), "central_diff2");
  return (fp - 2.0 * f0 + fm) / (h * h);
}

/// Adaptive Simpson quadrature of f over [lo, hi] to absolute tolerance tol.
template <class F>
double integrate_adaptive(F&& f, double lo, double hi, double tol = 1e-12, int max_depth = 48) {
  if (!(lo <= hi)) throw std::domain_error("integrate_adaptive: lo > hi");
  if (lo == hi) return 0.0;

  auto simpson = [](double fa, double fm, double fb, double width) {
    return width / 6.0 * (fa + 4.0 * fm + fb);
  };
  auto recurse = [&](auto&& self, double a, double b, double fa, double fm, double fb,
                     double whole, double eps, int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return self(self, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           self(self, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
  };

  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double result =
      recurse(recurse, lo, hi, fa, fm, fb, simpson(fa, fm, fb, hi - lo), tol, max_depth);
  return detail::checked(result, "integrate_adaptive");
}

/// count evenly spaced points from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  out.back() = stop;
  return out;
}

struct MaximizeOptions {
  std::size_t grid_points = 512;
  int max_golden_iterations = 200;
};

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Bounded 1-D maximization: a uniform grid scan followed by golden-section
/// refinement in the cells adjacent to the best grid sample.
///
/// Ties on the grid go to the first (lowest) grid point. The refined point only
/// replaces the grid best if it is strictly better, so the result is never
/// below any grid sample.
template <class F>
Maximum maximize_1d(F&& f, const Interval& iv, double tol, MaximizeOptions opts = {}) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
    throw std::domain_error("maximize_1d: empty or non-finite interval");
  }
  if (!(tol > 0.0)) throw std::domain_error("maximize_1d: tolerance must be positive");
  if (iv.hi == iv.lo) return {iv.lo, f(iv.lo)};

  const std::size_t n = opts.grid_points < 3 ? 3 : opts.grid_points;
  const double step = iv.width() / static_cast<double>(n - 1);
  auto at = [&](std::size_t i) { return i + 1 == n ? iv.hi : iv.lo + step * static_cast<double>(i); };

  std::size_t best = 0;
  double best_value = f(at(0));
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(at(i));
    if (v > best_value || (std::isnan(best_value) && !std::isnan(v))) {
      best = i;
      best_value = v;
    }
  }

  double a = at(best == 0 ? 0 : best - 1);
  double b = at(best + 1 >= n ? n - 1 : best + 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < opts.max_golden_iterations && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = fc >= fd ? c : d;
  const double fx = fc >= fd ? fc : fd;
  if (fx > best_value) return {x, fx};
  return {at(best), best_value};
}

}  // namespace aoa
