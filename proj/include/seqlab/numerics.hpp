#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace seqlab::numerics {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (or one is
/// zero). Stops when |f| < residualTol or the bracket is narrower than
/// widthTol. Returns nullopt when the bracket does not straddle a root.
template <class F>
std::optional<RootResult> bisect(F&& f, double lo, double hi, double residualTol = 1e-12,
                                 double widthTol = 1e-14, int maxIter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) return std::nullopt;
  if (flo == 0.0) return RootResult{lo, 0.0, 0};
  if (fhi == 0.0) return RootResult{hi, 0.0, 0};
  if ((flo > 0) == (fhi > 0)) return std::nullopt;

  RootResult best{std::abs(flo) < std::abs(fhi) ? lo : hi,
                  std::abs(flo) < std::abs(fhi) ? flo : fhi, 0};
  for (int it = 1; it <= maxIter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fmid = f(mid);
    if (std::abs(fmid) < std::abs(best.residual)) best = {mid, fmid, it};
    best.iterations = it;
    if (std::abs(fmid) < residualTol || hi - lo < widthTol || mid == lo || mid == hi) break;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return best;
}

struct MaxResult {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi], run
/// for a fixed number of iterations.
template <class F>
MaxResult goldenSectionMaximize(F&& f, double lo, double hi, int iterations = 200) {
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - invPhi * (b - a);
  double x2 = a + invPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations && x1 < x2; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? MaxResult{x1, f1} : MaxResult{x2, f2};
}

/// Adaptive Gauss-Kronrod integral of f over [a, b] to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double absTol = 1e-10);

}  // namespace seqlab::numerics
