#include "seqlab/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <limits>

namespace seqlab::numerics {

namespace {

// Recursive bisection of the interval until the 7/15-point error estimate
// drops below the local share of the tolerance.
double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth) {
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  if (err <= tol || depth >= 40 || b - a <= 1e-13 * (std::abs(a) + std::abs(b))) return value;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double absTol) {
  if (!(b > a)) return 0.0;
  return adapt(f, a, b, absTol, 0);
}

}  // namespace seqlab::numerics
