// Small quadrature toolbox: fixed-order Gauss-Legendre on an interval and
// adaptive Simpson with an absolute-error target.
#pragma once

#include <functional>

namespace sit {

// Integrates f over [a, b] with an n-point Gauss-Legendre rule (nodes
// computed once per n and cached; n <= 512). Exact to machine precision for
// smooth integrands at n = 256 in this codebase's uses; callers validate
// against a doubled rule where it matters.
double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int n = 256);

// Adaptive Simpson to absolute tolerance tol (with recursion depth cap).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11);

}  // namespace sit
