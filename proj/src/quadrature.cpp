#include "sit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace sit {

namespace {

struct Rule {
  std::vector<double> node;    // on (-1, 1)
  std::vector<double> weight;
};

// Golub-Welsch is overkill for fixed n; Newton on Legendre recurrences is
// compact and accurate to ~1e-15.
Rule build_rule(int n) {
  Rule r;
  r.node.resize(n);
  r.weight.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th positive root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.node[i] = -x;
    r.node[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weight[i] = w;
    r.weight[n - 1 - i] = w;
  }
  return r;
}

const Rule& cached_rule(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol)
    return left + right + err / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, tol * 0.5, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, tol * 0.5, depth - 1);
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int n) {
  if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: bad n");
  if (a == b) return 0.0;
  const Rule& r = cached_rule(n);
  const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
  // Kahan compensation: downstream consumers difference these integrals at
  // 1e-4 spacings, so plain-summation roundoff would dominate the result.
  double acc = 0.0, comp = 0.0;
  for (int i = 0; i < n; ++i) {
    const double term = r.weight[i] * f(mid + hw * r.node[i]) - comp;
    const double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc * hw;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adapt(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace sit
