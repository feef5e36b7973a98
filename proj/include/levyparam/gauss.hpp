#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace levyparam {

/// Gauss-Legendre rule on [-1,1]. Nodes are roots of P_n found by Newton
/// iteration from the Chebyshev initial guess; weights 2/((1-x^2) P_n'(x)^2).
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return cache.emplace(n, std::move(r)).first->second;
}

/// Integrate f over [a,b] with one n-point Gauss panel.
template <class F>
double gauss_panel(F&& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

/// Composite Gauss over panels of width <= hmax.
template <class F>
double gauss_composite(F&& f, double a, double b, double hmax, int n) {
  if (b <= a) return 0.0;
  int np = std::max(1, (int)std::ceil((b - a) / hmax));
  double h = (b - a) / np, s = 0.0;
  for (int p = 0; p < np; ++p) s += gauss_panel(f, a + p * h, a + (p + 1) * h, n);
  return s;
}

/// Geometric panels from b down toward a=0 (ratio 1/2), stops when a panel
/// contributes less than rel_tol of the accumulated value. Integrand must be
/// integrable at 0. Returns NaN if not converged within max_panels.
template <class F>
double gauss_geometric_to_zero(F&& f, double b, int n, double rel_tol = 1e-14,
                               int max_panels = 200) {
  double hi = b, s = 0.0;
  for (int p = 0; p < max_panels; ++p) {
    double lo = hi * 0.5;
    double c = gauss_panel(f, lo, hi, n);
    s += c;
    if (std::abs(c) < rel_tol * (std::abs(s) + 1e-300) && p > 4) return s;
    hi = lo;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Nodes/weights of a quadrature rule as flat arrays.
struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
  size_t size() const { return x.size(); }
};

/// Composite Gauss rule materialized over [a,b], panels of width <= hmax.
inline Quadrature make_composite_rule(double a, double b, double hmax, int n) {
  Quadrature q;
  if (b <= a) return q;
  int np = std::max(1, (int)std::ceil((b - a) / hmax));
  double h = (b - a) / np;
  const GaussRule& r = gauss_legendre(n);
  q.x.reserve(np * n);
  q.w.reserve(np * n);
  for (int p = 0; p < np; ++p) {
    double c = a + (p + 0.5) * h, hh = 0.5 * h;
    for (int i = 0; i < n; ++i) {
      q.x.push_back(c + hh * r.x[i]);
      q.w.push_back(hh * r.w[i]);
    }
  }
  return q;
}

/// Geometrically graded panels on [a,b] refined toward a (first panel width
/// (b-a)*ratio^(np-1)), n-point Gauss per panel.
inline Quadrature make_graded_rule(double a, double b, int np, double ratio, int n) {
  Quadrature q;
  if (b <= a) return q;
  std::vector<double> edges(np + 1);
  edges[0] = a;
  double len = b - a, acc = 0.0, step = 1.0;
  std::vector<double> widths(np);
  for (int p = np - 1; p >= 0; --p) {
    widths[p] = step;
    acc += step;
    step *= ratio;
  }
  // widths[0] smallest; normalize to len
  for (int p = 0; p < np; ++p) edges[p + 1] = edges[p] + widths[p] / acc * len;
  edges[np] = b;
  const GaussRule& r = gauss_legendre(n);
  for (int p = 0; p < np; ++p) {
    double c = 0.5 * (edges[p] + edges[p + 1]), hh = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < n; ++i) {
      q.x.push_back(c + hh * r.x[i]);
      q.w.push_back(hh * r.w[i]);
    }
  }
  return q;
}

}  // namespace levyparam
