#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace levyparam {

/// Monotonicity-preserving cubic Hermite interpolant (Fritsch-Carlson slopes)
/// on a strictly increasing grid. Out-of-range queries clamp to the end values.
class PchipInterp {
 public:
  PchipInterp() = default;
  PchipInterp(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("PchipInterp: bad sizes");
    d_.assign(n, 0.0);
    std::vector<double> h(n - 1), del(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      del[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      d_[0] = d_[1] = del[0];
    } else {
      for (size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
          d_[i] = 0.0;
        } else {
          double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
          d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
      }
      d_[0] = end_slope(h[0], h[1], del[0], del[1]);
      d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    }
  }

  double operator()(double xq) const {
    size_t n = x_.size();
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin() - 1;
    double h = x_[i + 1] - x_[i], t = (xq - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  }

  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  static double end_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) return 0.0;
    if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0)) return 3.0 * del0;
    return d;
  }
  std::vector<double> x_, y_, d_;
};

/// Piecewise-linear interpolant, clamped outside the grid.
class LinearInterp {
 public:
  LinearInterp() = default;
  LinearInterp(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() < 2 || y_.size() != x_.size())
      throw std::invalid_argument("LinearInterp: bad sizes");
  }
  double operator()(double xq) const {
    if (xq <= x_.front()) return y_.front();
    if (xq >= x_.back()) return y_.back();
    size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin() - 1;
    double t = (xq - x_[i]) / (x_[i + 1] - x_[i]);
    return (1.0 - t) * y_[i] + t * y_[i + 1];
  }

 private:
  std::vector<double> x_, y_;
};

}  // namespace levyparam
