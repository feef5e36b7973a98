#include "levyparam/levy_component.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace levyparam {

namespace {

// cancellation-safe 1 - cos(t)
inline double one_minus_cos(double t) {
  double h = std::sin(0.5 * t);
  return 2.0 * h * h;
}

constexpr double kJTableMax = 60.0;
constexpr int kJTableCells = 8192;

// int_0^h (1-cos v) v^{-1-a} dv by the cosine series; good to ~1e-12 for
// h <= 0.7.
double small_J_increment(double h, double a) {
  double t1 = std::pow(h, 2.0 - a) / (2.0 * (2.0 - a));
  double t2 = std::pow(h, 4.0 - a) / (24.0 * (4.0 - a));
  double t3 = std::pow(h, 6.0 - a) / (720.0 * (6.0 - a));
  double t4 = std::pow(h, 8.0 - a) / (40320.0 * (8.0 - a));
  double t5 = std::pow(h, 10.0 - a) / (3628800.0 * (10.0 - a));
  return t1 - t2 + t3 - t4 + t5;
}

// int_y^inf cos v * v^{-p} dv for large y, 6-term integration by parts.
double cos_tail_asymptotic(double y, double p) {
  double s = std::sin(y), c = std::cos(y);
  double y1 = 1.0 / y;
  double r = -s * std::pow(y, -p);
  r += p * c * std::pow(y, -p - 1.0);
  r += p * (p + 1.0) * s * std::pow(y, -p - 2.0);
  r -= p * (p + 1.0) * (p + 2.0) * c * std::pow(y, -p - 3.0);
  r -= p * (p + 1.0) * (p + 2.0) * (p + 3.0) * s * std::pow(y, -p - 4.0);
  r += p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0) * c * std::pow(y, -p - 5.0);
  (void)y1;
  return r;
}

double atom_rho(double decay, long k) { return std::pow(decay, (double)k); }

}  // namespace

LevyComponent::LevyComponent(MeasureVariant measure, Scaling scaling)
    : measure_(std::move(measure)), scaling_(scaling) {
  if (!(scaling_.alpha_idx > 0.0 && scaling_.alpha_idx <= scaling_.beta_idx &&
        scaling_.beta_idx <= 2.0))
    throw std::invalid_argument("LevyComponent: need 0 < alpha <= beta <= 2");
  if (!(scaling_.C1 > 0.0 && scaling_.C1 <= 1.0 && scaling_.C2 >= 1.0))
    throw std::invalid_argument("LevyComponent: need 0 < C1 <= 1 <= C2");
  if (is_stable()) build_stable_tables();
  h_at_1_ = pruitt_h(1.0);
  h_inv_at_1_ = h_inverse(1.0);
}

LevyComponent LevyComponent::stable(double alpha, double c) {
  if (!(alpha > 0.0 && alpha < 2.0 && c > 0.0))
    throw std::invalid_argument("stable: need alpha in (0,2), c > 0");
  return LevyComponent(StableMeasure{alpha, c}, Scaling{alpha, alpha, 1.0, 1.0});
}

LevyComponent LevyComponent::stable_normalized(double alpha) {
  LevyComponent probe = stable(alpha, 1.0);
  double I = probe.psi_coeff_;  // psi(xi) = I |xi|^alpha at c=1
  return stable(alpha, 1.0 / I);
}

LevyComponent LevyComponent::discretized_stable(double alpha, double c, double decay) {
  if (!(alpha > 0.0 && alpha < 2.0 && c > 0.0 && decay > 0.0 && decay < 1.0))
    throw std::invalid_argument("discretized_stable: bad parameters");
  DiscreteBand band = discretized_stable_band(alpha, c, decay);
  // h(lr)/h(r) >= (B1/B2) l^{-alpha}; both indices equal alpha.
  double C1 = band.B1 / band.B2, C2 = band.B2 / band.B1;
  return LevyComponent(DiscretizedStableMeasure{alpha, c, decay},
                       Scaling{alpha, alpha, C1, C2});
}

LevyComponent LevyComponent::custom(std::function<double(double)> density,
                                    std::function<double(double)> tail_mass,
                                    Scaling scaling) {
  return LevyComponent(CustomMeasure{std::move(density), std::move(tail_mass)}, scaling);
}

void LevyComponent::build_stable_tables() {
  const auto& m = std::get<StableMeasure>(measure_);
  const double a = m.alpha, p = 1.0 + a;
  J_ymax_ = kJTableMax;
  J_dy_ = J_ymax_ / kJTableCells;
  J_y_.resize(kJTableCells + 1);
  J_val_.resize(kJTableCells + 1);
  for (int i = 0; i <= kJTableCells; ++i) J_y_[i] = i * J_dy_;
  // anchor: J(ymax) = ymax^{-a}/a - int_ymax^inf cos v v^{-p} dv
  J_val_[kJTableCells] = std::pow(J_ymax_, -a) / a - cos_tail_asymptotic(J_ymax_, p);
  for (int i = kJTableCells - 1; i >= 0; --i) {
    double lo = J_y_[i], hi = J_y_[i + 1];
    double inc;
    if (i == 0) {
      inc = small_J_increment(hi, a);
    } else {
      inc = gauss_panel(
          [&](double v) { return one_minus_cos(v) * std::pow(v, -p); }, lo, hi, 8);
    }
    J_val_[i] = J_val_[i + 1] + inc;
  }
  psi_coeff_ = 2.0 * m.c * J_val_[0];
}

double LevyComponent::stable_J(double y) const {
  const auto& m = std::get<StableMeasure>(measure_);
  const double a = m.alpha;
  if (y <= 0.0) return J_val_[0];
  if (y >= J_ymax_)
    return std::pow(y, -a) / a - cos_tail_asymptotic(y, 1.0 + a);
  // the Hermite cells next to 0 cannot represent J' ~ -y^{1-a}/2 for a > 1,
  // so the series region extends well past the first cell
  if (y < 0.7) return J_val_[0] - small_J_increment(y, a);
  size_t i = (size_t)(y / J_dy_);
  if (i >= J_y_.size() - 1) i = J_y_.size() - 2;
  double y0 = J_y_[i], y1 = J_y_[i + 1];
  double t = (y - y0) / J_dy_;
  // Hermite with exact derivative J'(y) = -(1-cos y) y^{-1-a}
  double d0 = -one_minus_cos(y0) * std::pow(y0, -1.0 - a);
  double d1 = -one_minus_cos(y1) * std::pow(y1, -1.0 - a);
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * J_val_[i] + (t3 - 2 * t2 + t) * J_dy_ * d0 +
         (-2 * t3 + 3 * t2) * J_val_[i + 1] + (t3 - t2) * J_dy_ * d1;
}

double LevyComponent::tail_mass(double r) const {
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  if (const auto* s = std::get_if<StableMeasure>(&measure_))
    return s->c / s->alpha * std::pow(r, -s->alpha);
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    double rho1 = d->decay;
    if (r > rho1) return 0.0;
    long kr = (long)std::floor(std::log(r) / std::log(d->decay) + 1e-9);
    if (kr < 1) return 0.0;
    // sum_{k=1}^{kr} pair/2 telescopes: (c/alpha)(rho_{kr+1}^{-a} - rho_1^{-a})
    return d->c / d->alpha *
           (std::pow(atom_rho(d->decay, kr + 1), -d->alpha) -
            std::pow(rho1, -d->alpha));
  }
  return std::get<CustomMeasure>(measure_).tail_mass(r);
}

double LevyComponent::x2_mass(double r) const {
  if (r <= 0.0) return 0.0;
  if (const auto* s = std::get_if<StableMeasure>(&measure_))
    return s->c / (2.0 - s->alpha) * std::pow(r, 2.0 - s->alpha);
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    // strictly below r: the boundary atom stays on the tail side, so the
    // Pruitt integrand counts it exactly once
    long ka = (long)std::floor(std::log(r) / std::log(d->decay) + 1e-9) + 1;
    if (ka < 1) ka = 1;
    double q = std::pow(d->decay, 2.0 - d->alpha);
    double lead = std::pow(d->decay, (2.0 - d->alpha) * (double)ka);
    return d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0) * lead / (1.0 - q);
  }
  const auto& cm = std::get<CustomMeasure>(measure_);
  double v = gauss_geometric_to_zero(
      [&](double x) { return x * x * cm.density(x); }, r, 16);
  if (!std::isfinite(v))
    throw NumericsError("levy1d: x^2-weighted quadrature near 0 did not converge");
  return v;
}

double LevyComponent::pruitt_h(double r) const {
  if (const auto* s = std::get_if<StableMeasure>(&measure_))
    return 4.0 * s->c / (s->alpha * (2.0 - s->alpha)) * std::pow(r, -s->alpha);
  return 2.0 * (x2_mass(r) / (r * r) + tail_mass(r));
}

double LevyComponent::pruitt_K(double r) const {
  return 2.0 * x2_mass(r) / (r * r);
}

double LevyComponent::h_inverse(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("h_inverse: s <= 0");
  if (const auto* st = std::get_if<StableMeasure>(&measure_)) {
    double H = 4.0 * st->c / (st->alpha * (2.0 - st->alpha));
    return std::pow(H / s, 1.0 / st->alpha);
  }
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (pruitt_h(hi) > s) {
    hi *= 8.0;
    if (++guard > 400) throw NumericsError("h_inverse: bracket expansion overflow (hi)");
  }
  guard = 0;
  while (pruitt_h(lo) < s) {
    lo /= 8.0;
    if (++guard > 400) throw NumericsError("h_inverse: bracket expansion overflow (lo)");
  }
  double llo = std::log(lo), lhi = std::log(hi);
  for (int it = 0; it < 200 && (lhi - llo) > 1e-13; ++it) {
    double mid = 0.5 * (llo + lhi);
    if (pruitt_h(std::exp(mid)) > s)
      llo = mid;
    else
      lhi = mid;
  }
  return std::exp(0.5 * (llo + lhi));
}

double LevyComponent::psi(double xi) const {
  xi = std::abs(xi);
  if (xi == 0.0) return 0.0;
  if (std::holds_alternative<StableMeasure>(measure_))
    return psi_coeff_ * std::pow(xi, std::get<StableMeasure>(measure_).alpha);
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    double acc = 0.0, q = std::pow(d->decay, 2.0 - d->alpha);
    double coef = 2.0 * d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);
    for (long k = 1; k < 100000; ++k) {
      double rho = atom_rho(d->decay, k);
      double wk = coef * std::pow(rho, -d->alpha);
      acc += wk * one_minus_cos(xi * rho);
      // geometric bound on the remaining small-atom contribution
      double bound = 0.5 * xi * xi * wk * rho * rho * q / (1.0 - q);
      if (k > 4 && bound < 1e-15 * (acc + 1e-300)) break;
    }
    return acc;
  }
  return psi_custom(xi, std::numeric_limits<double>::infinity());
}

double LevyComponent::psi_truncated(double xi, double R) const {
  xi = std::abs(xi);
  if (xi == 0.0 || R <= 0.0) return 0.0;
  if (const auto* s = std::get_if<StableMeasure>(&measure_)) {
    double tail = 2.0 * s->c * std::pow(xi, s->alpha) * stable_J(xi * R);
    double v = psi(xi) - tail;
    return v > 0.0 ? v : 0.0;
  }
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    long ka = (long)std::ceil(std::log(R) / std::log(d->decay) - 1e-9);
    if (ka < 1) ka = 1;
    double acc = 0.0, q = std::pow(d->decay, 2.0 - d->alpha);
    double coef = 2.0 * d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);
    for (long k = ka; k < ka + 100000; ++k) {
      double rho = atom_rho(d->decay, k);
      double wk = coef * std::pow(rho, -d->alpha);
      acc += wk * one_minus_cos(xi * rho);
      double bound = 0.5 * xi * xi * wk * rho * rho * q / (1.0 - q);
      if (k > ka + 4 && bound < 1e-15 * (acc + 1e-300)) break;
    }
    return acc;
  }
  return psi_custom(xi, R);
}

double LevyComponent::psi_custom(double xi, double R) const {
  const auto& cm = std::get<CustomMeasure>(measure_);
  // psi_R(xi) = -2 (1-cos(xi R)) T(R) + 2 xi int_0^R sin(xi x) T(x) dx
  double period = M_PI / xi;
  double boundary = 0.0, upper = R;
  if (std::isfinite(R)) boundary = -2.0 * one_minus_cos(xi * R) * cm.tail_mass(R);
  double acc = 0.0;
  double first = std::min(std::isfinite(upper) ? upper : period, period);
  acc += gauss_geometric_to_zero(
      [&](double x) { return std::sin(xi * x) * cm.tail_mass(x); }, first, 16);
  if (!std::isfinite(acc)) throw NumericsError("levy1d: psi quadrature did not converge");
  double x0 = first;
  for (int p = 0; p < 100000; ++p) {
    if (x0 >= upper) break;
    double x1 = std::min(x0 + period, upper);
    acc += gauss_panel([&](double x) { return std::sin(xi * x) * cm.tail_mass(x); }, x0,
                       x1, 16);
    x0 = x1;
    if (!std::isfinite(upper) && 4.0 * cm.tail_mass(x0) < 1e-14 * std::abs(xi * acc)) break;
  }
  double v = boundary + 2.0 * xi * acc;
  return v > 0.0 ? v : 0.0;
}

double LevyComponent::psi_lower_bound(double xi, double xi0) const {
  xi = std::abs(xi);
  if (xi == 0.0) return 0.0;
  if (is_stable()) return psi(xi);
  double cK = std::pow(2.0 / scaling_.C1, 2.0 / scaling_.alpha_idx) - 1.0;
  double denom = 4.0 * cK * std::max(1.0, 1.0 / (xi0 * xi0));
  return pruitt_h(1.0 / xi) / denom;
}

double LevyComponent::psi_upper_bound(double xi) const {
  xi = std::abs(xi);
  if (xi == 0.0) return 0.0;
  return 2.0 * pruitt_h(1.0 / xi);
}

double LevyComponent::truncation_radius(double eps, double u) const {
  if (!(u > 0.0)) throw std::invalid_argument("truncation_radius: u <= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("truncation_radius: eps");
  return h_inverse(std::pow(u, eps - 1.0));
}

double LevyComponent::integrated_exponent(double eps, double u, double xi) const {
  if (!(u > 0.0)) throw std::invalid_argument("integrated_exponent: u <= 0");
  xi = std::abs(xi);
  if (xi == 0.0) return 0.0;
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    // Atom rho_k enters the truncation at time r_k = h(rho_k)^{-1/(1-eps)},
    // so it contributes with duration weight (u - r_k)^+ exactly.
    double acc = 0.0, q = std::pow(d->decay, 2.0 - d->alpha);
    double coef = 2.0 * d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);
    for (long k = 1; k < 100000; ++k) {
      double rho = atom_rho(d->decay, k);
      double rk = std::pow(pruitt_h(rho), -1.0 / (1.0 - eps));
      double dur = u - rk;
      if (dur <= 0.0) continue;
      double wk = coef * std::pow(rho, -d->alpha);
      acc += wk * one_minus_cos(xi * rho) * dur;
      double bound = 0.5 * xi * xi * wk * rho * rho * u * q / (1.0 - q);
      if (k > 4 && bound < 1e-15 * (acc + 1e-300)) break;
    }
    return acc;
  }
  // r = u v^{1/(1-eps)} removes the radius blow-up at r=0; the remaining
  // v^{1/alpha}-type endpoint behavior needs graded panels, a single
  // Gauss rule stalls near 1e-7.
  static const Quadrature vq = make_graded_rule(0.0, 1.0, 18, 0.3, 8);
  const double p = 1.0 / (1.0 - eps);
  double acc = 0.0;
  for (size_t i = 0; i < vq.size(); ++i) {
    double v = vq.x[i];
    double r = u * std::pow(v, p);
    double R = h_inverse(std::pow(r, eps - 1.0));
    acc += vq.w[i] * std::pow(v, eps * p) * psi_truncated(xi, R);
  }
  return acc * u * p;
}

double LevyComponent::second_moment(double eps, double u) const {
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    double acc = 0.0, q = std::pow(d->decay, 2.0 - d->alpha);
    double coef = 2.0 * d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);
    for (long k = 1; k < 100000; ++k) {
      double rho = atom_rho(d->decay, k);
      double rk = std::pow(pruitt_h(rho), -1.0 / (1.0 - eps));
      double dur = u - rk;
      if (dur <= 0.0) continue;
      double wk = coef * std::pow(rho, -d->alpha);
      acc += wk * rho * rho * dur;
      double bound = wk * rho * rho * u * q / (1.0 - q);
      if (k > 4 && bound < 1e-15 * (acc + 1e-300)) break;
    }
    return acc;
  }
  static const Quadrature vq = make_graded_rule(0.0, 1.0, 18, 0.3, 8);
  const double p = 1.0 / (1.0 - eps);
  double acc = 0.0;
  for (size_t i = 0; i < vq.size(); ++i) {
    double v = vq.x[i];
    double r = u * std::pow(v, p);
    double R = h_inverse(std::pow(r, eps - 1.0));
    acc += vq.w[i] * std::pow(v, eps * p) * 2.0 * x2_mass(R);
  }
  return acc * u * p;
}

double LevyComponent::generator_apply(const std::function<double(double)>& f, double w,
                                      double R) const {
  auto second_diff = [&](double z) {
    double v = f(w + z) + f(w - z) - 2.0 * f(w);
    if (!std::isfinite(v)) throw NumericsError("generator_apply: non-finite f value");
    return v;
  };
  const double z0 = 1e-4 * R;
  double acc = 0.0;
  if (const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_)) {
    double coef = d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);  // w_k/2
    for (long k = 1; k < 100000; ++k) {
      double rho = atom_rho(d->decay, k);
      if (rho > R) continue;
      if (rho < z0) break;
      acc += coef * std::pow(rho, -d->alpha) * second_diff(rho);
    }
  } else {
    auto nu = [&](double z) {
      if (const auto* s = std::get_if<StableMeasure>(&measure_))
        return s->c * std::pow(z, -1.0 - s->alpha);
      return std::get<CustomMeasure>(measure_).density(z);
    };
    double hi = R;
    while (hi > z0) {
      double lo = std::max(z0, hi * 0.5);
      acc += gauss_panel([&](double z) { return second_diff(z) * nu(z); }, lo, hi, 16);
      hi = lo;
    }
  }
  // innermost panel: replace the second difference by f''(w) z^2
  double hfd = std::max(z0, 1e-7 * (1.0 + std::abs(w)));
  double fpp = (f(w + hfd) + f(w - hfd) - 2.0 * f(w)) / (hfd * hfd);
  acc += fpp * x2_mass(z0);
  return acc;
}

double LevyComponent::density(double x) const {
  if (const auto* s = std::get_if<StableMeasure>(&measure_))
    return s->c * std::pow(std::abs(x), -1.0 - s->alpha);
  if (const auto* cm = std::get_if<CustomMeasure>(&measure_))
    return cm->density(std::abs(x));
  throw NumericsError("density: atomic measure has no density");
}

std::vector<std::pair<double, double>> LevyComponent::atoms_above(double rmin) const {
  const auto* d = std::get_if<DiscretizedStableMeasure>(&measure_);
  if (!d) throw NumericsError("atoms_above: not an atomic measure");
  std::vector<std::pair<double, double>> out;
  double coef = 2.0 * d->c / d->alpha * (std::pow(d->decay, -d->alpha) - 1.0);
  for (long k = 1; k < 1000000; ++k) {
    double rho = atom_rho(d->decay, k);
    if (rho < rmin) break;
    out.emplace_back(rho, coef * std::pow(rho, -d->alpha));
  }
  return out;
}

WscReport LevyComponent::check_wsc(const std::vector<double>& r_grid,
                                   const std::vector<double>& lambda_grid) const {
  WscReport rep;
  double min_a = std::numeric_limits<double>::infinity();
  double max_b = -std::numeric_limits<double>::infinity();
  const double a = scaling_.alpha_idx, b = scaling_.beta_idx;
  for (double r : r_grid) {
    double hr = pruitt_h(r);
    for (double l : lambda_grid) {
      double hlr = pruitt_h(l * r);
      min_a = std::min(min_a, hlr * std::pow(l, a) / hr);
      max_b = std::max(max_b, hlr * std::pow(l, b) / hr);
    }
  }
  rep.min_ratio_alpha = min_a;
  rep.max_ratio_beta = max_b;
  rep.h_pass = (min_a >= scaling_.C1 * (1.0 - 1e-9)) && (max_b <= scaling_.C2 * (1.0 + 1e-9));

  double cK = std::pow(2.0 / scaling_.C1, 2.0 / a) - 1.0;
  double C1s = scaling_.C1 / (8.0 * cK), C2s = 8.0 * cK * scaling_.C2;
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = -std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    double xi = 1.0 / r;  // >= 1 for r in (0,1]
    double pxi = psi(xi);
    for (double l : lambda_grid) {
      double lam = 1.0 / l;  // >= 1
      double plxi = psi(lam * xi);
      pmin = std::min(pmin, plxi / (std::pow(lam, a) * pxi));
      pmax = std::max(pmax, plxi / (std::pow(lam, b) * pxi));
    }
  }
  rep.psi_min_ratio_alpha = pmin;
  rep.psi_max_ratio_beta = pmax;
  rep.psi_pass = (pmin >= C1s * (1.0 - 1e-9)) && (pmax <= C2s * (1.0 + 1e-9));
  return rep;
}

DiscreteBand discretized_stable_band(double alpha, double c, double decay) {
  // brute-force atom sum for h, min of r^alpha h(r) over a dense log grid
  double coef = 2.0 * c / alpha * (std::pow(decay, -alpha) - 1.0);
  auto h_direct = [&](double r) {
    double acc = 0.0;
    for (long k = 1; k < 100000; ++k) {
      double rho = std::pow(decay, (double)k);
      double wk = coef * std::pow(rho, -alpha);
      double t = std::min(1.0, rho * rho / (r * r));
      acc += wk * t;
      if (rho < r && rho * rho / (r * r) * wk < 1e-15 * acc) break;
    }
    return acc;
  };
  DiscreteBand band;
  band.B2 = std::pow(decay, -2.0) * 4.0 * c / (alpha * (2.0 - alpha));
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 600; ++i) {
    double r = std::pow(10.0, -3.0 + 3.0 * i / 600.0);
    mn = std::min(mn, std::pow(r, alpha) * h_direct(r));
  }
  band.B1 = mn * (1.0 - 1e-9);
  return band;
}

}  // namespace levyparam
