#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "levyparam/gauss.hpp"

namespace levyparam {

struct NumericsError : std::runtime_error {
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// Symmetric alpha-stable measure nu(dx) = c |x|^{-1-alpha} dx.
struct StableMeasure {
  double alpha;
  double c;
};

/// Atoms at +-rho_k, rho_k = decay^k (k >= 1), each carrying half the mass of
/// the stable annulus (rho_{k+1}, rho_k].
struct DiscretizedStableMeasure {
  double alpha;
  double c;
  double decay;
};

/// User-supplied symmetric measure: one-sided density on (0,inf) and the
/// analytic one-sided tail nu([r,inf)). Tails are never differentiated here.
struct CustomMeasure {
  std::function<double(double)> density;
  std::function<double(double)> tail_mass;
};

using MeasureVariant = std::variant<StableMeasure, DiscretizedStableMeasure, CustomMeasure>;

/// Empirical weak-scaling report, see check_wsc().
struct WscReport {
  double min_ratio_alpha = 0.0;  // min over grid of h(lr) l^alpha / h(r)
  double max_ratio_beta = 0.0;   // max over grid of h(lr) l^beta / h(r)
  bool h_pass = false;
  double psi_min_ratio_alpha = 0.0;  // min of psi(l xi) / (l^alpha psi(xi))
  double psi_max_ratio_beta = 0.0;   // max of psi(l xi) / (l^beta psi(xi))
  bool psi_pass = false;
  bool pass() const { return h_pass && psi_pass; }
};

/// One coordinate of the driving noise: the measure together with its
/// exponent psi, Pruitt function h, companion K, and declared scaling data.
///
/// All one-sided primitives (tail_mass, x2_mass, density) refer to the
/// restriction of nu to (0,inf); symmetric quantities double them.
class LevyComponent {
 public:
  struct Scaling {
    double alpha_idx;
    double beta_idx;
    double C1;
    double C2;
  };

  LevyComponent(MeasureVariant measure, Scaling scaling);

  /// Stable component with exact scaling (C1=C2=1, alpha=beta).
  static LevyComponent stable(double alpha, double c);
  /// Stable component normalized so that psi(xi) = |xi|^alpha.
  static LevyComponent stable_normalized(double alpha);
  static LevyComponent discretized_stable(double alpha, double c, double decay);
  static LevyComponent custom(std::function<double(double)> density,
                              std::function<double(double)> tail_mass, Scaling scaling);

  const MeasureVariant& measure() const { return measure_; }
  const Scaling& scaling() const { return scaling_; }
  double alpha_idx() const { return scaling_.alpha_idx; }
  double beta_idx() const { return scaling_.beta_idx; }
  double h_at_1() const { return h_at_1_; }
  double h_inv_at_1() const { return h_inv_at_1_; }
  bool is_stable() const { return std::holds_alternative<StableMeasure>(measure_); }
  bool is_discretized() const {
    return std::holds_alternative<DiscretizedStableMeasure>(measure_);
  }

  /// nu([r, inf)), one-sided.
  double tail_mass(double r) const;
  /// int_{0 < x <= r} x^2 nu(dx), one-sided.
  double x2_mass(double r) const;

  /// Pruitt function h(r) = int (1 ^ x^2/r^2) nu(dx), both sides.
  double pruitt_h(double r) const;
  /// K(r) = int_{|x|<=r} x^2 r^{-2} nu(dx), both sides.
  double pruitt_K(double r) const;
  /// Monotone bisection on log r. Round-trip relative error <= 1e-10.
  double h_inverse(double s) const;

  /// Characteristic exponent psi(xi) = int (1 - cos(xi x)) nu(dx).
  double psi(double xi) const;
  /// Truncated exponent with radius R: int_{|x|<=R} (1 - cos(xi x)) nu(dx).
  double psi_truncated(double xi, double R) const;

  /// Lower sandwich of Lemma-type h/psi comparison at reference xi0:
  /// psi(xi) >= h(1/|xi|) / (4 cK (1 v xi0^{-2})) for |xi| >= xi0, with
  /// cK = (2/C1)^{2/alpha} - 1. For stable measures psi itself is returned
  /// (it is exact and monotone, so it is the tightest valid lower bound).
  double psi_lower_bound(double xi, double xi0 = 1.0) const;
  /// psi(xi) <= 2 h(1/|xi|).
  double psi_upper_bound(double xi) const;

  /// Truncation radius R_u = h^{-1}(u^{eps-1}).
  double truncation_radius(double eps, double u) const;

  /// int_0^u psi_r(xi) dr with R_r = h^{-1}(r^{eps-1}). Uses the substitution
  /// r = u v^{1/(1-eps)} and 64-point Gauss in v.
  double integrated_exponent(double eps, double u, double xi) const;

  /// int_0^u 2 x2_mass(R_r) dr: second moment of the space-time truncated
  /// measure nu_u. Same substitution as integrated_exponent.
  double second_moment(double eps, double u) const;

  /// P.V. int_{|z|<=R} (f(w+z) - f(w)) nu(dz) by +-z symmetrization; the
  /// innermost panel (z < 1e-4 R) is replaced by f''(w) * x2-mass.
  double generator_apply(const std::function<double(double)>& f, double w, double R) const;

  /// One-sided density nu(x) for continuum measures; throws for atomic ones.
  double density(double x) const;

  /// Atoms (rho_k, pair mass w_k) with rho_k >= rmin, ordered decreasing.
  std::vector<std::pair<double, double>> atoms_above(double rmin) const;

  WscReport check_wsc(const std::vector<double>& r_grid,
                      const std::vector<double>& lambda_grid) const;

 private:
  MeasureVariant measure_;
  Scaling scaling_;
  double h_at_1_ = 0.0;
  double h_inv_at_1_ = 0.0;
  double psi_coeff_ = 0.0;  // stable: psi(xi) = psi_coeff * |xi|^alpha

  // stable helpers: J(y) = int_y^inf (1-cos v) v^{-1-alpha} dv
  double stable_J(double y) const;
  void build_stable_tables();
  std::vector<double> J_y_, J_val_;
  double J_ymax_ = 0.0, J_dy_ = 0.0;

  double psi_custom(double xi, double R) const;  // R = inf for full
};

/// h(lambda r) band constants for the discretized measure on r in (0,1],
/// computed by direct atom summation (brute-force oracle).
struct DiscreteBand {
  double B1;
  double B2;
};
DiscreteBand discretized_stable_band(double alpha, double c, double decay);

}  // namespace levyparam
