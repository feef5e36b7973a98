#pragma once

#include <vector>

#include "levyparam/levy_component.hpp"

namespace levyparam {

/// Truncated density g_u (Fourier inversion of exp(-int_0^u psi_r dr)) and
/// the full density gtilde_u (inversion of exp(-u psi)) for one component.
///
/// The frequency cutoff Z solves u*psi_lower(Z) - (2/eps) u^eps = log(1/tol)
/// with tol = 1e-12, so the dropped tail of the integrand stays below the
/// quadrature error. Composite Gauss panels (32 nodes) have their width set
/// by the oscillation of cos(w z): phase at most 8 pi per panel for the
/// largest |w| served by the batch.
///
/// Immutable after construction; evaluations are const and thread-safe.
class Density1D {
 public:
  Density1D(const LevyComponent& comp, double u, double eps, double wmax = 0.0);

  const LevyComponent& component() const { return *comp_; }
  double u() const { return u_; }
  double eps() const { return eps_; }
  double R() const { return R_; }

  /// g_u(w), or its first/second derivative in w (deriv in {0,1,2}).
  double g(double w, int deriv = 0) const;
  /// d/du g_u(w) via the Fourier representation (weight -psi_u(z)).
  double g_du(double w) const;
  /// Full (untruncated) density gtilde_u(w) and derivatives.
  double gtilde(double w, int deriv = 0) const;
  /// Truncated exponent psi_u(xi) at this horizon's radius R_u.
  double psi_u(double xi) const;
  /// int_0^u psi_r(xi) dr.
  double integrated_exponent(double xi) const;
  /// Second moment m_u of nu_u.
  double m_u() const;
  /// K_u f (w): principal-value generator with radius R_u.
  double generator_apply(const std::function<double(double)>& f, double w) const;
  /// K_u g_u(w).
  double generator_g(double w) const;

  /// Round-trip defect |h(R_u) u^{1-eps} - 1| (construction invariant).
  double radius_roundtrip_defect() const;

 private:
  struct Batch {
    double w_ref;                  // largest |w| this batch serves
    std::vector<double> z, wt;     // nodes and weights on [0, Z]
    std::vector<double> E;         // exp(-Phi_u(z))
    std::vector<double> Et;        // exp(-u psi(z))
    std::vector<double> psiu;      // psi_u(z)
  };
  void build_batch(Batch& b, double w_ref) const;
  const Batch& batch_for(double w) const;

  const LevyComponent* comp_;
  double u_, eps_, R_, Z_;
  std::vector<Batch> batches_;
};

}  // namespace levyparam
