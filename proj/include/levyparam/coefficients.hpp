#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace levyparam {

/// Jump coefficient pair (A_t(x), U_t(x,z)) together with the declared
/// regularity data: |a_ij| <= C3, |det A| >= C4, Holder-in-x constant C5
/// (exponent gamma1), Holder-in-t constant C6 (exponent gamma2) and the
/// nonlinearity bound |U_t(x,z)| <= C7 |z|^gamma3.
///
/// The built-in fields supply their constants analytically; estimation
/// noise must not gate admissibility.
struct CoefficientField {
  std::function<Eigen::MatrixXd(double, const Eigen::VectorXd&)> A;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&, const Eigen::VectorXd&)> U;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = std::numeric_limits<double>::infinity();  // U == 0
  double C3 = 1.0, C4 = 1.0, C5 = 0.0, C6 = 0.0, C7 = 0.0;
  bool time_dependent = false;
  bool space_dependent = false;
  std::string name = "custom";

  bool has_U() const { return C7 > 0.0; }
};

/// Constant matrix field. gamma1 = gamma2 = 1 with zero Holder constants.
CoefficientField make_constant_field(const Eigen::MatrixXd& A);

/// Constant planar rotation by angle_deg degrees (d = 2).
CoefficientField make_rotation_field(double angle_deg);

/// x-dependent planar rotation A(x) = R(theta_amp * sin(x_1 + ... + x_d)),
/// d = 2. Lipschitz in x with C5 = theta_amp * sqrt(d), gamma1 = 1.
CoefficientField make_rotation_angle_field(double theta_amp);

/// A(x) = I + amp * sin(x_1 + ... + x_d) * W with W skew (d = 2) or W = 1
/// (d = 1); det A >= 1 for d = 2, >= 1 - amp for d = 1.
CoefficientField make_identity_perturbation_field(double amp, int d);

/// Time matrix [[1, t^gamma], [t^gamma, 1]] of the different-index example;
/// valid on t in [0, t_max] with t_max < 1 so that det stays positive.
CoefficientField make_time_matrix_field(double gamma, double t_max = 0.75);

/// C8 = d! / (1 - rho)^d: the L1 operator-norm bound available when
/// x -> V_t(x,z) is a uniform rho-Lipschitz contraction perturbation.
double lipschitz_C8_bound(double rho, int d);

/// Empirical ||A||: max of the five suprema (two operator norms, two
/// Holder-in-x quotients, one Holder-in-t quotient) over the sample grid.
struct ANormReport {
  double empirical = 0.0;
  double closed_form_bound = 0.0;
  double sup_A = 0.0, sup_Ainv = 0.0;
  double holder_x = 0.0, holder_x_inv = 0.0, holder_t = 0.0;
};
ANormReport A_operator_norm(const CoefficientField& field,
                            const std::vector<double>& t_grid,
                            const std::vector<Eigen::VectorXd>& x_grid);

}  // namespace levyparam
