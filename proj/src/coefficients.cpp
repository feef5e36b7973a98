#include "levyparam/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace levyparam {

namespace {

Eigen::VectorXd zero_U(double, const Eigen::VectorXd&, const Eigen::VectorXd& z) {
  return Eigen::VectorXd::Zero(z.size());
}

double op_norm(const Eigen::MatrixXd& m) {
  return m.jacobiSvd().singularValues()(0);
}

}  // namespace

CoefficientField make_constant_field(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("constant field: square matrix");
  double det = std::abs(A.determinant());
  if (det <= 0.0) throw std::invalid_argument("constant field: singular matrix");
  CoefficientField f;
  Eigen::MatrixXd Ac = A;
  f.A = [Ac](double, const Eigen::VectorXd&) { return Ac; };
  f.U = zero_U;
  f.C3 = A.cwiseAbs().maxCoeff();
  f.C4 = det;
  f.name = "constant";
  return f;
}

CoefficientField make_rotation_field(double angle_deg) {
  double th = angle_deg * M_PI / 180.0;
  Eigen::MatrixXd R(2, 2);
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CoefficientField f = make_constant_field(R);
  f.name = "rotation";
  return f;
}

CoefficientField make_rotation_angle_field(double theta_amp) {
  CoefficientField f;
  f.A = [theta_amp](double, const Eigen::VectorXd& x) {
    double th = theta_amp * std::sin(x.sum());
    Eigen::MatrixXd R(2, 2);
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return R;
  };
  f.U = zero_U;
  f.C3 = 1.0;
  f.C4 = 1.0;
  f.C5 = theta_amp * std::sqrt(2.0);
  f.gamma1 = 1.0;
  f.space_dependent = true;
  f.name = "rotation_field";
  return f;
}

CoefficientField make_identity_perturbation_field(double amp, int d) {
  if (!(amp >= 0.0 && amp < 1.0)) throw std::invalid_argument("identity_perturb: amp in [0,1)");
  if (d != 1 && d != 2) throw std::invalid_argument("identity_perturb: d must be 1 or 2");
  CoefficientField f;
  if (d == 2) {
    f.A = [amp](double, const Eigen::VectorXd& x) {
      double s = amp * std::sin(x.sum());
      Eigen::MatrixXd A(2, 2);
      A << 1.0, s, -s, 1.0;  // det = 1 + s^2 >= 1
      return A;
    };
    f.C4 = 1.0;
  } else {
    f.A = [amp](double, const Eigen::VectorXd& x) {
      Eigen::MatrixXd A(1, 1);
      A(0, 0) = 1.0 + amp * std::sin(x.sum());
      return A;
    };
    f.C4 = 1.0 - amp;
  }
  f.U = zero_U;
  f.C3 = 1.0 + amp;
  f.C5 = amp * std::sqrt((double)d);
  f.gamma1 = 1.0;
  f.space_dependent = true;
  f.name = "identity_perturb";
  return f;
}

CoefficientField make_time_matrix_field(double gamma, double t_max) {
  if (!(gamma > 0.0)) throw std::invalid_argument("time_matrix: gamma > 0");
  if (!(t_max > 0.0 && t_max < 1.0)) throw std::invalid_argument("time_matrix: t_max in (0,1)");
  CoefficientField f;
  f.A = [gamma](double t, const Eigen::VectorXd&) {
    double tg = std::pow(std::max(t, 0.0), gamma);
    Eigen::MatrixXd A(2, 2);
    A << 1.0, tg, tg, 1.0;
    return A;
  };
  f.U = zero_U;
  f.C3 = 1.0;
  f.C4 = 1.0 - std::pow(t_max, 2.0 * gamma);
  f.C6 = 1.0;  // |t^g - s^g| <= |t - s|^g
  f.gamma2 = std::min(gamma, 1.0);
  f.time_dependent = true;
  f.name = "time_matrix";
  return f;
}

double lipschitz_C8_bound(double rho, int d) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("C8 bound: rho in [0,1)");
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  return fact / std::pow(1.0 - rho, d);
}

ANormReport A_operator_norm(const CoefficientField& field, const std::vector<double>& t_grid,
                            const std::vector<Eigen::VectorXd>& x_grid) {
  if (t_grid.empty() || x_grid.empty())
    throw std::invalid_argument("A_operator_norm: empty grid");
  ANormReport rep;
  const int d = (int)x_grid.front().size();
  for (double t : t_grid) {
    std::vector<Eigen::MatrixXd> At, Ait;
    for (const auto& x : x_grid) {
      Eigen::MatrixXd A = field.A(t, x);
      At.push_back(A.transpose());
      Ait.push_back(A.transpose().inverse());
      rep.sup_A = std::max(rep.sup_A, op_norm(At.back()));
      rep.sup_Ainv = std::max(rep.sup_Ainv, op_norm(field.A(t, x).inverse()));
    }
    for (size_t i = 0; i < x_grid.size(); ++i) {
      for (size_t j = i + 1; j < x_grid.size(); ++j) {
        double dist = (x_grid[i] - x_grid[j]).norm();
        if (dist < 1e-12) continue;
        double den = std::pow(dist, field.gamma1);
        rep.holder_x = std::max(rep.holder_x, op_norm(At[i] - At[j]) / den);
        rep.holder_x_inv = std::max(rep.holder_x_inv, op_norm(Ait[i] - Ait[j]) / den);
      }
    }
  }
  for (size_t a = 0; a < t_grid.size(); ++a) {
    for (size_t b = a + 1; b < t_grid.size(); ++b) {
      double dt = std::abs(t_grid[b] - t_grid[a]);
      if (dt < 1e-12) continue;
      double den = std::pow(dt, field.gamma2);
      for (const auto& x : x_grid) {
        Eigen::MatrixXd d1 = field.A(t_grid[a], x).transpose().inverse() -
                             field.A(t_grid[b], x).transpose().inverse();
        rep.holder_t = std::max(rep.holder_t, op_norm(d1) / den);
      }
    }
  }
  rep.empirical = std::max({rep.sup_A, rep.sup_Ainv, rep.holder_x, rep.holder_x_inv,
                            rep.holder_t, 1.0});
  double C3 = field.C3, C4 = field.C4, C5 = field.C5, C6 = field.C6;
  double dd = (double)d;
  rep.closed_form_bound = (C3 + C5 + C6) * dd + std::pow(C3, dd - 1.0) / C4 * dd +
                          (C5 + C6) * std::pow(C3, dd - 1.0) / C4 * dd * dd;
  return rep;
}

}  // namespace levyparam
