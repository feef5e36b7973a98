#include "levyparam/density1d.hpp"

#include <algorithm>
#include <cmath>

namespace levyparam {

namespace {
constexpr double kTailTol = 1e-12;
constexpr size_t kMaxNodes = 8 * 1000 * 1000;
}  // namespace

Density1D::Density1D(const LevyComponent& comp, double u, double eps, double wmax)
    : comp_(&comp), u_(u), eps_(eps) {
  if (!(u > 0.0)) throw std::invalid_argument("Density1D: u <= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("Density1D: eps not in (0,1)");
  R_ = comp.truncation_radius(eps, u);

  // frequency cutoff: u psi_low(Z) - (2/eps) u^eps = log(1/tol)
  double target = std::log(1.0 / kTailTol) + 2.0 / eps_ * std::pow(u_, eps_);
  auto deficit = [&](double z) { return u_ * comp.psi_lower_bound(z, 1.0) - target; };
  double zhi = std::max(4.0, 2.0 / R_);
  int guard = 0;
  while (deficit(zhi) < 0.0) {
    zhi *= 4.0;
    if (++guard > 300) throw NumericsError("Density1D: cutoff search failure");
  }
  double zlo = zhi / 4.0;
  for (int it = 0; it < 100; ++it) {
    double mid = std::sqrt(zlo * zhi);
    (deficit(mid) < 0.0 ? zlo : zhi) = mid;
  }
  // margin for the z^2-weighted (second derivative) transforms
  Z_ = zhi * (1.0 + 2.0 * std::log1p(zhi) / target);

  batches_.resize(wmax > 48.0 * R_ ? 3 : 2);
  build_batch(batches_[0], 6.0 * R_);
  build_batch(batches_[1], 48.0 * R_);
  if (batches_.size() > 2) build_batch(batches_[2], wmax);
}

void Density1D::build_batch(Batch& b, double w_ref) const {
  b.w_ref = w_ref;
  // Panel width is set by the oscillation of cos(w z): 32-point Gauss is
  // exact to ~1e-18 for a per-panel phase of 8 pi. A second cap keeps the
  // smooth exp(-Phi) profile resolved when there is little oscillation:
  // Phi climbs by ~target over [0, Z], so ~3*target panels track the decay.
  const double target = std::log(1.0 / kTailTol) + 2.0 / eps_ * std::pow(u_, eps_);
  const double h_osc = w_ref > 0.0 ? 8.0 * M_PI / w_ref : Z_;
  const double width = std::min(h_osc, Z_ / (3.0 * target));
  size_t np = (size_t)std::ceil(Z_ / width);
  if ((np + 8) * 32 > kMaxNodes) throw NumericsError("Density1D: node budget exceeded");
  // geometric refinement of the first panel toward z = 0 (z^alpha corner)
  std::vector<double> edges;
  double h0 = Z_ / (double)np;
  for (int j = 8; j >= 0; --j) edges.push_back(h0 * std::pow(2.0, -(double)j) * 0.5);
  edges.insert(edges.begin(), 0.0);
  edges.back() = h0;
  for (size_t p = 2; p <= np; ++p) edges.push_back(h0 * (double)p);
  edges.back() = Z_;
  const GaussRule& gr = gauss_legendre(32);
  size_t n = (edges.size() - 1) * 32;
  b.z.reserve(n);
  b.wt.reserve(n);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    double c = 0.5 * (edges[p] + edges[p + 1]), hh = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < 32; ++i) {
      b.z.push_back(c + hh * gr.x[i]);
      b.wt.push_back(hh * gr.w[i]);
    }
  }
  b.E.resize(b.z.size());
  b.Et.resize(b.z.size());
  b.psiu.resize(b.z.size());
  for (size_t i = 0; i < b.z.size(); ++i) {
    double z = b.z[i];
    double phi = comp_->integrated_exponent(eps_, u_, z);
    b.E[i] = std::exp(-phi);
    b.Et[i] = std::exp(-u_ * comp_->psi(z));
    b.psiu[i] = comp_->psi_truncated(z, R_);
  }
}

const Density1D::Batch& Density1D::batch_for(double w) const {
  double aw = std::abs(w);
  for (const Batch& b : batches_)
    if (aw <= b.w_ref) return b;
  return batches_.back();
}

double Density1D::g(double w, int deriv) const {
  const Batch& b = batch_for(w);
  double aw = std::abs(w), s = 0.0;
  switch (deriv) {
    case 0:
      for (size_t i = 0; i < b.z.size(); ++i) s += b.wt[i] * std::cos(aw * b.z[i]) * b.E[i];
      return s / M_PI;
    case 1: {
      for (size_t i = 0; i < b.z.size(); ++i)
        s -= b.wt[i] * b.z[i] * std::sin(aw * b.z[i]) * b.E[i];
      double v = s / M_PI;
      return w < 0.0 ? -v : v;  // odd
    }
    case 2:
      for (size_t i = 0; i < b.z.size(); ++i)
        s -= b.wt[i] * b.z[i] * b.z[i] * std::cos(aw * b.z[i]) * b.E[i];
      return s / M_PI;
    default:
      throw std::invalid_argument("Density1D::g: deriv must be 0, 1 or 2");
  }
}

double Density1D::g_du(double w) const {
  const Batch& b = batch_for(w);
  double aw = std::abs(w), s = 0.0;
  for (size_t i = 0; i < b.z.size(); ++i)
    s -= b.wt[i] * std::cos(aw * b.z[i]) * b.psiu[i] * b.E[i];
  return s / M_PI;
}

double Density1D::gtilde(double w, int deriv) const {
  const Batch& b = batch_for(w);
  double aw = std::abs(w), s = 0.0;
  switch (deriv) {
    case 0:
      for (size_t i = 0; i < b.z.size(); ++i) s += b.wt[i] * std::cos(aw * b.z[i]) * b.Et[i];
      return s / M_PI;
    case 1: {
      for (size_t i = 0; i < b.z.size(); ++i)
        s -= b.wt[i] * b.z[i] * std::sin(aw * b.z[i]) * b.Et[i];
      double v = s / M_PI;
      return w < 0.0 ? -v : v;
    }
    case 2:
      for (size_t i = 0; i < b.z.size(); ++i)
        s -= b.wt[i] * b.z[i] * b.z[i] * std::cos(aw * b.z[i]) * b.Et[i];
      return s / M_PI;
    default:
      throw std::invalid_argument("Density1D::gtilde: deriv must be 0, 1 or 2");
  }
}

double Density1D::psi_u(double xi) const { return comp_->psi_truncated(xi, R_); }

double Density1D::integrated_exponent(double xi) const {
  return comp_->integrated_exponent(eps_, u_, xi);
}

double Density1D::m_u() const { return comp_->second_moment(eps_, u_); }

double Density1D::generator_apply(const std::function<double(double)>& f, double w) const {
  return comp_->generator_apply(f, w, R_);
}

double Density1D::generator_g(double w) const {
  return generator_apply([this](double x) { return g(x); }, w);
}

double Density1D::radius_roundtrip_defect() const {
  return std::abs(comp_->pruitt_h(R_) * std::pow(u_, 1.0 - eps_) - 1.0);
}

}  // namespace levyparam
