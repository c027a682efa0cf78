#include "phasespace/functionals.hpp"

#include <cmath>

namespace phasespace {

namespace {

constexpr double kZeroLog = 1e-300;  // below this, 0 ln 0 := 0

double l1_mass(const RealField2D& f) {
  KahanSum s;
  for (double v : f.values()) s.add(std::abs(v));
  return s.value() * f.grid().cell_area();
}

}  // namespace

NormalizedMeasure mu_of(const WignerField& w) {
  const double l1 = l1_mass(w.field());
  if (l1 < 1.0 - 1e-4)
    throw std::invalid_argument("mu_of: ||W||_1 < 1; the field is numerically broken");
  RealField2D mu(w.grid());
  for (size_t i = 0; i < mu.values().size(); ++i)
    mu.values()[i] = std::abs(w.field().values()[i]) / l1;
  return NormalizedMeasure{std::move(mu), l1};
}

AuxiliaryMeasure nu_of(const WignerField& w) {
  NormalizedMeasure m = mu_of(w);
  const double scale = M_PI * w.hbar();
  RealField2D nu(std::move(m.mu));
  double sup = 0.0;
  for (double& v : nu.values()) {
    v *= scale;
    sup = std::max(sup, v);
  }
  if (sup > 1.0 + 1e-4)
    throw resolution_error("nu_of: pointwise nu > 1 violates the sup/L1 bounds");
  return AuxiliaryMeasure{std::move(nu)};
}

double purity(const WignerField& w) {
  const double l2 = lq_norm(w.field(), 2.0);
  return 2.0 * M_PI * w.hbar() * l2 * l2;
}

namespace {

double entropy_of(std::span<const double> v, double cell, double inv_scale) {
  // -sum (v/s) ln(v/s) * cell with s folded in by the caller via inv_scale
  KahanSum acc;
  for (double x : v) {
    const double m = std::abs(x) * inv_scale;
    if (m > kZeroLog) acc.add(m * std::log(m));
  }
  return -acc.value() * cell;
}

}  // namespace

double wigner_entropy(const WignerField& w) {
  const double l1 = l1_mass(w.field());
  if (l1 < 1.0 - 1e-4)
    throw std::invalid_argument("wigner_entropy: ||W||_1 < 1; field numerically broken");
  return entropy_of(w.field().values(), w.grid().cell_area(), 1.0 / l1);
}

double measure_entropy(const RealField2D& v) {
  for (double x : v.values())
    if (!std::isfinite(x) || x < 0.0)
      throw std::invalid_argument("measure_entropy: density must be finite and nonnegative");
  return entropy_of(v.values(), v.grid().cell_area(), 1.0);
}

double renyi_entropy(const WignerField& w, double alpha) {
  if (!(alpha > 1.0))
    throw std::domain_error("renyi_entropy: alpha must be > 1 (alpha -> 1 is wigner_entropy)");
  NormalizedMeasure m = mu_of(w);
  if (alpha == kInf) return -std::log(max_abs(m.mu));
  return alpha / (1.0 - alpha) * std::log(lq_norm(m.mu, alpha));
}

double lieb_ambiguity_entropy(const AmbiguityField& a) {
  const double l2 = lq_norm(a.field(), 2.0);
  if (std::abs(l2 - 1.0) > 1e-4)
    throw std::invalid_argument("lieb_ambiguity_entropy: ||A||_2 must be 1 (unit-norm f, g)");
  KahanSum acc;
  for (const complex& v : a.field().values()) {
    const double m = std::norm(v);
    if (m > kZeroLog) acc.add(m * std::log(m));
  }
  return -acc.value() * a.grid().cell_area();
}

double j_functional(const WignerField& w, double q) {
  if (std::isnan(q) || q < 1.0) throw std::domain_error("j_functional: q must be >= 1");
  AuxiliaryMeasure nu = nu_of(w);
  if (q == kInf) return max_abs(nu.nu);
  return std::pow(lq_norm(nu.nu, q), q);
}

double k_epsilon(const WignerField& w, double eps) {
  const double sigma = eps + eps * eps;
  if (!(eps > 0.0) || !(sigma < 1.0))
    throw std::domain_error("k_epsilon: need eps > 0 with eps + eps^2 < 1");
  return (j_functional(w, 1.0) - j_functional(w, 1.0 + sigma)) / sigma;
}

double xi(double theta, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("xi: alpha must lie in (1, 2)");
  if (!(theta > 2.0 - alpha && theta < 1.0))
    throw std::domain_error("xi: theta must lie in (2 - alpha, 1)");
  return (1.0 - theta) / (1.0 - alpha) * std::log((1.0 - theta) / (alpha - theta));
}

WignerField symplectic_pullback(const WignerField& w, const SymplecticMap& s) {
  const SymplecticMap inv = s.inverse();
  const GridSpec2D& g = w.grid();
  const double dx = g.x.spacing(), dp = g.p.spacing();
  RealField2D out(g);
  const int nx = g.x.size(), np = g.p.size();
  auto sample = [&](int i, int j) -> double {
    if (i < 0 || i >= nx || j < 0 || j >= np) return 0.0;
    return w.field().at(i, j);
  };
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) {
      const auto z = inv.apply(g.x.point(i), g.p.point(j));
      const double gi = (z[0] - g.x.min()) / dx;
      const double gj = (z[1] - g.p.min()) / dp;
      const int i0 = static_cast<int>(std::floor(gi));
      const int j0 = static_cast<int>(std::floor(gj));
      const double fi = gi - i0, fj = gj - j0;
      out.at(i, j) = sample(i0, j0) * (1 - fi) * (1 - fj) +
                     sample(i0 + 1, j0) * fi * (1 - fj) +
                     sample(i0, j0 + 1) * (1 - fi) * fj +
                     sample(i0 + 1, j0 + 1) * fi * fj;
    }
  }
  return WignerField(std::move(out), w.hbar(), w.source() + "|pullback");
}

double wigner_entropy(const ProductState& p) {
  if (p.factors.empty()) throw std::invalid_argument("ProductState: no factors");
  KahanSum s;
  for (const WignerField& f : p.factors) s.add(wigner_entropy(f));
  return s.value();
}

double renyi_entropy(const ProductState& p, double alpha) {
  if (p.factors.empty()) throw std::invalid_argument("ProductState: no factors");
  KahanSum s;
  for (const WignerField& f : p.factors) s.add(renyi_entropy(f, alpha));
  return s.value();
}

}  // namespace phasespace
