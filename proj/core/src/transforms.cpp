#include "phasespace/transforms.hpp"

#include <cmath>

#include "phasespace/fft.hpp"

namespace phasespace {

namespace {

constexpr double kNormalizationGate = 1e-3;  // aliasing detector
constexpr double kSupSlack = 1e-6;
constexpr double kImagDust = 1e-9;

void require_transform_grid(const GridSpec1D& g) {
  if (!g.symmetric_about_zero())
    throw std::invalid_argument("transforms: position grid must be symmetric about 0");
  if (g.size() < 8) throw resolution_error("transforms: grid too small");
}

void require_shared_grid(const Ket& f, const Ket& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("transforms: kets must share one grid");
  if (f.hbar() != g.hbar())
    throw std::invalid_argument("transforms: kets must share hbar");
}

// Correlation row C[m] = F[2j + m - n] conj(G[2j - m + n]) on the fine
// lattice, i.e. f(x_j + y_m/2) conj(g(x_j - y_m/2)) with y_m = -2L + m dx.
void correlation_row(std::span<const complex> fine_f, std::span<const complex> fine_g,
                     int j, int n, std::span<complex> row) {
  const int two_n = 2 * n;
  for (int m = 0; m < two_n; ++m) {
    const int k1 = 2 * j + m - n;
    const int k2 = 2 * j - m + n;
    if (k1 < 0 || k1 >= two_n || k2 < 0 || k2 >= two_n) {
      row[m] = complex{0.0, 0.0};
    } else {
      row[m] = fine_f[k1] * std::conj(fine_g[k2]);
    }
  }
}

Field2D cross_wigner_impl(const Ket& f, const Ket& g, const GridSpec1D& p_axis) {
  require_shared_grid(f, g);
  require_transform_grid(f.grid());
  const GridSpec1D& xg = f.grid();
  const int n = xg.size();
  const double dx = xg.spacing();
  const double hbar = f.hbar();
  const double extent = -xg.min();

  const std::vector<complex> fine_f = fine_samples(f);
  const std::vector<complex> fine_g =
      (&f == &g) ? fine_f : fine_samples(g);

  // sum_m C[m] e^{-i y_m p_k / hbar}: beta = -2L, sigma = dx on the y side;
  // gamma = p_min/hbar, delta = dp/hbar on the momentum side.
  detail::Czt czt(2 * n, p_axis.size(), dx, p_axis.spacing() / hbar);
  const double beta = -2.0 * extent;
  const double gamma = p_axis.min() / hbar;
  const double pref = dx / (2.0 * M_PI * hbar);

  Field2D out(GridSpec2D{xg, p_axis});
  std::vector<complex> row(2 * n);
  std::vector<complex> spec(p_axis.size());
  for (int j = 0; j < n; ++j) {
    correlation_row(fine_f, fine_g, j, n, row);
    czt.apply(beta, gamma, row, spec);
    for (int k = 0; k < p_axis.size(); ++k) out.at(j, k) = pref * spec[k];
  }
  return out;
}

}  // namespace

std::vector<complex> fine_samples(const Ket& f) {
  const GridSpec1D& g = f.grid();
  if (f.sampler()) {
    const double h = 0.5 * g.spacing();
    std::vector<complex> out(2 * g.size());
    for (int k = 0; k < 2 * g.size(); ++k) out[k] = f.sampler()(g.min() + k * h);
    return out;
  }
  return detail::upsample2(f.values());
}

WignerField::WignerField(RealField2D field, double hbar, std::string source)
    : field_(std::move(field)), hbar_(hbar), source_(std::move(source)) {
  normalization_ = integrate(field_);
  if (std::abs(normalization_ - 1.0) > kNormalizationGate)
    throw resolution_error("WignerField(" + source_ + "): normalization off by " +
                           std::to_string(std::abs(normalization_ - 1.0)) +
                           "; grid too coarse or momentum window too small");
  const double sup = max_abs(field_);
  if (sup > (1.0 + kSupSlack) / (M_PI * hbar_))
    throw resolution_error("WignerField(" + source_ + "): sup norm exceeds (pi hbar)^-1");
}

AmbiguityField::AmbiguityField(Field2D field, double norm_bound)
    : field_(std::move(field)) {
  if (max_abs(field_) > norm_bound * (1.0 + kSupSlack))
    throw resolution_error("AmbiguityField: sup exceeds ||f||_2 ||g||_2");
}

WignerField wigner_pure(const Ket& f) { return wigner_pure(f, f.grid()); }

WignerField wigner_pure(const Ket& f, const GridSpec1D& p_axis) {
  Field2D w = cross_wigner_impl(f, f, p_axis);
  const double sup = max_abs(w);
  if (max_imag(w) > kImagDust * sup)
    throw resolution_error("wigner_pure: imaginary part above coercion threshold");
  return WignerField(coerce_real(w), f.hbar(), "pure");
}

Field2D cross_wigner(const Ket& f, const Ket& g) { return cross_wigner(f, g, f.grid()); }

Field2D cross_wigner(const Ket& f, const Ket& g, const GridSpec1D& p_axis) {
  return cross_wigner_impl(f, g, p_axis);
}

WignerField wigner_mixed(const MixedState& rho) {
  return wigner_mixed(rho, rho.grid());
}

WignerField wigner_mixed(const MixedState& rho, const GridSpec1D& p_axis) {
  RealField2D acc(GridSpec2D{rho.grid(), p_axis});
  for (const auto& comp : rho.components()) {
    Field2D w = cross_wigner_impl(comp.ket, comp.ket, p_axis);
    const double sup = max_abs(w);
    if (max_imag(w) > kImagDust * sup)
      throw resolution_error("wigner_mixed: imaginary part above coercion threshold");
    for (size_t i = 0; i < acc.values().size(); ++i)
      acc.values()[i] += comp.weight * w.values()[i].real();
  }
  return WignerField(std::move(acc), rho.hbar(), "mixed");
}

AmbiguityField ambiguity(const Ket& f, const Ket& g) {
  require_shared_grid(f, g);
  require_transform_grid(f.grid());
  const GridSpec1D& xg = f.grid();
  const int n = xg.size();
  const double dx = xg.spacing();
  const double extent = -xg.min();

  const std::vector<complex> fine_f = fine_samples(f);
  const std::vector<complex> fine_g = fine_samples(g);

  GridSpec1D tau_axis(-2.0 * extent, 2.0 * extent, 2 * n);
  const double omega_max = 1.0 / (2.0 * dx);
  GridSpec1D omega_axis(-omega_max, omega_max, n);

  // sum_i B[i] e^{-2 pi i omega_k t_i}
  detail::Czt czt(n, n, dx, 2.0 * M_PI * omega_axis.spacing());
  const double beta = xg.min();
  const double gamma = 2.0 * M_PI * omega_axis.min();

  Field2D out(GridSpec2D{tau_axis, omega_axis});
  std::vector<complex> row(n);
  std::vector<complex> spec(n);
  for (int j = 0; j < 2 * n; ++j) {
    // B[i] = f(t_i - tau_j/2) conj(g(t_i + tau_j/2)), tau_j = -2L + j dx
    for (int i = 0; i < n; ++i) {
      const int k1 = 2 * i - j + n;
      const int k2 = 2 * i + j - n;
      row[i] = (k1 < 0 || k1 >= 2 * n || k2 < 0 || k2 >= 2 * n)
                   ? complex{0.0, 0.0}
                   : fine_f[k1] * std::conj(fine_g[k2]);
    }
    czt.apply(beta, gamma, row, spec);
    for (int k = 0; k < n; ++k) out.at(j, k) = dx * spec[k];
  }
  return AmbiguityField(std::move(out), l2_norm(f) * l2_norm(g));
}

double relation_check(const Ket& f, const Ket& g) {
  require_shared_grid(f, g);
  require_transform_grid(f.grid());
  const GridSpec1D& xg = f.grid();
  const int n = xg.size();
  const double dx = xg.spacing();
  const double hbar = f.hbar();

  // W(f,g) on the square grid.
  Field2D w = cross_wigner_impl(f, g, xg);

  // Mapped frequencies omega = p/(pi hbar) must stay below the ambiguity
  // Nyquist limit 1/(2 dx).
  const double omega_needed = -xg.min() / (M_PI * hbar);
  if (omega_needed > 1.0 / (2.0 * dx))
    throw std::domain_error("relation_check: momentum extent exceeds the ambiguity grid; enlarge the grid");

  const std::vector<complex> fine_f = fine_samples(f);
  const std::vector<complex> fine_g = fine_samples(g);

  // A(f, g^-)(-2 x_j, omega) row: B[i] = f(t_i + x_j) conj(g(x_j - t_i)).
  detail::Czt czt(n, n, dx, 2.0 * xg.spacing() / hbar);
  const double beta = xg.min();
  const double gamma = 2.0 * xg.min() / hbar;
  const double pref = dx / (M_PI * hbar);

  double dev = 0.0;
  std::vector<complex> row(n);
  std::vector<complex> spec(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int k1 = -n + 2 * (i + j);
      const int k2 = n + 2 * (j - i);
      row[i] = (k1 < 0 || k1 >= 2 * n || k2 < 0 || k2 >= 2 * n)
                   ? complex{0.0, 0.0}
                   : fine_f[k1] * std::conj(fine_g[k2]);
    }
    czt.apply(beta, gamma, row, spec);
    for (int k = 0; k < n; ++k)
      dev = std::max(dev, std::abs(w.at(j, k) - pref * spec[k]));
  }
  return dev;
}

WignerField materialize(const ShiftedCopyMixture& eta, const GridSpec1D& p_axis) {
  WignerField wg0 = wigner_pure(eta.g0, p_axis);
  const GridSpec1D& src_x = eta.g0.grid();
  const double dx = src_x.spacing();
  const int np = p_axis.size();

  // Enlarged x-axis [-2, -2 + N dx) with N the next power of two covering
  // the last strip [count, count+1] plus margin.
  const double x_min = -2.0;
  const double span_needed = (eta.count + 2.0) - x_min + 2.0;
  int nx = 1;
  while (nx * dx < span_needed) nx <<= 1;
  GridSpec1D big_x(x_min, x_min + nx * dx, nx);

  RealField2D out(GridSpec2D{big_x, p_axis});
  // source columns i with x in [0, 1]
  const int i_lo = static_cast<int>(std::ceil((0.0 - src_x.min()) / dx - 1e-9));
  const int i_hi = static_cast<int>(std::floor((1.0 - src_x.min()) / dx + 1e-9));
  const double w = 1.0 / eta.count;
  for (const auto& shift : eta.shifts) {
    const double cells = shift[0] / dx;
    if (std::abs(cells - std::round(cells)) > 1e-9)
      throw std::domain_error("materialize: shift is not an integer number of cells");
    for (int i = i_lo; i <= i_hi; ++i) {
      const double x_dst = src_x.point(i) + shift[0];
      const int di = static_cast<int>(std::llround((x_dst - big_x.min()) / dx));
      if (di < 0 || di >= nx) throw std::domain_error("materialize: shifted strip leaves the grid");
      for (int k = 0; k < np; ++k) out.at(di, k) += w * wg0.field().at(i, k);
    }
  }
  return WignerField(std::move(out), eta.g0.hbar(), "shifted_mixture");
}

complex field_inner(const Field2D& a, const Field2D& b) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument("field_inner: fields live on different grids");
  KahanSum re, im;
  for (size_t i = 0; i < a.values().size(); ++i) {
    const complex t = std::conj(a.values()[i]) * b.values()[i];
    re.add(t.real());
    im.add(t.imag());
  }
  return complex{re.value(), im.value()} * a.grid().cell_area();
}

}  // namespace phasespace
