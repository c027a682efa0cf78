#include "phasespace/grid.hpp"

#include <cmath>

namespace phasespace {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

}  // namespace

GridSpec1D::GridSpec1D(double x_min, double x_max, int n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
  require_finite(x_min, "GridSpec1D");
  require_finite(x_max, "GridSpec1D");
  if (!(x_max > x_min)) throw std::domain_error("GridSpec1D: x_max must exceed x_min");
  if (!is_pow2(n)) throw std::domain_error("GridSpec1D: n must be a power of two");
}

GridSpec1D GridSpec1D::symmetric(double extent, int n) {
  if (!(extent > 0.0)) throw std::domain_error("GridSpec1D::symmetric: extent must be > 0");
  return GridSpec1D(-extent, extent, n);
}

std::vector<double> GridSpec1D::points() const {
  std::vector<double> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = point(i);
  return out;
}

bool GridSpec1D::symmetric_about_zero(double tol) const {
  return std::abs(x_min_ + x_max_) <= tol * (std::abs(x_min_) + std::abs(x_max_));
}

GridSpec1D default_axis(double hbar, int n) {
  return GridSpec1D::symmetric(8.0 * std::sqrt(hbar), n);
}

GridSpec2D default_phase_space(double hbar, int n) {
  GridSpec1D a = default_axis(hbar, n);
  return GridSpec2D{a, a};
}

namespace {

template <typename T>
void check_finite(std::span<const T> v) {
  for (const T& x : v) {
    if constexpr (std::is_same_v<T, complex>) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::invalid_argument("field contains non-finite values");
    } else {
      if (!std::isfinite(x)) throw std::invalid_argument("field contains non-finite values");
    }
  }
}

}  // namespace

complex integrate(const Field2D& f) {
  check_finite(f.values());
  KahanSum re, im;
  for (const complex& v : f.values()) {
    re.add(v.real());
    im.add(v.imag());
  }
  return complex{re.value(), im.value()} * f.grid().cell_area();
}

double integrate(const RealField2D& f) {
  check_finite(f.values());
  KahanSum s;
  for (double v : f.values()) s.add(v);
  return s.value() * f.grid().cell_area();
}

namespace {

template <typename T>
double lq_norm_impl(const BasicField2D<T>& f, double q) {
  if (std::isnan(q) || q < 1.0) throw std::domain_error("lq_norm: q must be >= 1");
  check_finite(f.values());
  if (q == kInf) {
    double m = 0.0;
    for (const T& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  KahanSum s;
  for (const T& v : f.values()) s.add(std::pow(std::abs(v), q));
  return std::pow(s.value() * f.grid().cell_area(), 1.0 / q);
}

}  // namespace

double lq_norm(const Field2D& f, double q) { return lq_norm_impl(f, q); }
double lq_norm(const RealField2D& f, double q) { return lq_norm_impl(f, q); }

double max_abs(const Field2D& f) {
  double m = 0.0;
  for (const complex& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const RealField2D& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> marginal_x(const RealField2D& f) {
  check_finite(f.values());
  const double dp = f.grid().p.spacing();
  std::vector<double> out(f.nx());
  for (int i = 0; i < f.nx(); ++i) {
    KahanSum s;
    for (int j = 0; j < f.np(); ++j) s.add(f.at(i, j));
    out[i] = s.value() * dp;
  }
  return out;
}

std::vector<double> marginal_x(const Field2D& f) {
  return marginal_x(coerce_real(f));
}

double max_imag(const Field2D& f) {
  double m = 0.0;
  for (const complex& v : f.values()) m = std::max(m, std::abs(v.imag()));
  return m;
}

RealField2D coerce_real(const Field2D& f) {
  check_finite(f.values());
  const double sup = max_abs(f);
  const double dust = max_imag(f);
  if (dust > 1e-9 * sup && dust > 0.0)
    throw std::invalid_argument("coerce_real: field has significant imaginary part");
  std::vector<double> re(f.values().size());
  for (size_t k = 0; k < re.size(); ++k) re[k] = f.values()[k].real();
  return RealField2D(f.grid(), std::move(re));
}

}  // namespace phasespace
