#pragma once

// Discretization substrate: uniform 1-D/2-D sampling lattices, sampled
// fields, midpoint-rule quadrature and L^q norms.  Everything downstream
// (states, transforms, entropies, inequality checks) consumes these.

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "phasespace/errors.hpp"

namespace phasespace {

using complex = std::complex<double>;

/// Sentinel for q = infinity in L^q norms and Renyi orders.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Physical configuration: hbar and the spatial dimension d.
/// Sampled grids require d = 1; the sharp-constant evaluators accept any d.
struct HbarConfig {
  double hbar = 1.0;
  int dim = 1;

  HbarConfig() = default;
  HbarConfig(double hbar_, int dim_) : hbar(hbar_), dim(dim_) {
    if (!(hbar > 0.0)) throw std::domain_error("HbarConfig: hbar must be > 0");
    if (dim < 1) throw std::domain_error("HbarConfig: dim must be >= 1");
  }
};

/// Uniform 1-D sampling lattice: points x_i = x_min + i * spacing,
/// i = 0 .. n-1.  n is required to be a power of two so every axis is
/// FFT-ready.
class GridSpec1D {
 public:
  GridSpec1D(double x_min, double x_max, int n);

  /// Lattice [-extent, extent) with n samples; symmetric about 0 as the
  /// transform kernels require.
  static GridSpec1D symmetric(double extent, int n);

  double min() const { return x_min_; }
  double max() const { return x_max_; }
  int size() const { return n_; }
  double spacing() const { return (x_max_ - x_min_) / n_; }
  double point(int i) const { return x_min_ + i * spacing(); }
  std::vector<double> points() const;

  /// True when the lattice is {-L, -L+dx, ..., L-dx} so reflection is a
  /// plain index reversal.
  bool symmetric_about_zero(double tol = 1e-12) const;

  bool operator==(const GridSpec1D& o) const = default;

 private:
  double x_min_, x_max_;
  int n_;
};

/// Default position axis for a given hbar: [-8 sqrt(hbar), 8 sqrt(hbar)),
/// 512 samples.  Holds every Fock state up to n = 10 with tail mass below
/// 1e-12.
GridSpec1D default_axis(double hbar, int n = 512);

/// Phase-space lattice: outer product of a position and a momentum axis.
struct GridSpec2D {
  GridSpec1D x;
  GridSpec1D p;

  double cell_area() const { return x.spacing() * p.spacing(); }
  bool operator==(const GridSpec2D& o) const = default;
};

GridSpec2D default_phase_space(double hbar, int n = 512);

/// Sampled scalar field over a GridSpec2D, row-major in the x index.
template <typename T>
class BasicField2D {
 public:
  explicit BasicField2D(GridSpec2D grid)
      : grid_(grid),
        values_(static_cast<size_t>(grid.x.size()) * grid.p.size(), T{}) {}

  BasicField2D(GridSpec2D grid, std::vector<T> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(grid_.x.size()) * grid_.p.size())
      throw std::invalid_argument("Field2D: value count does not match grid");
  }

  const GridSpec2D& grid() const { return grid_; }
  int nx() const { return grid_.x.size(); }
  int np() const { return grid_.p.size(); }

  T& at(int i, int j) { return values_[static_cast<size_t>(i) * np() + j]; }
  const T& at(int i, int j) const {
    return values_[static_cast<size_t>(i) * np() + j];
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

 private:
  GridSpec2D grid_;
  std::vector<T> values_;
};

using Field2D = BasicField2D<complex>;
using RealField2D = BasicField2D<double>;

/// Compensated (Kahan) accumulator; keeps reductions independent of
/// summation order to well below the quadrature tolerances.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

/// Riemann (midpoint-rule) integral: sum of samples times cell area.
/// Rejects non-finite samples.
complex integrate(const Field2D& f);
double integrate(const RealField2D& f);

/// L^q norm, q in [1, inf].  q = kInf gives the sup norm.
double lq_norm(const Field2D& f, double q);
double lq_norm(const RealField2D& f, double q);

double max_abs(const Field2D& f);
double max_abs(const RealField2D& f);

/// Integrate out the momentum axis: m[i] = sum_j f(i,j) * dp.
/// The complex overload rejects fields with significant imaginary part
/// (threshold 1e-9 times the sup norm).
std::vector<double> marginal_x(const RealField2D& f);
std::vector<double> marginal_x(const Field2D& f);

/// Largest |Im| over the field; used by the real-coercion rule.
double max_imag(const Field2D& f);

/// Real part of a complex field whose imaginary content is FFT dust
/// (max |Im| <= 1e-9 * sup |f|); throws otherwise.
RealField2D coerce_real(const Field2D& f);

}  // namespace phasespace
