#pragma once

// Concrete quantum states on sampled position grids: Fock/Hermite states,
// matched Gaussian pairs, smooth compactly supported bumps and their
// modulated variants, convex mixtures and shifted-copy mixtures.

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "phasespace/grid.hpp"

namespace phasespace {

/// Sampled wavefunction with unit L^2 norm.  States built from closed forms
/// carry an analytic sampler so transform kernels can evaluate them on
/// half-step points without interpolation.
class Ket {
 public:
  using Sampler = std::function<complex(double)>;

  /// Validating constructor: requires || f ||_2 = 1 within 1e-9.
  Ket(GridSpec1D grid, std::vector<complex> values, double hbar,
      Sampler sampler = nullptr);

  /// Normalizes the supplied samples (and sampler, consistently) first.
  static Ket normalized(GridSpec1D grid, std::vector<complex> values,
                        double hbar, Sampler sampler = nullptr);

  const GridSpec1D& grid() const { return grid_; }
  double hbar() const { return hbar_; }
  std::span<const complex> values() const { return values_; }
  const Sampler& sampler() const { return sampler_; }

  /// Same state sampled on the n/2 lattice (every other point),
  /// renormalized.  Used for a-posteriori quadrature error estimates.
  Ket decimated() const;

 private:
  GridSpec1D grid_;
  std::vector<complex> values_;
  double hbar_;
  Sampler sampler_;
};

double l2_norm(const Ket& f);
/// <f|g> = integral conj(f) g  (linear in the second argument).
complex inner(const Ket& f, const Ket& g);

/// n-th harmonic oscillator eigenfunction (m = omega = 1) via the stable
/// three-term recurrence on normalized Hermite functions.  Guarded at
/// n <= 20.
Ket fock(int n, const GridSpec1D& grid, double hbar);

/// Matched Gaussian pair parameters (d = 1): f = exp(-a x^2 + b x + gamma),
/// g = exp(-a x^2 + c x + eta), Re(a) > 0.  Normalization constants are
/// absorbed numerically, so gamma/eta only contribute phases.
struct GaussianParams {
  complex a;
  complex b{0.0, 0.0};
  complex c{0.0, 0.0};
  complex gamma{0.0, 0.0};
  complex eta{0.0, 0.0};
};

std::pair<Ket, Ket> matched_gaussian_pair(const GaussianParams& params,
                                          const GridSpec1D& grid, double hbar);

/// Linear symplectic map of the plane (d = 1); construction rejects any
/// matrix with |S J S^T - J| beyond 1e-10.
class SymplecticMap {
 public:
  /// Row-major {s00, s01, s10, s11}.
  explicit SymplecticMap(std::array<double, 4> s);

  static SymplecticMap rotation(double theta);
  static SymplecticMap squeeze(double s);
  static SymplecticMap shear(double lambda);

  const std::array<double, 4>& m() const { return s_; }
  SymplecticMap inverse() const;
  SymplecticMap transpose_times(const SymplecticMap& rhs) const;  // S^T * rhs

  std::array<double, 2> apply(double x, double p) const;

 private:
  std::array<double, 4> s_;
};

/// Gaussian ket whose Wigner function is
/// sqrt(det M)/(pi hbar) exp(-z.Mz/hbar) for symmetric positive-definite
/// symplectic M (Bastiaans-Littlejohn correspondence, d = 1).
Ket gaussian_ket_for(const std::array<double, 4>& m_matrix,
                     const GridSpec1D& grid, double hbar);

/// Smooth bump exp(-1/(1-u^2)) rescaled to [a, b] and normalized; exactly
/// zero outside the support.
Ket bump(double a, double b, const GridSpec1D& grid, double hbar);

/// Bump modulated by cos(omega u) + c2 cos(2 omega u) on the rescaled
/// coordinate u in (-1, 1).  The modulation feeds interference fringes into
/// the Wigner function, raising its L^1 mass while keeping the support.
Ket modulated_bump(double a, double b, double omega, double c2,
                   const GridSpec1D& grid, double hbar);

/// Convex combination {(p_j, f_j)}; weights sum to 1 within 1e-12.
class MixedState {
 public:
  struct Component {
    double weight;
    Ket ket;
  };

  /// Spectral mixture: verifies pairwise orthogonality (within 1e-6).
  static MixedState spectral(std::vector<Component> components);
  /// Convex combination without the orthogonality requirement.
  static MixedState convex(std::vector<Component> components);

  static MixedState pure(Ket ket);

  std::span<const Component> components() const { return components_; }
  bool is_spectral() const { return spectral_; }
  double hbar() const { return components_.front().ket.hbar(); }
  const GridSpec1D& grid() const { return components_.front().ket.grid(); }

  MixedState decimated() const;

 private:
  MixedState(std::vector<Component> components, bool spectral);
  std::vector<Component> components_;
  bool spectral_;
};

/// Description of W_eta_n(z) = (1/n) sum_j W g0(z - z_j), z_j = (j, 0):
/// the shifts are chosen so the strips [j, j+1] x R are disjoint.
struct ShiftedCopyMixture {
  Ket g0;
  int count;
  std::vector<std::array<double, 2>> shifts;
};

/// Requires g0 supported in [0, 1] (sample-level) and the grid spacing to
/// divide the unit shift exactly; n >= 1 (n = 1 is a single shifted copy).
ShiftedCopyMixture shifted_copy_mixture(const Ket& g0, int n);

/// Build a state from its JSON description (schema 1):
///   {"schema":1, "type":"fock",   "n":1}
///   {"schema":1, "type":"gaussian","a":[re,im], "b":[re,im], "c":[re,im]}
///   {"schema":1, "type":"bump",   "support":[a,b],
///                 "omega":9.5, "c2":0.8}              (modulation optional)
///   {"schema":1, "type":"mixture","spectral":true,
///                 "components":[{"weight":0.5, "state":{...}}, ...]}
/// Shifted mixtures ({"type":"shifted_mixture","g0":{...},"n":4}) are loaded
/// with load_shifted_mixture.
MixedState load_state(const nlohmann::json& spec, const GridSpec1D& grid,
                      double hbar);
ShiftedCopyMixture load_shifted_mixture(const nlohmann::json& spec,
                                        const GridSpec1D& grid, double hbar);

}  // namespace phasespace
