#pragma once

// Measures and entropies built on the Wigner distribution: the normalized
// measure mu = |W|/||W||_1 and its auxiliary companion nu = (pi hbar) mu,
// purity, quantum Wigner entropy, Wigner-Renyi entropy, Lieb's ambiguity
// entropy, and the proof-machinery functionals J(q), K_eps, xi(theta).

#include "phasespace/states.hpp"
#include "phasespace/transforms.hpp"

namespace phasespace {

/// mu(z) = |W(z)| / ||W||_1: a probability measure on the grid.
struct NormalizedMeasure {
  RealField2D mu;
  double l1_mass_of_source;  // ||W||_1 >= 1
};

/// nu(z) = (pi hbar) mu(z): not normalized, but pointwise <= 1.
struct AuxiliaryMeasure {
  RealField2D nu;
};

NormalizedMeasure mu_of(const WignerField& w);
AuxiliaryMeasure nu_of(const WignerField& w);

/// (2 pi hbar) ||W||_2^2; equals 1 exactly for pure states.
double purity(const WignerField& w);

/// Quantum Wigner entropy S = -Int mu ln mu (0 ln 0 = 0 at zero samples).
double wigner_entropy(const WignerField& w);

/// Shannon entropy -Int v ln v of a nonnegative sampled density
/// (not necessarily normalized); used for H[nu].
double measure_entropy(const RealField2D& v);

/// Wigner-Renyi entropy H_alpha = alpha/(1-alpha) ln ||mu||_alpha for
/// alpha > 1; alpha = kInf gives -ln ||mu||_inf.  alpha <= 1 is rejected
/// (the limit alpha -> 1 is wigner_entropy).
double renyi_entropy(const WignerField& w, double alpha);

/// Lieb's ambiguity entropy -Int |A|^2 ln |A|^2; requires ||A||_2 = 1
/// within 1e-4 (unit-norm inputs).
double lieb_ambiguity_entropy(const AmbiguityField& a);

/// J(q) = ||nu||_q^q, q >= 1.
double j_functional(const WignerField& w, double q);

/// K_eps = (J(1) - J(1+eps+eps^2)) / (eps+eps^2), for eps in (0, phi-1)
/// where eps + eps^2 < 1 keeps 0 < 2-q < theta < 1.
double k_epsilon(const WignerField& w, double eps);

/// xi(theta) = (1-theta)/(1-alpha) ln((1-theta)/(alpha-theta)) on the open
/// domain 2-alpha < theta < 1, 1 < alpha < 2; supremum ln 2 at the left
/// endpoint.
double xi(double theta, double alpha);

/// Pullback W(S^-1 z) by bilinear interpolation; |det S| = 1 so the entropy
/// is invariant up to interpolation error.
WignerField symplectic_pullback(const WignerField& w, const SymplecticMap& s);

/// Product state rho_A (x) rho_B (x) ...; each factor is a d = 1 field and
/// mu factorizes, so entropies are exactly additive.
struct ProductState {
  std::vector<WignerField> factors;
  int dim() const { return static_cast<int>(factors.size()); }
};

double wigner_entropy(const ProductState& p);
double renyi_entropy(const ProductState& p, double alpha);

}  // namespace phasespace
