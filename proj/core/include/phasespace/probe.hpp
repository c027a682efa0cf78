#pragma once

// Numerical exploration of the entropy-bound landscape: derivative-free
// entropy minimization over parameterized state families, the shifted-copy
// non-concavity construction, and the incorrect-marginals demonstration for
// the first Fock state.

#include <cstdint>
#include <functional>

#include <nlohmann/json.hpp>

#include "phasespace/functionals.hpp"

namespace phasespace {

/// Deterministic uniform generator (splitmix-style) so seeded runs are
/// byte-identical across platforms and standard libraries.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}
  uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_double();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  uint64_t state_;
};

/// Parameterized family of states with box bounds.  The generator must
/// produce a valid WignerField for every parameter vector inside the box;
/// families with require_positive reject (not project) parameters whose
/// Wigner function goes negative.
struct StateFamily {
  std::string name;
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<WignerField(std::span<const double>)> generator;
  std::function<WignerField(std::span<const double>)> generator_half;  // optional
  bool require_positive = false;
  double hbar = 1.0;
  int dim = 1;
};

struct ProbeTraceEntry {
  int restart;
  std::vector<double> params;
  double value;
};

struct ProbeResult {
  std::string family;
  std::vector<double> best_params;
  double best_value = 0.0;
  std::vector<ProbeTraceEntry> trace;
  double gap_to_proved = 0.0;       // best - d ln(2 pi hbar)
  double gap_to_conjectured = 0.0;  // best - d ln(e pi hbar)
  double quad_error = 0.0;
  bool discretization_fault = false;

  nlohmann::ordered_json to_json(bool include_trace = false) const;
};

/// Nelder-Mead with seeded random restarts over wigner_entropy(generator).
/// budget is the total number of generator evaluations (>= 50); results are
/// deterministic for a fixed seed.
ProbeResult minimize_entropy(const StateFamily& family, int budget, uint64_t seed);

/// True iff min W >= -1e-9 sup |W| over the grid.
bool positivity_filter(const WignerField& w);

/// Gaussian pure-state family M(s, phi) = R(phi)^T diag(s, 1/s) R(phi); the
/// Wigner entropy is flat over it (symplectic invariance).
StateFamily gaussian_family(const GridSpec2D& grid, double hbar);

/// Two-component fock(0)/fock(1) mixture family with Wigner-positivity
/// filtering (positive iff the fock(0) weight is at least 1/2).
StateFamily fock_mixture_family(const GridSpec1D& grid, double hbar);

/// One run of the non-concavity construction: W rho = (W f + W eta_n)/2
/// with disjoint strips.  Entropies of the shifted-copy field are
/// accumulated block-by-block (the strips are disjoint and sample-identical
/// to the source field, so the sums agree with a literal materialization to
/// rounding).
struct ConcavityRecord {
  int n;
  double k_ratio;            // ||W f||_1 / ||W g0||_1
  double threshold;          // 2 (K+1)/(K-1) ln(2K)
  double l1_f, l1_g0, l1_rho;
  double entropy_f, entropy_g0, entropy_eta, entropy_rho;
  double sigma, sigma1, sigma2;

  nlohmann::ordered_json to_json() const;
};

/// Requires supp f in [-1, 0], supp g0 in [0, 1] (sample-level) and
/// K = ||W f||_1 / ||W g0||_1 > 1.
ConcavityRecord concavity_experiment(const Ket& f, const Ket& g0, int n,
                                     const GridSpec1D& p_axis);

/// Momentum axis tall enough for the slowly decaying bump Wigner tails.
GridSpec1D concavity_p_axis(double hbar);

/// Default f for the experiment: modulated bump on [-1, 0] tuned so that
/// K is near 2 while Sigma < 0 is reachable within n <= 128.
Ket default_concavity_f(const GridSpec1D& grid, double hbar);

/// Closed-form x-marginal of mu_{h1} against the numeric marginal and the
/// true quantum marginal |h1(x)|^2.
struct MarginalMismatchRecord {
  std::vector<double> xs;
  std::vector<double> numeric;     // marginal of mu from the sampled field
  std::vector<double> closed;      // piecewise closed form (incomplete gamma)
  std::vector<double> true_marginal;
  double max_closed_form_dev = 0.0;   // |numeric - closed| over |x| <= 4 sqrt(hbar)
  double mismatch_at_unit = 0.0;      // |numeric - true| at x = sqrt(hbar)
  double seam_gap = 0.0;              // branch mismatch at |x| = sqrt(hbar/2)

  nlohmann::ordered_json to_json(bool include_arrays = false) const;
};

MarginalMismatchRecord marginal_mismatch(double hbar, const GridSpec1D& grid);

/// mu_{h1} x-marginal closed form (both branches).
double mu_h1_marginal(double x, double hbar);

/// Upper incomplete gamma Gamma(s, x) for s in (0, 10], x >= 0, via series
/// (x < s+1) and continued fraction (x >= s+1); 1e-10 relative accuracy.
double upper_incomplete_gamma(double s, double x);

}  // namespace phasespace
