#pragma once

// Sharp constants (Babenko-Beckner, Lieb's H(p,q,d)) and machine-checkable
// certification of the Lieb ambiguity inequalities, the L^q interpolation
// inequality, the measure bounds, and the entropy lower bounds.  Every
// check re-runs at half resolution to attach an a-posteriori quadrature
// error estimate; a margin smaller than that budget is reported as
// equality-within-tolerance, never as a violation.

#include <map>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "phasespace/functionals.hpp"

namespace phasespace {

/// Babenko-Beckner constant C_r = sqrt(r^{1/r} / r'^{1/r'}) with
/// C_1 = C_inf = 1.  Requires r >= 1.
double babenko_beckner(double r);

/// Lieb's sharp constant H(p,q,d) in closed form.  The exponent pair must
/// satisfy the hypotheses of the matching theorem: q' <= p, p' <= q when
/// q >= 2, or q <= p, p' <= q' when 1 <= q < 2.
double lieb_constant(double p, double q, int d);

/// H(p,q,d) assembled from Babenko-Beckner constants (defined for q > 2);
/// agrees with the closed form to 1e-12 on the admissible range.
double lieb_constant_via_cr(double p, double q, int d);

/// L^p norm of a sampled wavefunction (p = kInf gives the sup norm).
double lp_norm(const Ket& f, double p);

enum class Direction { kLE, kGE };
enum class Verdict { kHolds, kViolated, kEqualityWithinTolerance };

std::string to_string(Direction d);
std::string to_string(Verdict v);

/// Machine-readable verdict for one inequality check.
struct InequalityReport {
  std::string name;
  std::string state;
  Direction direction = Direction::kLE;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Satisfied amount: rhs - lhs for "<=", lhs - rhs for ">=".
  double margin = 0.0;
  Verdict verdict = Verdict::kHolds;
  double equality_tolerance = 1e-3;  // relative
  double quad_error = 0.0;           // |margin - margin at half resolution|
  std::map<std::string, double> params;
  std::string note;

  nlohmann::ordered_json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Lieb's upper ambiguity bound: ||A(f,g)||_q <= H(p,q,d) ||f||_p ||g||_p'
/// for q >= 2, q' <= p, p' <= q.  Equality iff (f,g) is a matched
/// Gaussian pair; identity at q = 2.
InequalityReport check_lieb_upper(const Ket& f, const Ket& g, double p, double q);

/// Lieb's reversed ambiguity bound: ||A(f,g)||_q >= H(p,q,d) ||f||_p ||g||_p'
/// for 1 <= q < 2, q <= p, p' <= q'.
InequalityReport check_lieb_lower(const Ket& f, const Ket& g, double p, double q);

/// Mixed-state L^q bound: ||W rho||_q <= (q (pi hbar)^{q-1})^{-d/q} for q >= 2.
InequalityReport check_mixed_lq_bound(const MixedState& rho, double q);

/// The interpolation inequality for the ambiguity function:
/// ||A||_q <= ||A||_1^{theta/q} (H(p,Q,d) ||f||_p ||g||_p')^{1-theta/q}
/// with Q = (q-theta)/(1-theta), for 1 < q < 2, 2-q < theta < 1 and
/// (q-theta)/(q-1) <= p, p' <= Q.  Never an equality.
InequalityReport check_new_inequality(const Ket& f, const Ket& g, double q,
                                      double theta, double p);

/// Wigner version: ||W rho||_q <= (pi hbar)^{-d(1-1/q)}
/// ((1-theta)/(q-theta))^{(d/q)(1-theta)} ||W rho||_1; also records whether
/// ||W rho||_1 = 1 (Wigner-positive state).
InequalityReport check_wigner_interpolation(const MixedState& rho, double q,
                                            double theta);

/// Cross-Wigner version of the interpolation inequality (p = 2 route
/// transported through W(f,g) = (pi hbar)^-1 A(f,g^-)(-2x, p/(pi hbar))).
InequalityReport check_wigner_interpolation(const Ket& f, const Ket& g,
                                            double q, double theta);

/// Auxiliary-measure norm bounds: ||nu||_q <= (pi hbar / q)^{d/q} for q >= 2
/// (equality: q = 2 Wigner-positive pure states, q > 2 Gaussians);
/// strict bound [pi hbar ((1-theta)/(q-theta))^{1-theta}]^{d/q} for
/// 1 < q < 2 with admissible theta.
InequalityReport check_measure_bounds(const MixedState& rho, double q,
                                      std::optional<double> theta = std::nullopt);

/// Entropy lower bound: S[W rho] > d ln(2 pi hbar); the report also carries the
/// distance to the conjectured bound d ln(e pi hbar).
InequalityReport check_entropy_bound(const MixedState& rho);

/// Renyi entropy lower bounds: H_alpha >= d (ln(pi hbar) + ln(alpha)/(alpha-1)) for
/// alpha >= 2 (Gaussian saturation), H_alpha > d ln(2 pi hbar) for
/// 1 < alpha < 2.  alpha = kInf uses the -ln ||mu||_inf limit form.
InequalityReport check_renyi_bound(const MixedState& rho, double alpha);

/// The alpha -> 1 recovery: for each eps, H_{1+eps+eps^2} >=
/// d (ln(pi hbar) + ln(2+eps)/(1+eps)); the bound tends to d ln(2 pi hbar).
/// The report carries the worst margin over the eps list.
InequalityReport check_alpha_to_one_limit(const MixedState& rho,
                                          std::span<const double> eps_list);

}  // namespace phasespace
