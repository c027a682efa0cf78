#include "phasespace/inequalities.hpp"

#include <cmath>
#include <sstream>

namespace phasespace {

namespace {

double conj_exp(double p) {
  if (p == kInf) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

bool upper_admissible(double p, double q) {
  const double qc = conj_exp(q);
  const double pc = conj_exp(p);
  return q >= 2.0 && qc <= p && p <= q && qc <= pc && pc <= q;
}

bool lower_admissible(double p, double q) {
  const double qc = conj_exp(q);
  const double pc = conj_exp(p);
  return q >= 1.0 && q < 2.0 && q <= p && p <= qc && q <= pc && pc <= qc;
}

}  // namespace

double babenko_beckner(double r) {
  if (std::isnan(r) || r < 1.0) throw std::domain_error("babenko_beckner: r must be >= 1");
  if (r == 1.0 || r == kInf) return 1.0;
  const double rc = conj_exp(r);
  return std::sqrt(std::pow(r, 1.0 / r) / std::pow(rc, 1.0 / rc));
}

double lieb_constant(double p, double q, int d) {
  if (d < 1) throw std::domain_error("lieb_constant: d must be >= 1");
  if (!(p > 1.0) || p == kInf || std::isnan(p) || std::isnan(q))
    throw std::domain_error("lieb_constant: p must be finite and > 1");
  if (!upper_admissible(p, q) && !lower_admissible(p, q))
    throw std::domain_error("lieb_constant: (p, q) outside the theorem hypotheses");
  const double pc = conj_exp(p);
  // [ p p'/q^2 |q-2|^{2-q} |q-p|^{q/p - 1} |q-p'|^{q/p' - 1} ]^{d/2q};
  // 0^0 = 1 handles the q = 2 and p = q corners.
  const double base = (p * pc / (q * q)) * std::pow(std::abs(q - 2.0), 2.0 - q) *
                      std::pow(std::abs(q - p), q / p - 1.0) *
                      std::pow(std::abs(q - pc), q / pc - 1.0);
  return std::pow(base, 0.5 * d / q);
}

double lieb_constant_via_cr(double p, double q, int d) {
  if (!(q > 2.0)) throw std::domain_error("lieb_constant_via_cr: defined for q > 2");
  if (!upper_admissible(p, q)) throw std::domain_error("lieb_constant_via_cr: inadmissible (p, q)");
  const double qc = conj_exp(q);
  const double pc = conj_exp(p);
  const double inner = babenko_beckner(p / qc) * babenko_beckner(pc / qc) /
                       babenko_beckner(q / qc);
  return std::pow(babenko_beckner(qc) * std::pow(inner, 1.0 / qc), d);
}

double lp_norm(const Ket& f, double p) {
  if (std::isnan(p) || p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
  if (p == kInf) {
    double m = 0.0;
    for (const complex& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  KahanSum s;
  for (const complex& v : f.values()) s.add(std::pow(std::abs(v), p));
  return std::pow(s.value() * f.grid().spacing(), 1.0 / p);
}

std::string to_string(Direction d) { return d == Direction::kLE ? "<=" : ">="; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kEqualityWithinTolerance: return "equality-within-tolerance";
  }
  return "?";
}

nlohmann::ordered_json InequalityReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["state"] = state;
  j["direction"] = to_string(direction);
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["verdict"] = to_string(verdict);
  j["equality_tolerance"] = equality_tolerance;
  j["quad_error"] = quad_error;
  j["params"] = params;  // std::map: keys already sorted
  j["note"] = note;
  return j;
}

std::string InequalityReport::csv_header() {
  return "name,state,params,direction,lhs,rhs,margin,quad_error,verdict";
}

std::string InequalityReport::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << name << ',' << state << ',';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << '|';
    os << k << '=' << v;
    first = false;
  }
  os << ',' << to_string(direction) << ',' << lhs << ',' << rhs << ',' << margin << ','
     << quad_error << ',' << to_string(verdict);
  return os.str();
}

namespace {

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Assemble a report from full- and half-resolution evaluations of the two
// sides.  Violation requires the deficit to exceed the quadrature budget.
InequalityReport finish(std::string name, std::string state, Direction dir,
                        const Sides& full, const Sides& half,
                        std::map<std::string, double> params, std::string note = {}) {
  InequalityReport r;
  r.name = std::move(name);
  r.state = std::move(state);
  r.direction = dir;
  r.lhs = full.lhs;
  r.rhs = full.rhs;
  r.margin = dir == Direction::kLE ? full.rhs - full.lhs : full.lhs - full.rhs;
  const double margin_half = dir == Direction::kLE ? half.rhs - half.lhs : half.lhs - half.rhs;
  r.quad_error = std::abs(r.margin - margin_half);
  r.params = std::move(params);
  r.note = std::move(note);
  const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300});
  const double budget = r.quad_error + 1e-6;
  if (r.margin < -budget) {
    r.verdict = Verdict::kViolated;
  } else if (r.margin < 0.0 || std::abs(r.margin) <= r.equality_tolerance * scale) {
    r.verdict = Verdict::kEqualityWithinTolerance;
  } else {
    r.verdict = Verdict::kHolds;
  }
  return r;
}

std::map<std::string, double> base_params(const GridSpec1D& g, double hbar) {
  return {{"hbar", hbar}, {"d", 1.0}, {"grid_n", double(g.size())},
          {"grid_extent", -g.min()}};
}

std::string describe(const MixedState& rho) {
  if (rho.components().size() == 1) return "pure";
  return "mixture[" + std::to_string(rho.components().size()) + "]";
}

}  // namespace

InequalityReport check_lieb_upper(const Ket& f, const Ket& g, double p, double q) {
  if (!upper_admissible(p, q))
    throw std::domain_error("check_lieb_upper: need q >= 2 and q' <= p, p' <= q");
  auto eval = [&](const Ket& a, const Ket& b) {
    const double h = lieb_constant(p, q, 1);
    return Sides{lq_norm(ambiguity(a, b).field(), q),
                 h * lp_norm(a, p) * lp_norm(b, conj_exp(p))};
  };
  auto params = base_params(f.grid(), f.hbar());
  params["p"] = p;
  params["q"] = q;
  return finish("lieb-upper", "pair", Direction::kLE, eval(f, g),
                eval(f.decimated(), g.decimated()), std::move(params));
}

InequalityReport check_lieb_lower(const Ket& f, const Ket& g, double p, double q) {
  if (!lower_admissible(p, q))
    throw std::domain_error("check_lieb_lower: need 1 <= q < 2 and q <= p, p' <= q'");
  auto eval = [&](const Ket& a, const Ket& b) {
    const double h = lieb_constant(p, q, 1);
    return Sides{lq_norm(ambiguity(a, b).field(), q),
                 h * lp_norm(a, p) * lp_norm(b, conj_exp(p))};
  };
  auto params = base_params(f.grid(), f.hbar());
  params["p"] = p;
  params["q"] = q;
  return finish("lieb-lower", "pair", Direction::kGE, eval(f, g),
                eval(f.decimated(), g.decimated()), std::move(params));
}

InequalityReport check_mixed_lq_bound(const MixedState& rho, double q) {
  if (!(q >= 2.0)) throw std::domain_error("check_mixed_lq_bound: q must be >= 2");
  const double hbar = rho.hbar();
  auto eval = [&](const MixedState& s) {
    const WignerField w = wigner_mixed(s);
    return Sides{lq_norm(w.field(), q),
                 std::pow(1.0 / (q * std::pow(M_PI * hbar, q - 1.0)), 1.0 / q)};
  };
  auto params = base_params(rho.grid(), hbar);
  params["q"] = q;
  return finish("mixed-lq", describe(rho), Direction::kLE, eval(rho),
                eval(rho.decimated()), std::move(params));
}

namespace {

void require_interpolation_range(double q, double theta) {
  if (!(q > 1.0 && q < 2.0))
    throw std::domain_error("interpolation inequality: q must lie in (1, 2)");
  if (!(theta > 2.0 - q && theta < 1.0))
    throw std::domain_error("interpolation inequality: theta must lie in (2 - q, 1)");
}

}  // namespace

InequalityReport check_new_inequality(const Ket& f, const Ket& g, double q,
                                      double theta, double p) {
  require_interpolation_range(q, theta);
  const double p_lo = (q - theta) / (q - 1.0);
  const double big_q = (q - theta) / (1.0 - theta);
  const double pc = conj_exp(p);
  if (!(p >= p_lo && p <= big_q && pc >= p_lo && pc <= big_q))
    throw std::domain_error("check_new_inequality: need (q-theta)/(q-1) <= p, p' <= (q-theta)/(1-theta)");
  auto eval = [&](const Ket& a, const Ket& b) {
    const AmbiguityField amb = ambiguity(a, b);
    const double a1 = lq_norm(amb.field(), 1.0);
    const double aq = lq_norm(amb.field(), q);
    const double h = lieb_constant(p, big_q, 1);
    const double rhs = std::pow(a1, theta / q) *
                       std::pow(h * lp_norm(a, p) * lp_norm(b, pc), 1.0 - theta / q);
    return Sides{aq, rhs};
  };
  auto params = base_params(f.grid(), f.hbar());
  params["p"] = p;
  params["q"] = q;
  params["theta"] = theta;
  return finish("new-ineq", "pair", Direction::kLE, eval(f, g),
                eval(f.decimated(), g.decimated()), std::move(params),
                "strict for all f, g (Holder equality impossible in range)");
}

InequalityReport check_wigner_interpolation(const MixedState& rho, double q,
                                            double theta) {
  require_interpolation_range(q, theta);
  const double hbar = rho.hbar();
  double l1_full = 0.0;
  auto eval = [&](const MixedState& s, double* l1_out) {
    const WignerField w = wigner_mixed(s);
    const double l1 = lq_norm(w.field(), 1.0);
    if (l1_out) *l1_out = l1;
    const double c = std::pow(M_PI * hbar, -(1.0 - 1.0 / q)) *
                     std::pow((1.0 - theta) / (q - theta), (1.0 - theta) / q);
    return Sides{lq_norm(w.field(), q), c * l1};
  };
  const Sides full = eval(rho, &l1_full);
  const Sides half = eval(rho.decimated(), nullptr);
  auto params = base_params(rho.grid(), hbar);
  params["q"] = q;
  params["theta"] = theta;
  params["l1"] = l1_full;
  std::string note = l1_full <= 1.0 + 1e-6 ? "Wigner-positive (||W||_1 = 1)"
                                           : "||W||_1 > 1 (negative regions present)";
  return finish("wigner-interp", describe(rho), Direction::kLE, full, half,
                std::move(params), std::move(note));
}

InequalityReport check_wigner_interpolation(const Ket& f, const Ket& g, double q,
                                            double theta) {
  require_interpolation_range(q, theta);
  const double hbar = f.hbar();
  const double big_q = (q - theta) / (1.0 - theta);
  auto eval = [&](const Ket& a, const Ket& b) {
    const Field2D w = cross_wigner(a, b);
    const double w1 = lq_norm(w, 1.0);
    const double wq = lq_norm(w, q);
    // transport of the p = 2 ambiguity inequality through
    // ||A||_r = 2^{d/r} (pi hbar)^{d - d/r} ||W||_r
    const double c = std::pow(2.0, -1.0 / q) * std::pow(M_PI * hbar, 1.0 / q - 1.0);
    const double rhs = c * std::pow(2.0 * w1, theta / q) *
                       std::pow(lieb_constant(2.0, big_q, 1) * l2_norm(a) * l2_norm(b),
                                1.0 - theta / q);
    return Sides{wq, rhs};
  };
  auto params = base_params(f.grid(), hbar);
  params["q"] = q;
  params["theta"] = theta;
  params["p"] = 2.0;
  return finish("wigner-interp-cross", "pair", Direction::kLE, eval(f, g),
                eval(f.decimated(), g.decimated()), std::move(params));
}

InequalityReport check_measure_bounds(const MixedState& rho, double q,
                                      std::optional<double> theta) {
  const double hbar = rho.hbar();
  double bound;
  if (q >= 2.0) {
    if (theta)
      throw std::domain_error("check_measure_bounds: theta only applies for 1 < q < 2");
    bound = std::pow(M_PI * hbar / q, 1.0 / q);
  } else if (q > 1.0) {
    if (!theta) throw std::domain_error("check_measure_bounds: 1 < q < 2 requires theta");
    require_interpolation_range(q, *theta);
    bound = std::pow(M_PI * hbar * std::pow((1.0 - *theta) / (q - *theta), 1.0 - *theta),
                     1.0 / q);
  } else {
    throw std::domain_error("check_measure_bounds: q must be > 1");
  }
  auto eval = [&](const MixedState& s) {
    const AuxiliaryMeasure nu = nu_of(wigner_mixed(s));
    return Sides{lq_norm(nu.nu, q), bound};
  };
  auto params = base_params(rho.grid(), hbar);
  params["q"] = q;
  if (theta) params["theta"] = *theta;
  return finish("measure-bounds", describe(rho), Direction::kLE, eval(rho),
                eval(rho.decimated()), std::move(params),
                q < 2.0 ? "strict: no Wigner distribution attains this bound" : "");
}

InequalityReport check_entropy_bound(const MixedState& rho) {
  const double hbar = rho.hbar();
  auto eval = [&](const MixedState& s) {
    return Sides{wigner_entropy(wigner_mixed(s)), std::log(2.0 * M_PI * hbar)};
  };
  const Sides full = eval(rho);
  auto params = base_params(rho.grid(), hbar);
  params["gap_to_conjectured"] = full.lhs - (1.0 + std::log(M_PI * hbar));
  return finish("entropy", describe(rho), Direction::kGE, full, eval(rho.decimated()),
                std::move(params), "strict: the constant d ln(2 pi hbar) is not attained");
}

InequalityReport check_renyi_bound(const MixedState& rho, double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("check_renyi_bound: alpha must be > 1");
  const double hbar = rho.hbar();
  const bool upper_branch = alpha >= 2.0;
  const double bound =
      upper_branch
          ? std::log(M_PI * hbar) + (alpha == kInf ? 0.0 : std::log(alpha) / (alpha - 1.0))
          : std::log(2.0 * M_PI * hbar);
  auto eval = [&](const MixedState& s) {
    return Sides{renyi_entropy(wigner_mixed(s), alpha), bound};
  };
  auto params = base_params(rho.grid(), hbar);
  params["alpha"] = alpha;
  if (!upper_branch) params["sandwich_ln_ratio"] = std::log(alpha) / (alpha - 1.0);
  return finish("renyi", describe(rho), Direction::kGE, eval(rho), eval(rho.decimated()),
                std::move(params),
                upper_branch ? "minimum attained only by Gaussian pure states"
                             : "strict: bound d ln(2 pi hbar) is not attained");
}

InequalityReport check_alpha_to_one_limit(const MixedState& rho,
                                          std::span<const double> eps_list) {
  if (eps_list.empty()) throw std::domain_error("check_alpha_to_one_limit: empty eps list");
  const double hbar = rho.hbar();
  auto eval = [&](const MixedState& s, std::map<std::string, double>* rec) {
    const WignerField w = wigner_mixed(s);
    Sides worst{0.0, 0.0};
    double worst_margin = kInf;
    int i = 0;
    for (double eps : eps_list) {
      const double sigma = eps + eps * eps;
      if (!(eps > 0.0) || !(sigma < 1.0))
        throw std::domain_error("check_alpha_to_one_limit: need eps > 0, eps + eps^2 < 1");
      const double h = renyi_entropy(w, 1.0 + sigma);
      const double bound = std::log(M_PI * hbar) + std::log(2.0 + eps) / (1.0 + eps);
      if (rec) {
        (*rec)["eps" + std::to_string(i)] = eps;
        (*rec)["margin" + std::to_string(i)] = h - bound;
      }
      if (h - bound < worst_margin) {
        worst_margin = h - bound;
        worst = Sides{h, bound};
      }
      ++i;
    }
    return worst;
  };
  auto params = base_params(rho.grid(), hbar);
  params["limit_bound"] = std::log(2.0 * M_PI * hbar);
  const Sides full = eval(rho, &params);
  const Sides half = eval(rho.decimated(), nullptr);
  return finish("alpha-limit", describe(rho), Direction::kGE, full, half,
                std::move(params), "bound tends to d ln(2 pi hbar) as eps -> 0");
}

}  // namespace phasespace
