#include "phasespace/probe.hpp"

#include <algorithm>
#include <cmath>

namespace phasespace {

uint64_t SeededRng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SeededRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

nlohmann::ordered_json ProbeResult::to_json(bool include_trace) const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["best_params"] = best_params;
  j["best_value"] = best_value;
  j["gap_to_proved"] = gap_to_proved;
  j["gap_to_conjectured"] = gap_to_conjectured;
  j["quad_error"] = quad_error;
  j["discretization_fault"] = discretization_fault;
  j["evaluations"] = trace.size();
  if (include_trace) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& e : trace) {
      nlohmann::ordered_json row;
      row["restart"] = e.restart;
      row["params"] = e.params;
      row["value"] = e.value;
      t.push_back(row);
    }
    j["trace"] = t;
  }
  return j;
}

bool positivity_filter(const WignerField& w) {
  double mn = 0.0, sup = 0.0;
  for (double v : w.field().values()) {
    mn = std::min(mn, v);
    sup = std::max(sup, std::abs(v));
  }
  return mn >= -1e-9 * sup;
}

namespace {

using Point = std::vector<double>;

struct Evaluator {
  const StateFamily& family;
  std::vector<ProbeTraceEntry>* trace;
  int restart = 0;
  int evals = 0;

  double operator()(const Point& x) {
    ++evals;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < family.lower[i] || x[i] > family.upper[i]) return kInf;
    double value;
    try {
      const WignerField w = family.generator(x);
      if (family.require_positive && !positivity_filter(w)) {
        value = kInf;  // rejected, not projected
      } else {
        value = wigner_entropy(w);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("probe: generator failed at params [" +
                               [&] {
                                 std::string s;
                                 for (double v : x) s += std::to_string(v) + " ";
                                 return s;
                               }() + "]: " + e.what());
    }
    if (std::isfinite(value)) trace->push_back({restart, x, value});
    return value;
  }
};

// Compact Nelder-Mead on a box; infeasible points carry +inf objective.
void nelder_mead(Evaluator& eval, Point start, double scale, int max_evals,
                 Point* best_x, double* best_f) {
  const size_t dim = start.size();
  std::vector<Point> simplex(dim + 1, start);
  std::vector<double> fv(dim + 1);
  for (size_t i = 1; i <= dim; ++i) simplex[i][i - 1] += scale;
  for (size_t i = 0; i <= dim; ++i) fv[i] = eval(simplex[i]);

  auto record = [&](size_t i) {
    if (fv[i] < *best_f) {
      *best_f = fv[i];
      *best_x = simplex[i];
    }
  };
  for (size_t i = 0; i <= dim; ++i) record(i);

  while (eval.evals < max_evals) {
    std::vector<size_t> order(dim + 1);
    for (size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    const size_t lo = order[0], hi = order[dim], nh = order[dim - 1];

    Point centroid(dim, 0.0);
    for (size_t i = 0; i <= dim; ++i)
      if (i != hi)
        for (size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / dim;

    auto blend = [&](double t) {
      Point p(dim);
      for (size_t k = 0; k < dim; ++k) p[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
      return p;
    };

    Point refl = blend(-1.0);
    double f_refl = eval(refl);
    if (f_refl < fv[lo]) {
      Point expd = blend(-2.0);
      double f_expd = eval(expd);
      if (f_expd < f_refl) {
        simplex[hi] = expd;
        fv[hi] = f_expd;
      } else {
        simplex[hi] = refl;
        fv[hi] = f_refl;
      }
    } else if (f_refl < fv[nh]) {
      simplex[hi] = refl;
      fv[hi] = f_refl;
    } else {
      Point contr = blend(f_refl < fv[hi] ? -0.5 : 0.5);
      double f_contr = eval(contr);
      if (f_contr < std::min(f_refl, fv[hi])) {
        simplex[hi] = contr;
        fv[hi] = f_contr;
      } else {
        for (size_t i = 0; i <= dim; ++i) {
          if (i == lo) continue;
          for (size_t k = 0; k < dim; ++k)
            simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
          fv[i] = eval(simplex[i]);
          record(i);
          if (eval.evals >= max_evals) return;
        }
      }
    }
    record(hi);
  }
}

}  // namespace

ProbeResult minimize_entropy(const StateFamily& family, int budget, uint64_t seed) {
  if (budget < 50) throw std::domain_error("minimize_entropy: budget must be >= 50");
  if (family.lower.size() != family.upper.size() || family.lower.empty())
    throw std::invalid_argument("minimize_entropy: malformed bounds");

  ProbeResult result;
  result.family = family.name;
  result.best_value = kInf;

  constexpr int kRestarts = 5;
  SeededRng rng(seed);
  Evaluator eval{family, &result.trace};
  const int per_restart = std::max(10, budget / kRestarts);
  for (int r = 0; r < kRestarts && eval.evals < budget; ++r) {
    eval.restart = r;
    Point start(family.lower.size());
    for (size_t k = 0; k < start.size(); ++k)
      start[k] = rng.uniform(family.lower[k], family.upper[k]);
    double span = 0.0;
    for (size_t k = 0; k < start.size(); ++k)
      span = std::max(span, family.upper[k] - family.lower[k]);
    const int evals_cap = std::min(budget, eval.evals + per_restart);
    nelder_mead(eval, start, 0.25 * span, evals_cap, &result.best_params,
                &result.best_value);
  }
  if (!std::isfinite(result.best_value))
    throw std::runtime_error("minimize_entropy: no feasible point found");

  const double bound = family.dim * std::log(2.0 * M_PI * family.hbar);
  result.gap_to_proved = result.best_value - bound;
  result.gap_to_conjectured =
      result.best_value - family.dim * (1.0 + std::log(M_PI * family.hbar));
  if (family.generator_half) {
    const double half = wigner_entropy(family.generator_half(result.best_params));
    result.quad_error = std::abs(result.best_value - half);
  }
  result.discretization_fault = result.best_value < bound - (result.quad_error + 1e-6);
  return result;
}

StateFamily gaussian_family(const GridSpec2D& grid, double hbar) {
  auto make_generator = [hbar](GridSpec2D g) {
    return [g, hbar](std::span<const double> params) {
      const double s = std::exp(params[0]);
      const double phi = params[1];
      const double c = std::cos(phi), sn = std::sin(phi);
      // M = R^T diag(s, 1/s) R, det M = 1
      const double m00 = s * c * c + sn * sn / s;
      const double m01 = (s - 1.0 / s) * c * sn;
      const double m11 = s * sn * sn + c * c / s;
      RealField2D f(g);
      for (int i = 0; i < g.x.size(); ++i) {
        const double x = g.x.point(i);
        for (int j = 0; j < g.p.size(); ++j) {
          const double p = g.p.point(j);
          const double q = m00 * x * x + 2.0 * m01 * x * p + m11 * p * p;
          f.at(i, j) = std::exp(-q / hbar) / (M_PI * hbar);
        }
      }
      return WignerField(std::move(f), hbar, "gaussian-family");
    };
  };
  StateFamily fam;
  fam.name = "gaussian";
  fam.lower = {std::log(0.25), 0.0};
  fam.upper = {std::log(4.0), M_PI};
  fam.generator = make_generator(grid);
  GridSpec2D half{GridSpec1D(grid.x.min(), grid.x.max(), grid.x.size() / 2),
                  GridSpec1D(grid.p.min(), grid.p.max(), grid.p.size() / 2)};
  fam.generator_half = make_generator(half);
  fam.hbar = hbar;
  return fam;
}

StateFamily fock_mixture_family(const GridSpec1D& grid, double hbar) {
  auto make_generator = [hbar](const GridSpec1D& g) {
    // cache the two component fields; mixtures are pointwise blends
    auto w0 = std::make_shared<WignerField>(wigner_pure(fock(0, g, hbar)));
    auto w1 = std::make_shared<WignerField>(wigner_pure(fock(1, g, hbar)));
    return [w0, w1, hbar](std::span<const double> params) {
      const double t = params[0];
      RealField2D f(w0->grid());
      for (size_t k = 0; k < f.values().size(); ++k)
        f.values()[k] = t * w0->field().values()[k] + (1.0 - t) * w1->field().values()[k];
      return WignerField(std::move(f), hbar, "fock-mixture-family");
    };
  };
  StateFamily fam;
  fam.name = "fock-mixture";
  fam.lower = {0.0};
  fam.upper = {1.0};
  fam.generator = make_generator(grid);
  fam.generator_half = make_generator(GridSpec1D(grid.min(), grid.max(), grid.size() / 2));
  fam.require_positive = true;
  fam.hbar = hbar;
  return fam;
}

nlohmann::ordered_json ConcavityRecord::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["K"] = k_ratio;
  j["threshold"] = threshold;
  j["l1_f"] = l1_f;
  j["l1_g0"] = l1_g0;
  j["l1_rho"] = l1_rho;
  j["entropy_f"] = entropy_f;
  j["entropy_g0"] = entropy_g0;
  j["entropy_eta"] = entropy_eta;
  j["entropy_rho"] = entropy_rho;
  j["sigma"] = sigma;
  j["sigma1"] = sigma1;
  j["sigma2"] = sigma2;
  return j;
}

namespace {

void require_support(const Ket& k, double lo, double hi, const char* who) {
  for (int i = 0; i < k.grid().size(); ++i) {
    const double x = k.grid().point(i);
    if ((x < lo - 1e-12 || x > hi + 1e-12) && std::abs(k.values()[i]) > 1e-12)
      throw std::domain_error(std::string(who) + ": support leaves the required interval");
  }
}

// -sum |v| s ln(|v| s) * cell; entropy contribution of a block scaled by s.
double entropy_scaled(const RealField2D& f, double s) {
  KahanSum acc;
  for (double v : f.values()) {
    const double m = std::abs(v) * s;
    if (m > 1e-300) acc.add(m * std::log(m));
  }
  return -acc.value() * f.grid().cell_area();
}

double l1_of(const RealField2D& f) {
  KahanSum s;
  for (double v : f.values()) s.add(std::abs(v));
  return s.value() * f.grid().cell_area();
}

}  // namespace

GridSpec1D concavity_p_axis(double hbar) {
  return GridSpec1D::symmetric(64.0 * std::sqrt(hbar), 2048);
}

Ket default_concavity_f(const GridSpec1D& grid, double hbar) {
  // omega = 9.5, c2 = 0.8 gives K near 2.2; lower K makes Sigma < 0
  // unreachable within n <= 128 for this g0 profile.
  return modulated_bump(-1.0, 0.0, 9.5, 0.8, grid, hbar);
}

ConcavityRecord concavity_experiment(const Ket& f, const Ket& g0, int n,
                                     const GridSpec1D& p_axis) {
  if (n < 1) throw std::domain_error("concavity_experiment: n must be >= 1");
  require_support(f, -1.0, 0.0, "concavity_experiment: f");
  require_support(g0, 0.0, 1.0, "concavity_experiment: g0");
  (void)shifted_copy_mixture(g0, n);  // validates shift integrality

  const WignerField wf = wigner_pure(f, p_axis);
  const WignerField wg = wigner_pure(g0, p_axis);

  const double a = l1_of(wf.field());
  const double b = l1_of(wg.field());
  const double K = a / b;
  if (!(K > 1.0))
    throw std::domain_error("concavity_experiment: requires K = ||Wf||_1 / ||Wg0||_1 > 1");

  ConcavityRecord rec;
  rec.n = n;
  rec.k_ratio = K;
  rec.threshold = 2.0 * (K + 1.0) / (K - 1.0) * std::log(2.0 * K);
  rec.l1_f = a;
  rec.l1_g0 = b;
  rec.l1_rho = 0.5 * (a + b);  // strips are disjoint

  rec.entropy_f = entropy_scaled(wf.field(), 1.0 / a);
  rec.entropy_g0 = entropy_scaled(wg.field(), 1.0 / b);
  // W eta_n is n sample-identical copies of W g0 / n on disjoint strips.
  rec.entropy_eta = n * entropy_scaled(wg.field(), 1.0 / (n * b));
  // W rho = (W f + W eta_n)/2, all strips disjoint.
  rec.entropy_rho = entropy_scaled(wf.field(), 0.5 / rec.l1_rho) +
                    n * entropy_scaled(wg.field(), 0.5 / (n * rec.l1_rho));

  rec.sigma = rec.entropy_rho - 0.5 * rec.entropy_f - 0.5 * rec.entropy_eta;
  rec.sigma1 = (a - b) / (4.0 * rec.l1_rho) * (rec.entropy_f - rec.entropy_eta);
  const double wa = a / (2.0 * rec.l1_rho), wb = b / (2.0 * rec.l1_rho);
  rec.sigma2 = -wa * std::log(wa) - wb * std::log(wb);
  return rec;
}

double upper_incomplete_gamma(double s, double x) {
  if (!(s > 0.0) || s > 10.0)
    throw std::domain_error("upper_incomplete_gamma: s must lie in (0, 10]");
  if (!(x >= 0.0)) throw std::domain_error("upper_incomplete_gamma: x must be >= 0");
  const double gam = std::tgamma(s);
  if (x == 0.0) return gam;
  if (x < s + 1.0) {
    // series for P(s,x); Gamma(s,x) = Gamma(s) (1 - P)
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int k = 0; k < 500; ++k) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + s * std::log(x));
    return gam - p;
  }
  // Lentz continued fraction for Gamma(s,x) e^{x} x^{-s}
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

double mu_h1_marginal(double x, double hbar) {
  const double norm1 = 4.0 / std::sqrt(M_E) - 1.0;  // ||W h1||_1
  const double x2h = x * x / hbar;
  if (std::abs(x) >= std::sqrt(0.5 * hbar)) {
    // all of W h1(x, .) is nonnegative: marginal = |h1(x)|^2 / ||W h1||_1
    return 2.0 * x * x * std::exp(-x2h) / (hbar * std::sqrt(M_PI * hbar) * norm1);
  }
  const double u = 0.5 - x2h;
  const double pref = std::exp(-x2h) / (M_PI * hbar * norm1);
  const double t1 = -2.0 * x * x * std::sqrt(M_PI * hbar) / hbar;
  const double t2 = 4.0 * std::exp(x2h - 0.5) * std::sqrt(0.5 * hbar - x * x);
  const double t3 = 4.0 * x * x / std::sqrt(hbar) * upper_incomplete_gamma(0.5, u);
  return pref * (t1 + t2 + t3);
}

nlohmann::ordered_json MarginalMismatchRecord::to_json(bool include_arrays) const {
  nlohmann::ordered_json j;
  j["max_closed_form_dev"] = max_closed_form_dev;
  j["mismatch_at_unit"] = mismatch_at_unit;
  j["seam_gap"] = seam_gap;
  if (include_arrays) {
    j["x"] = xs;
    j["numeric"] = numeric;
    j["closed"] = closed;
    j["true_marginal"] = true_marginal;
  }
  return j;
}

MarginalMismatchRecord marginal_mismatch(double hbar, const GridSpec1D& grid) {
  const Ket h1 = fock(1, grid, hbar);
  const WignerField w = wigner_pure(h1);
  const NormalizedMeasure mu = mu_of(w);
  MarginalMismatchRecord rec;
  rec.xs = grid.points();
  rec.numeric = marginal_x(mu.mu);
  rec.closed.resize(grid.size());
  rec.true_marginal.resize(grid.size());
  const double core = 4.0 * std::sqrt(hbar);
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    rec.closed[i] = mu_h1_marginal(x, hbar);
    const double h1x = std::norm(h1.values()[i]);
    rec.true_marginal[i] = h1x;
    if (std::abs(x) <= core)
      rec.max_closed_form_dev =
          std::max(rec.max_closed_form_dev, std::abs(rec.numeric[i] - rec.closed[i]));
  }
  const double seam = std::sqrt(0.5 * hbar);
  rec.seam_gap = std::abs(mu_h1_marginal(seam * (1.0 - 1e-12), hbar) -
                          mu_h1_marginal(seam, hbar));
  // x = sqrt(hbar) falls on the lattice: index of x/sqrt(hbar) = 1
  const double unit = std::sqrt(hbar);
  const int iu = static_cast<int>(std::llround((unit - grid.min()) / grid.spacing()));
  rec.mismatch_at_unit = std::abs(rec.numeric[iu] - rec.true_marginal[iu]);
  return rec;
}

}  // namespace phasespace
