// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Runs the full state battery (Fock n <= 5, 20 seeded
// three-component mixtures, 10 squeezed/rotated Gaussians) at the default
// 512^2 grids.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "phasespace/inequalities.hpp"
#include "phasespace/io.hpp"
#include "phasespace/probe.hpp"

using namespace phasespace;

namespace {

int g_failures = 0;

void criterion(int index, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] %2d. %-34s %s\n", pass ? "PASS" : "FAIL", index, label.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

MixedState seeded_fock_mixture(uint64_t seed, const GridSpec1D& grid, double hbar) {
  SeededRng rng(seed);
  const int base = static_cast<int>(rng.next_u64() % 4);
  std::vector<double> w(3);
  double sum = 0.0;
  for (double& v : w) {
    v = 0.1 + rng.next_double();
    sum += v;
  }
  std::vector<MixedState::Component> comps;
  for (int k = 0; k < 3; ++k) comps.push_back({w[k] / sum, fock(base + k, grid, hbar)});
  return MixedState::spectral(std::move(comps));
}

std::vector<MixedState> battery(const GridSpec1D& grid, double hbar) {
  std::vector<MixedState> states;
  for (int n = 0; n <= 5; ++n) states.push_back(MixedState::pure(fock(n, grid, hbar)));
  for (uint64_t seed = 1; seed <= 20; ++seed)
    states.push_back(seeded_fock_mixture(seed, grid, hbar));
  for (int i = 0; i < 10; ++i) {
    const double s = std::exp(std::log(1.0 / 2.5) + i * (2.0 * std::log(2.5)) / 9.0);
    const double phi = i * M_PI / 10.0;
    const double c = std::cos(phi), sn = std::sin(phi);
    const std::array<double, 4> m = {s * c * c + sn * sn / s, (s - 1.0 / s) * c * sn,
                                     (s - 1.0 / s) * c * sn, s * sn * sn + c * c / s};
    states.push_back(MixedState::pure(gaussian_ket_for(m, grid, hbar)));
  }
  return states;
}

}  // namespace

int main() {
  const double hbar = 1.0;
  const GridSpec1D grid = default_axis(hbar);
  const Ket h0 = fock(0, grid, hbar);
  const Ket h1 = fock(1, grid, hbar);

  // 1. Fock-1 L1 mass
  {
    const double l1 = lq_norm(wigner_pure(h1).field(), 1.0);
    const double exact = 4.0 / std::sqrt(M_E) - 1.0;
    criterion(1, "fock-1 L1 mass = 4/sqrt(e) - 1", std::abs(l1 - exact) < 1e-3,
              "computed " + fmt(l1) + " vs " + fmt(exact));
  }

  // 2. Gaussian entropy across hbar
  {
    bool pass = true;
    std::string detail;
    for (double hb : {0.5, 1.0, 2.0}) {
      const double s = wigner_entropy(wigner_pure(fock(0, default_axis(hb), hb)));
      const double exact = 1.0 + std::log(M_PI * hb);
      pass = pass && std::abs(s - exact) < 1e-3;
      detail += "hbar=" + fmt(hb) + ":" + fmt(s) + " ";
    }
    criterion(2, "S[fock0] = 1 + ln(pi hbar)", pass, detail);
  }

  const std::vector<MixedState> states = battery(grid, hbar);

  // 3. Proved entropy bound over the battery
  {
    bool pass = true;
    double worst = kInf;
    for (const MixedState& s : states) {
      const InequalityReport r = check_entropy_bound(s);
      worst = std::min(worst, r.margin);
      pass = pass && r.verdict == Verdict::kHolds && r.margin > 0.0;
    }
    criterion(3, "S > ln(2 pi hbar) on battery (36)", pass, "worst margin " + fmt(worst));
  }

  // 4. Renyi saturation for the gaussian, strictness for fock(1)
  {
    bool pass = true;
    std::string detail;
    const WignerField w0 = wigner_pure(h0);
    const WignerField w1 = wigner_pure(h1);
    for (double a : {2.0, 3.0, 5.0, kInf}) {
      const double bound =
          std::log(M_PI * hbar) + (a == kInf ? 0.0 : std::log(a) / (a - 1.0));
      const double sat = renyi_entropy(w0, a);
      const double strict = renyi_entropy(w1, a);
      pass = pass && std::abs(sat - bound) < 1e-3 && (strict - bound) > 1e-3;
      detail += "a=" + (a == kInf ? std::string("inf") : fmt(a)) + ":" +
                fmt(sat - bound) + " ";
    }
    criterion(4, "H_a[fock0] saturates, fock1 strict", pass, detail);
  }

  // 5. Renyi 1 < alpha < 2 branch + remark sandwich
  {
    bool pass = true;
    double worst = kInf;
    for (double a : {1.2, 1.5, 1.8}) {
      const double ratio = std::log(a) / (a - 1.0);
      pass = pass && ratio > std::log(2.0) && ratio < 1.0;
      for (const MixedState& s : states) {
        const double h = renyi_entropy(wigner_mixed(s), a);
        worst = std::min(worst, h - std::log(2.0 * M_PI * hbar));
        pass = pass && h > std::log(2.0 * M_PI * hbar);
      }
    }
    criterion(5, "H_a > ln(2 pi hbar), 1 < a < 2", pass, "worst margin " + fmt(worst));
  }

  // 6. Moyal identity and ambiguity orthogonality on Fock pairs
  {
    std::vector<Ket> ks;
    for (int n = 0; n <= 5; ++n) ks.push_back(fock(n, grid, hbar));
    std::vector<WignerField> ws;
    for (const Ket& k : ks) ws.push_back(wigner_pure(k));
    double worst = 0.0;
    const double scale = 2.0 * M_PI * hbar;
    for (int n = 0; n <= 5; ++n) {
      for (int m = 0; m <= 5; ++m) {
        // || W(h_n, h_m) ||_2^2 = 1 / (2 pi hbar)
        const Field2D wnm = cross_wigner(ks[n], ks[m]);
        const double norm2 = std::pow(lq_norm(wnm, 2.0), 2.0);
        worst = std::max(worst, std::abs(norm2 * scale - 1.0));
        // diagonal orthogonality <W h_n | W h_m> = delta / (2 pi hbar)
        Field2D a(ws[n].grid()), b(ws[m].grid());
        for (size_t t = 0; t < a.values().size(); ++t) {
          a.values()[t] = ws[n].field().values()[t];
          b.values()[t] = ws[m].field().values()[t];
        }
        const double expected = (n == m) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(field_inner(a, b) * scale - expected));
        // || A(h_n, h_m) ||_2 = 1
        worst = std::max(worst,
                         std::abs(lq_norm(ambiguity(ks[n], ks[m]).field(), 2.0) - 1.0));
      }
    }
    criterion(6, "Moyal + ambiguity orthogonality", worst < 1e-5,
              "worst relative error " + fmt(worst));
  }

  // 7. Lieb equality / strictness
  {
    const InequalityReport eq_u = check_lieb_upper(h0, h0, 2.0, 4.0);
    const InequalityReport eq_l = check_lieb_lower(h0, h0, 2.0, 1.5);
    const InequalityReport st_u = check_lieb_upper(h0, h1, 2.0, 4.0);
    const InequalityReport st_l = check_lieb_lower(h0, h1, 2.0, 1.5);
    const bool pass = std::abs(eq_u.lhs - eq_u.rhs) < 1e-3 * eq_u.rhs &&
                      std::abs(eq_l.lhs - eq_l.rhs) < 1e-3 * eq_l.rhs &&
                      st_u.margin > 1e-3 && st_l.margin > 1e-3;
    criterion(7, "Lieb bounds: equality + strictness", pass,
              "eq margins " + fmt(eq_u.margin) + "/" + fmt(eq_l.margin) + ", strict " +
                  fmt(st_u.margin) + "/" + fmt(st_l.margin));
  }

  // 8. Interpolation inequality sweep, ambiguity and Wigner versions
  {
    const Ket h2 = fock(2, grid, hbar);
    const Ket sq = gaussian_ket_for({1.5, 0.0, 0.0, 1.0 / 1.5}, grid, hbar);
    const Ket rot = gaussian_ket_for({1.2, 0.3, 0.3, (1.0 + 0.09) / 1.2}, grid, hbar);
    const std::vector<std::pair<Ket, Ket>> pairs = {
        {h0, h0}, {h0, h1}, {h1, h2}, {sq, h0}, {sq, rot}};
    bool pass = true;
    double worst = kInf;
    int count = 0;
    for (double q : {1.2, 1.5, 1.8}) {
      for (double frac : {0.25, 0.5, 0.75}) {
        const double theta = (2.0 - q) + frac * (q - 1.0);
        for (const auto& [f, g] : pairs) {
          const InequalityReport r = check_new_inequality(f, g, q, theta, 2.0);
          pass = pass && r.verdict == Verdict::kHolds && r.margin > 0.0;
          worst = std::min(worst, r.margin / std::max(r.rhs, 1e-300));
          ++count;
        }
        const InequalityReport w =
            check_wigner_interpolation(MixedState::pure(pairs[count % 5].first), q, theta);
        pass = pass && w.verdict != Verdict::kViolated && w.margin > 0.0;
      }
    }
    criterion(8, "interpolation ineq: strict on sweep", pass,
              std::to_string(count) + " checks, worst relative margin " + fmt(worst));
  }

  // 9. Measure properties of nu
  {
    bool pass = true;
    double worst_sup = 0.0, worst_mass = 0.0, worst_ident = 0.0;
    for (const MixedState& s : states) {
      const WignerField w = wigner_mixed(s);
      const AuxiliaryMeasure nu = nu_of(w);
      worst_sup = std::max(worst_sup, max_abs(nu.nu) - 1.0);
      worst_mass = std::max(worst_mass, std::abs(integrate(nu.nu) - M_PI * hbar));
      const double lhs = measure_entropy(nu.nu);
      const double rhs = M_PI * hbar * (wigner_entropy(w) - std::log(M_PI * hbar));
      worst_ident = std::max(worst_ident, std::abs(lhs - rhs) / std::abs(rhs));
    }
    pass = worst_sup <= 1e-6 && worst_mass < 1e-3 && worst_ident < 1e-4;
    // q = 2 equality holds exactly for Wigner-positive pure states (Gaussians);
    // fock(1) is pure but not Wigner-positive, hence strict.
    const InequalityReport eq = check_measure_bounds(MixedState::pure(h0), 2.0);
    const InequalityReport strict = check_measure_bounds(MixedState::pure(h1), 2.0);
    pass = pass && std::abs(eq.lhs - eq.rhs) < 1e-3 && strict.margin > 1e-3;
    criterion(9, "nu bounds + H[nu] identity", pass,
              "sup excess " + fmt(worst_sup) + ", mass dev " + fmt(worst_mass) +
                  ", identity rel " + fmt(worst_ident));
  }

  // 10. Proof machinery: K_eps sandwich and xi limit
  {
    bool pass = true;
    double worst = kInf;
    for (const MixedState& s : states) {
      const WignerField w = wigner_mixed(s);
      const double hn = measure_entropy(nu_of(w).nu);
      for (double eps : {0.2, 0.1, 0.05}) {
        const double k = k_epsilon(w, eps);
        pass = pass && k >= -1e-4 && k <= hn + 1e-4;
        worst = std::min(worst, hn - k);
      }
    }
    for (double a : {1.2, 1.5, 1.8}) {
      const double v = xi(2.0 - a + 1e-6, a);
      pass = pass && std::abs(v - std::log(2.0)) < 1e-5;
    }
    criterion(10, "0 <= K_eps <= H[nu]; xi -> ln 2", pass,
              "min H[nu]-K_eps " + fmt(worst));
  }

  // 11. mu-marginal closed forms
  {
    const MarginalMismatchRecord r = marginal_mismatch(hbar, grid);
    // 20 sample points spanning the core, including the lattice point
    // closest to the seam |x| = sqrt(hbar/2)
    const double seam = std::sqrt(0.5 * hbar);
    double worst = 0.0;
    const int i_seam = static_cast<int>(std::llround((seam - grid.min()) / grid.spacing()));
    std::vector<int> idx = {i_seam, i_seam + 1, i_seam - 1};
    for (int k = 0; k < 17; ++k)
      idx.push_back(grid.size() / 2 - 40 + 5 * k);
    for (int i : idx) worst = std::max(worst, std::abs(r.numeric[i] - r.closed[i]));
    const bool pass = worst < 1e-3 && r.seam_gap < 1e-6 && r.mismatch_at_unit > 0.1;
    criterion(11, "mu-marginal closed forms", pass,
              "max dev " + fmt(worst) + ", seam gap " + fmt(r.seam_gap) +
                  ", mismatch at x=1: " + fmt(r.mismatch_at_unit));
  }

  // 12. Shifted-copy non-concavity
  {
    const Ket g0 = bump(0.0, 1.0, grid, hbar);
    const Ket f = default_concavity_f(grid, hbar);
    const GridSpec1D p_axis = concavity_p_axis(hbar);
    bool pass = true;
    std::string detail;
    for (int n : {2, 4, 8}) {
      const ConcavityRecord r = concavity_experiment(f, g0, n, p_axis);
      pass = pass && std::abs(r.entropy_eta - r.entropy_g0 - std::log(double(n))) < 2e-2;
      pass = pass && std::abs(r.sigma - (r.sigma1 + r.sigma2)) < 1e-6;
    }
    const ConcavityRecord big = concavity_experiment(f, g0, 128, p_axis);
    pass = pass && std::abs(big.sigma - (big.sigma1 + big.sigma2)) < 1e-6;
    pass = pass && big.sigma < 0.0 && big.k_ratio > 1.8 && big.k_ratio < 2.5;
    detail = "K = " + fmt(big.k_ratio) + ", Sigma(128) = " + fmt(big.sigma);
    criterion(12, "non-concavity: S scaling, Sigma < 0", pass, detail);
  }

  // 13. Constant consistency
  {
    bool pass = true;
    double worst = 0.0;
    int count = 0;
    for (double q = 2.2; q <= 6.2; q += 0.41) {
      const double qc = q / (q - 1.0);
      for (double t = 0.1; t <= 0.95; t += 0.17) {
        const double p = qc + t * (q - qc);
        for (int d : {1, 2}) {
          const double a = lieb_constant(p, q, d);
          const double b = lieb_constant_via_cr(p, q, d);
          worst = std::max(worst, std::abs(a - b));
          ++count;
        }
      }
    }
    pass = worst < 1e-12 && count >= 50;
    for (double q : {2.0, 2.7, 4.0, 5.5})
      for (int d : {1, 2, 3})
        pass = pass && std::abs(lieb_constant(2.0, q, d) - std::pow(2.0 / q, double(d) / q)) <
                           1e-14;
    criterion(13, "H(p,q,d) two-form consistency", pass,
              std::to_string(count) + " points, worst dev " + fmt(worst));
  }

  std::printf("%s: %d/13 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              13 - g_failures);
  return g_failures;
}
