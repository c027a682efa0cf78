// Command-line front end: state ingestion, Wigner/ambiguity transforms,
// batch inequality verification with JSON/CSV reports, and the experiment
// drivers (entropy minimization, non-concavity, marginal mismatch).
//
// Exit codes: 0 success; 1 theorem-violating verdict; 2 bad state spec or
// usage; 3 resolution error (grid too coarse); 4 inadmissible parameter
// combination recorded during verify.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

#include "phasespace/inequalities.hpp"
#include "phasespace/io.hpp"
#include "phasespace/probe.hpp"

using namespace phasespace;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitBadSpec = 2;
constexpr int kExitResolution = 3;
constexpr int kExitInadmissible = 4;

struct GridConfig {
  double hbar = 1.0;
  int n = 512;
  double extent_units = 8.0;  // in units of sqrt(hbar)

  GridSpec1D axis() const {
    return GridSpec1D::symmetric(extent_units * std::sqrt(hbar), n);
  }
};

struct NamedState {
  std::string label;
  MixedState state;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
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

MixedState state_from_token(const std::string& token, const GridSpec1D& grid,
                            double hbar) {
  if (token.empty()) throw std::invalid_argument("empty state token");
  if (token.front() == '{' || token.front() == '[')
    return load_state(nlohmann::json::parse(token), grid, hbar);
  if (token.front() == '@') {
    std::ifstream is(token.substr(1));
    if (!is) throw std::invalid_argument("cannot open state file " + token.substr(1));
    nlohmann::json j;
    is >> j;
    return load_state(j, grid, hbar);
  }
  const auto parts = split(token, ':');
  const std::string& kind = parts[0];
  if (kind == "fock") {
    if (parts.size() != 2) throw std::invalid_argument("usage: fock:<n>");
    return MixedState::pure(fock(std::stoi(parts[1]), grid, hbar));
  }
  if (kind == "mix") {
    if (parts.size() == 2 && parts[1] == "default") {
      return MixedState::spectral(
          {{0.5, fock(0, grid, hbar)}, {0.5, fock(1, grid, hbar)}});
    }
    if (parts.size() == 2 && parts[1].rfind("seed", 0) == 0)
      return seeded_fock_mixture(std::stoull(parts[1].substr(4)), grid, hbar);
    throw std::invalid_argument("usage: mix:default or mix:seed<k>");
  }
  if (kind == "gauss") {
    const double s = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
    const double phi = parts.size() > 2 ? std::stod(parts[2]) : 0.0;
    const double c = std::cos(phi), sn = std::sin(phi);
    const std::array<double, 4> m = {s * c * c + sn * sn / s, (s - 1.0 / s) * c * sn,
                                     (s - 1.0 / s) * c * sn, s * sn * sn + c * c / s};
    return MixedState::pure(gaussian_ket_for(m, grid, hbar));
  }
  if (kind == "bump") {
    if (parts.size() < 3) throw std::invalid_argument("usage: bump:<a>:<b>[:<omega>[:<c2>]]");
    const double a = std::stod(parts[1]), b = std::stod(parts[2]);
    const double omega = parts.size() > 3 ? std::stod(parts[3]) : 0.0;
    const double c2 = parts.size() > 4 ? std::stod(parts[4]) : 0.0;
    return MixedState::pure(modulated_bump(a, b, omega, c2, grid, hbar));
  }
  throw std::invalid_argument("unknown state token '" + token + "'");
}

std::vector<NamedState> parse_states(const std::string& list, const GridSpec1D& grid,
                                     double hbar) {
  std::vector<NamedState> out;
  for (const std::string& tok : split(list, ',')) {
    if (tok.empty()) continue;
    out.push_back({tok, state_from_token(tok, grid, hbar)});
  }
  if (out.empty()) throw std::invalid_argument("no states given");
  return out;
}

// ---------------------------------------------------------------- wigner --

int cmd_wigner(const GridConfig& gc, const std::string& state_spec,
               const std::string& out_path, const std::string& format) {
  const GridSpec1D grid = gc.axis();
  const MixedState rho = state_from_token(state_spec, grid, gc.hbar);
  const WignerField w = wigner_mixed(rho);

  std::cout.precision(10);
  std::cout << "state:          " << state_spec << "\n"
            << "hbar:           " << gc.hbar << "\n"
            << "grid:           " << gc.n << " x " << gc.n << " on [" << grid.min()
            << ", " << grid.max() << ")\n"
            << "normalization:  " << w.normalization() << "\n"
            << "sup norm:       " << max_abs(w.field()) << "\n"
            << "L1 mass:        " << lq_norm(w.field(), 1.0) << "\n"
            << "purity:         " << purity(w) << "\n";
  if (!out_path.empty()) {
    if (format == "csv") {
      write_field_csv(out_path, w.field());
    } else if (format == "bin") {
      write_field_binary(out_path, w.field(), w.hbar());
    } else {
      throw std::invalid_argument("wigner --format must be csv or bin");
    }
    std::cout << "written:        " << out_path << " (" << format << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify --

struct VerifyOutcome {
  std::vector<InequalityReport> reports;
  std::vector<nlohmann::ordered_json> errors;
};

const std::vector<std::string> kAllChecks = {
    "lieb-upper", "lieb-lower", "mixed-lq",       "new-ineq", "wigner-interp",
    "measure-bounds", "entropy", "renyi", "alpha-limit"};

void run_check(const std::string& check, const std::vector<NamedState>& states,
               const std::vector<double>& qs, const std::vector<double>& thetas,
               const std::vector<double>& alphas, const std::vector<double>& ps,
               const std::vector<double>& eps, VerifyOutcome* out) {
  auto record_error = [&](const std::string& state, const std::string& what,
                          std::map<std::string, double> params) {
    nlohmann::ordered_json e;
    e["name"] = check;
    e["state"] = state;
    e["params"] = params;
    e["error"] = what;
    out->errors.push_back(std::move(e));
  };

  auto pure_kets = [&]() {
    std::vector<std::pair<std::string, Ket>> kets;
    for (const NamedState& s : states)
      if (s.state.components().size() == 1)
        kets.emplace_back(s.label, s.state.components()[0].ket);
    return kets;
  };

  auto run_pairwise = [&](auto&& fn, const std::map<std::string, double>& params) {
    const auto kets = pure_kets();
    for (size_t i = 0; i < kets.size(); ++i) {
      for (size_t j = i; j < kets.size(); ++j) {
        const std::string label = kets[i].first + "|" + kets[j].first;
        try {
          InequalityReport r = fn(kets[i].second, kets[j].second);
          r.state = label;
          out->reports.push_back(std::move(r));
        } catch (const std::domain_error& e) {
          record_error(label, e.what(), params);
        }
      }
    }
  };

  auto run_per_state = [&](auto&& fn, const std::map<std::string, double>& params) {
    for (const NamedState& s : states) {
      try {
        InequalityReport r = fn(s.state);
        r.state = s.label;
        out->reports.push_back(std::move(r));
      } catch (const std::domain_error& e) {
        record_error(s.label, e.what(), params);
      }
    }
  };

  auto theta_for = [&](double q, size_t idx) {
    if (!thetas.empty()) return thetas[std::min(idx, thetas.size() - 1)];
    return 0.5 * (3.0 - q);  // admissible midpoint of (2-q, 1)
  };

  if (check == "lieb-upper") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{2.0, 4.0} : qs;
    const std::vector<double> plist = ps.empty() ? std::vector<double>{2.0} : ps;
    for (double q : qlist)
      for (double p : plist)
        run_pairwise([&](const Ket& f, const Ket& g) { return check_lieb_upper(f, g, p, q); },
                     {{"p", p}, {"q", q}});
  } else if (check == "lieb-lower") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{1.0, 1.5} : qs;
    const std::vector<double> plist = ps.empty() ? std::vector<double>{2.0} : ps;
    for (double q : qlist)
      for (double p : plist)
        run_pairwise([&](const Ket& f, const Ket& g) { return check_lieb_lower(f, g, p, q); },
                     {{"p", p}, {"q", q}});
  } else if (check == "mixed-lq") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{2.0, 4.0} : qs;
    for (double q : qlist)
      run_per_state([&](const MixedState& s) { return check_mixed_lq_bound(s, q); },
                    {{"q", q}});
  } else if (check == "new-ineq") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{1.2, 1.5, 1.8} : qs;
    const std::vector<double> plist = ps.empty() ? std::vector<double>{2.0} : ps;
    size_t ti = 0;
    for (double q : qlist) {
      const double theta = theta_for(q, ti++);
      for (double p : plist)
        run_pairwise(
            [&](const Ket& f, const Ket& g) { return check_new_inequality(f, g, q, theta, p); },
            {{"p", p}, {"q", q}, {"theta", theta}});
    }
  } else if (check == "wigner-interp") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{1.2, 1.5, 1.8} : qs;
    size_t ti = 0;
    for (double q : qlist) {
      const double theta = theta_for(q, ti++);
      run_per_state(
          [&](const MixedState& s) { return check_wigner_interpolation(s, q, theta); },
          {{"q", q}, {"theta", theta}});
    }
  } else if (check == "measure-bounds") {
    const std::vector<double> qlist = qs.empty() ? std::vector<double>{2.0, 1.5} : qs;
    size_t ti = 0;
    for (double q : qlist) {
      std::optional<double> theta;
      std::map<std::string, double> params{{"q", q}};
      if (q < 2.0) {
        theta = theta_for(q, ti++);
        params["theta"] = *theta;
      }
      run_per_state([&](const MixedState& s) { return check_measure_bounds(s, q, theta); },
                    params);
    }
  } else if (check == "entropy") {
    run_per_state([&](const MixedState& s) { return check_entropy_bound(s); }, {});
  } else if (check == "renyi") {
    const std::vector<double> alist = alphas.empty() ? std::vector<double>{1.5, 2.0, 3.0} : alphas;
    for (double a : alist)
      run_per_state([&](const MixedState& s) { return check_renyi_bound(s, a); },
                    {{"alpha", a}});
  } else if (check == "alpha-limit") {
    const std::vector<double> elist = eps.empty() ? std::vector<double>{0.2, 0.1, 0.05} : eps;
    run_per_state([&](const MixedState& s) { return check_alpha_to_one_limit(s, elist); },
                  {{"eps_count", double(elist.size())}});
  } else {
    throw std::invalid_argument("unknown check '" + check + "'");
  }
}

int cmd_verify(const GridConfig& gc, std::vector<std::string> checks,
               const std::string& states_list, const std::vector<double>& qs,
               const std::vector<double>& thetas, const std::vector<double>& alphas,
               const std::vector<double>& ps, const std::vector<double>& eps,
               double tol, const std::string& out_path, const std::string& format) {
  const GridSpec1D grid = gc.axis();
  const std::vector<NamedState> states = parse_states(states_list, grid, gc.hbar);
  if (checks.empty()) checks = kAllChecks;
  std::sort(checks.begin(), checks.end());

  VerifyOutcome outcome;
  for (const std::string& c : checks)
    run_check(c, states, qs, thetas, alphas, ps, eps, &outcome);

  for (InequalityReport& r : outcome.reports)
    if (tol > 0.0) r.equality_tolerance = tol;

  // canonical ordering: check name, then state label, then parameter string
  std::sort(outcome.reports.begin(), outcome.reports.end(),
            [](const InequalityReport& a, const InequalityReport& b) {
              if (a.name != b.name) return a.name < b.name;
              if (a.state != b.state) return a.state < b.state;
              return a.csv_row() < b.csv_row();
            });

  int violated = 0, equalities = 0;
  for (const InequalityReport& r : outcome.reports) {
    if (r.verdict == Verdict::kViolated) ++violated;
    if (r.verdict == Verdict::kEqualityWithinTolerance) ++equalities;
  }
  std::cout << "checks run:   " << outcome.reports.size() << "\n"
            << "holds:        " << outcome.reports.size() - violated - equalities << "\n"
            << "equalities:   " << equalities << "\n"
            << "violations:   " << violated << "\n"
            << "inadmissible: " << outcome.errors.size() << "\n";
  for (const auto& e : outcome.errors)
    std::cout << "  [range error] " << e["name"].get<std::string>() << " on "
              << e["state"].get<std::string>() << ": " << e["error"].get<std::string>()
              << "\n";

  if (!out_path.empty()) {
    if (format == "csv") {
      std::ofstream os(out_path);
      os << InequalityReport::csv_header() << '\n';
      for (const auto& r : outcome.reports) os << r.csv_row() << '\n';
      for (const auto& e : outcome.errors)
        os << e["name"].get<std::string>() << ',' << e["state"].get<std::string>()
           << ",,,nan,nan,nan,nan,inadmissible\n";
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : outcome.reports) arr.push_back(r.to_json());
      for (const auto& e : outcome.errors) arr.push_back(e);
      std::ofstream os(out_path);
      os << arr.dump(2) << '\n';
    }
    std::cout << "report:       " << out_path << "\n";
  }

  if (!outcome.errors.empty()) return kExitInadmissible;
  if (violated > 0) return kExitViolation;
  return 0;
}

// ----------------------------------------------------------------- probe --

int cmd_probe_minimize(const GridConfig& gc, const std::string& family_name, int budget,
                       uint64_t seed, const std::string& out_path, bool with_trace) {
  StateFamily family;
  if (family_name == "gaussian") {
    family = gaussian_family(GridSpec2D{gc.axis(), gc.axis()}, gc.hbar);
  } else if (family_name == "fock-mixture") {
    family = fock_mixture_family(gc.axis(), gc.hbar);
  } else {
    throw std::invalid_argument("unknown family '" + family_name + "'");
  }
  const ProbeResult r = minimize_entropy(family, budget, seed);
  std::cout.precision(10);
  std::cout << "family:              " << r.family << "\n"
            << "best entropy:        " << r.best_value << "\n"
            << "gap to proved:       " << r.gap_to_proved << "\n"
            << "gap to conjectured:  " << r.gap_to_conjectured << "\n"
            << "evaluations:         " << r.trace.size() << "\n";
  if (r.discretization_fault)
    std::cout << "WARNING: best value undercuts the proved bound beyond the error budget\n";
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << r.to_json(with_trace).dump(2) << '\n';
    std::cout << "written:             " << out_path << "\n";
  }
  return 0;
}

int cmd_probe_concavity(const GridConfig& gc, int n, double omega, double c2,
                        const std::string& out_path) {
  const GridSpec1D grid = gc.axis();
  const Ket g0 = bump(0.0, 1.0, grid, gc.hbar);
  const Ket f = modulated_bump(-1.0, 0.0, omega, c2, grid, gc.hbar);
  const ConcavityRecord r = concavity_experiment(f, g0, n, concavity_p_axis(gc.hbar));
  std::cout.precision(10);
  std::cout << "n:          " << r.n << "\n"
            << "K:          " << r.k_ratio << "\n"
            << "threshold:  " << r.threshold << " (sufficient S[W eta]-S[W f])\n"
            << "S[W f]:     " << r.entropy_f << "\n"
            << "S[W g0]:    " << r.entropy_g0 << "\n"
            << "S[W eta_n]: " << r.entropy_eta << "\n"
            << "S[W rho]:   " << r.entropy_rho << "\n"
            << "Sigma:      " << r.sigma << (r.sigma < 0 ? "  (concavity violated)" : "")
            << "\n"
            << "Sigma1:     " << r.sigma1 << "\n"
            << "Sigma2:     " << r.sigma2 << "\n";
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << r.to_json().dump(2) << '\n';
    std::cout << "written:    " << out_path << "\n";
  }
  return 0;
}

int cmd_probe_marginals(const GridConfig& gc, const std::string& out_path, bool arrays) {
  const MarginalMismatchRecord r = marginal_mismatch(gc.hbar, gc.axis());
  std::cout.precision(10);
  std::cout << "max |numeric - closed form|: " << r.max_closed_form_dev << "\n"
            << "branch seam gap:             " << r.seam_gap << "\n"
            << "mismatch vs true marginal at x = sqrt(hbar): " << r.mismatch_at_unit
            << "\n";
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << r.to_json(arrays).dump(2) << '\n';
    std::cout << "written: " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasespace: Wigner/ambiguity transforms, entropy functionals, and "
               "inequality certification on sampled quantum states"};
  app.require_subcommand(1);
  app.fallthrough(true);  // accept global flags after the subcommand name

  GridConfig gc;
  app.add_option("--hbar", gc.hbar, "Planck constant over 2 pi")->check(CLI::PositiveNumber);
  app.add_option("--grid-n", gc.n, "samples per axis (power of two)");
  app.add_option("--grid-extent", gc.extent_units, "axis half-width in units of sqrt(hbar)");

  std::string out_path, format = "json";
  app.add_option("--out", out_path, "output file path");
  app.add_option("--format", format, "output format (json|csv|bin)");
  uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for stochastic drivers");
  double tol = 0.0;
  app.add_option("--tol", tol, "equality tolerance override (relative)");

  // wigner
  auto* wig = app.add_subcommand("wigner", "compute a Wigner field and its summary");
  std::string state_spec = "fock:0";
  wig->add_option("--state", state_spec, "state spec (fock:n, gauss:s[:phi], bump:a:b, "
                                         "mix:default, mix:seed<k>, inline JSON, @file)");

  // verify
  auto* ver = app.add_subcommand("verify", "run inequality checks and emit reports");
  std::vector<std::string> checks;
  ver->add_option("--check", checks, "check name (repeatable); default: all");
  std::string suite;
  ver->add_option("--suite", suite, "'all' selects every check");
  std::string states_list = "fock:0,fock:1,mix:default";
  ver->add_option("--states", states_list, "comma-separated state tokens");
  std::vector<double> qs, thetas, alphas, ps, eps;
  ver->add_option("--q", qs, "q exponents");
  ver->add_option("--theta", thetas, "theta parameters");
  ver->add_option("--alpha", alphas, "Renyi orders");
  ver->add_option("--p", ps, "p exponents");
  ver->add_option("--eps", eps, "epsilon list for the alpha limit");

  // probe
  auto* probe = app.add_subcommand("probe", "experiment drivers");
  probe->require_subcommand(1);
  auto* mini = probe->add_subcommand("minimize", "minimize Wigner entropy over a family");
  std::string family = "gaussian";
  int budget = 500;
  bool with_trace = false;
  mini->add_option("--family", family, "gaussian | fock-mixture");
  mini->add_option("--budget", budget, "total generator evaluations (>= 50)");
  mini->add_flag("--trace", with_trace, "include the evaluation trace in JSON output");
  auto* conc = probe->add_subcommand("concavity", "shifted-copy non-concavity experiment");
  int conc_n = 64;
  double conc_omega = 9.5, conc_c2 = 0.8;
  conc->add_option("--n", conc_n, "number of shifted copies");
  conc->add_option("--omega", conc_omega, "modulation frequency of f");
  conc->add_option("--c2", conc_c2, "second-harmonic weight of f");
  auto* marg = probe->add_subcommand("marginals", "mu marginal vs the true marginal");
  bool arrays = false;
  marg->add_flag("--arrays", arrays, "include per-point arrays in JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*wig) return cmd_wigner(gc, state_spec, out_path, format == "json" ? "csv" : format);
    if (*ver) {
      if (!suite.empty() && suite != "all")
        throw std::invalid_argument("--suite accepts only 'all'");
      if (!suite.empty()) checks.clear();
      return cmd_verify(gc, checks, states_list, qs, thetas, alphas, ps, eps, tol,
                        out_path, format);
    }
    if (*mini) return cmd_probe_minimize(gc, family, budget, seed, out_path, with_trace);
    if (*conc) return cmd_probe_concavity(gc, conc_n, conc_omega, conc_c2, out_path);
    if (*marg) return cmd_probe_marginals(gc, out_path, arrays);
  } catch (const resolution_error& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return kExitResolution;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad state spec: " << e.what() << "\n";
    return kExitBadSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadSpec;
  }
  return kExitBadSpec;
}
