#include "phasespace/states.hpp"

#include <algorithm>
#include <cmath>

namespace phasespace {

namespace {

constexpr double kUnitNormTol = 1e-9;

double l2_norm_raw(std::span<const complex> v, double dx) {
  KahanSum s;
  for (const complex& c : v) s.add(std::norm(c));
  return std::sqrt(s.value() * dx);
}

}  // namespace

Ket::Ket(GridSpec1D grid, std::vector<complex> values, double hbar, Sampler sampler)
    : grid_(grid), values_(std::move(values)), hbar_(hbar), sampler_(std::move(sampler)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw std::invalid_argument("Ket: sample count does not match grid");
  if (!(hbar_ > 0.0)) throw std::domain_error("Ket: hbar must be > 0");
  for (const complex& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("Ket: non-finite sample");
  const double nrm = l2_norm_raw(values_, grid_.spacing());
  if (std::abs(nrm - 1.0) > kUnitNormTol)
    throw std::invalid_argument("Ket: samples are not unit-normalized (|norm-1| = " +
                                std::to_string(std::abs(nrm - 1.0)) + ")");
}

Ket Ket::normalized(GridSpec1D grid, std::vector<complex> values, double hbar,
                    Sampler sampler) {
  const double nrm = l2_norm_raw(values, grid.spacing());
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::invalid_argument("Ket::normalized: zero or non-finite norm");
  for (complex& v : values) v /= nrm;
  Sampler scaled;
  if (sampler) scaled = [sampler, nrm](double x) { return sampler(x) / nrm; };
  return Ket(grid, std::move(values), hbar, std::move(scaled));
}

Ket Ket::decimated() const {
  const int n2 = grid_.size() / 2;
  if (n2 < 2) throw resolution_error("Ket::decimated: grid too small to halve");
  GridSpec1D g2(grid_.min(), grid_.max(), n2);
  std::vector<complex> v(n2);
  for (int i = 0; i < n2; ++i) v[i] = values_[2 * i];
  return Ket::normalized(g2, std::move(v), hbar_, sampler_);
}

double l2_norm(const Ket& f) { return l2_norm_raw(f.values(), f.grid().spacing()); }

complex inner(const Ket& f, const Ket& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("inner: kets live on different grids");
  KahanSum re, im;
  for (int i = 0; i < f.grid().size(); ++i) {
    const complex t = std::conj(f.values()[i]) * g.values()[i];
    re.add(t.real());
    im.add(t.imag());
  }
  return complex{re.value(), im.value()} * f.grid().spacing();
}

namespace {

// Normalized Hermite function phi_n(u) by the stable three-term recurrence;
// never forms H_n or factorials.
double hermite_fn(int n, double u) {
  const double phi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u);
  if (n == 0) return phi0;
  double prev = phi0;
  double cur = std::sqrt(2.0) * u * phi0;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * u * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

Ket fock(int n, const GridSpec1D& grid, double hbar) {
  if (n < 0) throw std::domain_error("fock: n must be >= 0");
  if (n > 20) throw capability_error("fock: n > 20 exceeds the stability guard");
  const double root_h = std::sqrt(hbar);
  auto sampler = [n, root_h](double x) -> complex {
    return hermite_fn(n, x / root_h) / std::sqrt(root_h);
  };
  std::vector<complex> v(grid.size());
  for (int i = 0; i < grid.size(); ++i) v[i] = sampler(grid.point(i));
  // Closed form is already unit-norm; normalize anyway to absorb the grid
  // truncation at the 1e-12 level.
  return Ket::normalized(grid, std::move(v), hbar, sampler);
}

std::pair<Ket, Ket> matched_gaussian_pair(const GaussianParams& params,
                                          const GridSpec1D& grid, double hbar) {
  if (!(params.a.real() > 0.0))
    throw std::domain_error("matched_gaussian_pair: Re(a) must be > 0");
  auto make = [&](complex lin, complex off) {
    const complex a = params.a;
    auto sampler = [a, lin, off](double x) {
      return std::exp(-a * x * x + lin * x + off);
    };
    std::vector<complex> v(grid.size());
    for (int i = 0; i < grid.size(); ++i) v[i] = sampler(grid.point(i));
    return Ket::normalized(grid, std::move(v), hbar, sampler);
  };
  return {make(params.b, params.gamma), make(params.c, params.eta)};
}

namespace {

std::array<double, 4> mat_mul(const std::array<double, 4>& a,
                              const std::array<double, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

SymplecticMap::SymplecticMap(std::array<double, 4> s) : s_(s) {
  // S J S^T = J  with  J = [[0,1],[-1,0]]  reduces to det S = 1 for d = 1,
  // but is checked in matrix form to match the general definition.
  const double det = s_[0] * s_[3] - s_[1] * s_[2];
  const double scale = std::abs(s_[0]) + std::abs(s_[1]) + std::abs(s_[2]) + std::abs(s_[3]);
  if (std::abs(det - 1.0) > 1e-10 * std::max(1.0, scale * scale))
    throw std::domain_error("SymplecticMap: S J S^T != J");
}

SymplecticMap SymplecticMap::rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return SymplecticMap({c, -s, s, c});
}

SymplecticMap SymplecticMap::squeeze(double s) {
  if (!(s > 0.0)) throw std::domain_error("SymplecticMap::squeeze: s must be > 0");
  return SymplecticMap({s, 0.0, 0.0, 1.0 / s});
}

SymplecticMap SymplecticMap::shear(double lambda) {
  return SymplecticMap({1.0, lambda, 0.0, 1.0});
}

SymplecticMap SymplecticMap::inverse() const {
  // det = 1, so the inverse is the adjugate.
  return SymplecticMap({s_[3], -s_[1], -s_[2], s_[0]});
}

SymplecticMap SymplecticMap::transpose_times(const SymplecticMap& rhs) const {
  std::array<double, 4> st = {s_[0], s_[2], s_[1], s_[3]};
  return SymplecticMap(mat_mul(st, rhs.s_));
}

std::array<double, 2> SymplecticMap::apply(double x, double p) const {
  return {s_[0] * x + s_[1] * p, s_[2] * x + s_[3] * p};
}

Ket gaussian_ket_for(const std::array<double, 4>& m, const GridSpec1D& grid,
                     double hbar) {
  const double det = m[0] * m[3] - m[1] * m[2];
  if (std::abs(det - 1.0) > 1e-8 || std::abs(m[1] - m[2]) > 1e-12 || !(m[3] > 0.0))
    throw std::domain_error("gaussian_ket_for: M must be symmetric positive-definite symplectic");
  // W(z) = sqrt(det M)/(pi hbar) exp(-z.Mz/hbar) corresponds to the pure
  // Gaussian exp(-a x^2) with a = (1 + i m01) / (2 hbar m11).
  const complex a = complex{1.0, m[1]} / (2.0 * hbar * m[3]);
  return matched_gaussian_pair({a}, grid, hbar).first;
}

namespace {

double bump_profile(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

Ket bump_impl(double a, double b, double omega, double c2, const GridSpec1D& grid,
              double hbar) {
  if (!(b > a)) throw std::domain_error("bump: support must satisfy b > a");
  if (a <= grid.min() || b >= grid.max())
    throw std::domain_error("bump: support must lie strictly inside the grid");
  auto sampler = [a, b, omega, c2](double x) -> complex {
    const double u = (2.0 * x - (a + b)) / (b - a);
    const double env = bump_profile(u);
    if (env == 0.0) return {0.0, 0.0};
    const double mod = (omega == 0.0) ? 1.0 : std::cos(omega * u) + c2 * std::cos(2.0 * omega * u);
    return {env * mod, 0.0};
  };
  std::vector<complex> v(grid.size());
  for (int i = 0; i < grid.size(); ++i) v[i] = sampler(grid.point(i));
  return Ket::normalized(grid, std::move(v), hbar, sampler);
}

}  // namespace

Ket bump(double a, double b, const GridSpec1D& grid, double hbar) {
  return bump_impl(a, b, 0.0, 0.0, grid, hbar);
}

Ket modulated_bump(double a, double b, double omega, double c2,
                   const GridSpec1D& grid, double hbar) {
  return bump_impl(a, b, omega, c2, grid, hbar);
}

MixedState::MixedState(std::vector<Component> components, bool spectral)
    : components_(std::move(components)), spectral_(spectral) {
  if (components_.empty()) throw std::invalid_argument("MixedState: no components");
  KahanSum wsum;
  for (const Component& c : components_) {
    if (!(c.weight > 0.0)) throw std::domain_error("MixedState: weights must be positive");
    if (!(c.ket.grid() == components_.front().ket.grid()))
      throw std::invalid_argument("MixedState: kets must share one grid");
    wsum.add(c.weight);
  }
  if (std::abs(wsum.value() - 1.0) > 1e-12)
    throw std::domain_error("MixedState: weights must sum to 1 within 1e-12");
}

MixedState MixedState::spectral(std::vector<Component> components) {
  MixedState m(std::move(components), true);
  const auto& cs = m.components_;
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j)
      if (std::abs(inner(cs[i].ket, cs[j].ket)) > 1e-6)
        throw std::invalid_argument("MixedState::spectral: kets are not orthogonal");
  return m;
}

MixedState MixedState::convex(std::vector<Component> components) {
  return MixedState(std::move(components), false);
}

MixedState MixedState::pure(Ket ket) {
  std::vector<Component> c;
  c.push_back({1.0, std::move(ket)});
  return MixedState(std::move(c), true);
}

MixedState MixedState::decimated() const {
  std::vector<Component> c;
  c.reserve(components_.size());
  for (const Component& comp : components_) c.push_back({comp.weight, comp.ket.decimated()});
  return MixedState(std::move(c), spectral_);
}

ShiftedCopyMixture shifted_copy_mixture(const Ket& g0, int n) {
  if (n < 1) throw std::domain_error("shifted_copy_mixture: n must be >= 1");
  const GridSpec1D& g = g0.grid();
  const double dx = g.spacing();
  // unit shifts must land on lattice points so shifted copies stay sample-exact
  const double cells = 1.0 / dx;
  if (std::abs(cells - std::round(cells)) > 1e-9)
    throw std::domain_error("shifted_copy_mixture: grid spacing must divide the unit shift");
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.point(i);
    if ((x < -1e-12 || x > 1.0 + 1e-12) && std::abs(g0.values()[i]) > 1e-12)
      throw std::domain_error("shifted_copy_mixture: g0 must be supported in [0, 1]");
  }
  ShiftedCopyMixture out{g0, n, {}};
  for (int j = 1; j <= n; ++j) out.shifts.push_back({static_cast<double>(j), 0.0});
  return out;
}

namespace {

complex json_complex(const nlohmann::json& j, const char* key, complex fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return complex{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2)
    return complex{v.at(0).get<double>(), v.at(1).get<double>()};
  throw std::invalid_argument(std::string("state spec: field '") + key +
                              "' must be a number or [re, im]");
}

void check_schema(const nlohmann::json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("state spec: expected a JSON object");
  if (spec.contains("schema") && spec.at("schema").get<int>() != 1)
    throw std::invalid_argument("state spec: unsupported schema version");
  if (!spec.contains("type")) throw std::invalid_argument("state spec: missing 'type'");
}

}  // namespace

MixedState load_state(const nlohmann::json& spec, const GridSpec1D& grid, double hbar) {
  check_schema(spec);
  const std::string type = spec.at("type").get<std::string>();
  if (type == "fock") {
    return MixedState::pure(fock(spec.at("n").get<int>(), grid, hbar));
  }
  if (type == "gaussian") {
    GaussianParams p;
    p.a = json_complex(spec, "a", complex{0.5, 0.0});
    p.b = json_complex(spec, "b", {});
    p.c = json_complex(spec, "c", {});
    p.gamma = json_complex(spec, "gamma", {});
    p.eta = json_complex(spec, "eta", {});
    return MixedState::pure(matched_gaussian_pair(p, grid, hbar).first);
  }
  if (type == "bump") {
    const auto& sup = spec.at("support");
    const double a = sup.at(0).get<double>();
    const double b = sup.at(1).get<double>();
    const double omega = spec.value("omega", 0.0);
    const double c2 = spec.value("c2", 0.0);
    return MixedState::pure(modulated_bump(a, b, omega, c2, grid, hbar));
  }
  if (type == "mixture") {
    std::vector<MixedState::Component> comps;
    for (const auto& c : spec.at("components")) {
      MixedState sub = load_state(c.at("state"), grid, hbar);
      const double w = c.at("weight").get<double>();
      for (const auto& sc : sub.components())
        comps.push_back({w * sc.weight, sc.ket});
    }
    const bool spectral = spec.value("spectral", false);
    return spectral ? MixedState::spectral(std::move(comps))
                    : MixedState::convex(std::move(comps));
  }
  if (type == "shifted_mixture")
    throw std::invalid_argument("state spec: load shifted_mixture via load_shifted_mixture");
  throw std::invalid_argument("state spec: unknown type '" + type + "'");
}

ShiftedCopyMixture load_shifted_mixture(const nlohmann::json& spec,
                                        const GridSpec1D& grid, double hbar) {
  check_schema(spec);
  if (spec.at("type").get<std::string>() != "shifted_mixture")
    throw std::invalid_argument("load_shifted_mixture: type must be 'shifted_mixture'");
  MixedState g0 = load_state(spec.at("g0"), grid, hbar);
  if (g0.components().size() != 1)
    throw std::invalid_argument("load_shifted_mixture: g0 must be a pure state");
  return shifted_copy_mixture(g0.components()[0].ket, spec.at("n").get<int>());
}

}  // namespace phasespace
