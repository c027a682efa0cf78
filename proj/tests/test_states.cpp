#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phasespace/states.hpp"
#include "oracle.hpp"

using namespace phasespace;

namespace {
const GridSpec1D kGrid = default_axis(1.0);
}

TEST_CASE("fock: golden values and normalization") {
  const Ket h1 = fock(1, kGrid, 1.0);
  // h1(x) = pi^{-1/4} sqrt(2) x e^{-x^2/2}; x = 1 is on the lattice
  const int i1 = static_cast<int>(std::llround((1.0 - kGrid.min()) / kGrid.spacing()));
  const double expected = std::sqrt(2.0) * std::pow(M_PI, -0.25) * std::exp(-0.5);
  CHECK(std::abs(h1.values()[i1].real() - expected) < 1e-6);
  CHECK(h1.values()[kGrid.size() / 2] == complex{0.0, 0.0});  // odd parity at x = 0

  CHECK(l2_norm(fock(0, kGrid, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fock(21, kGrid, 1.0), capability_error);
  CHECK_THROWS_AS(fock(-1, kGrid, 1.0), std::domain_error);
}

TEST_CASE("fock matches the closed forms up to n = 3") {
  for (double hbar : {0.5, 1.0, 2.0}) {
    const GridSpec1D g = default_axis(hbar);
    for (int n = 0; n <= 3; ++n) {
      const Ket k = fock(n, g, hbar);
      const auto exact = oracle::hermite_closed(n, hbar);
      for (int i = 0; i < g.size(); i += 41)
        CHECK(std::abs(k.values()[i] - exact(g.point(i))) < 1e-9);
    }
  }
}

TEST_CASE("fock states are pairwise orthogonal") {
  std::vector<Ket> ks;
  for (int n = 0; n <= 10; ++n) ks.push_back(fock(n, kGrid, 1.0));
  for (int n = 0; n <= 10; ++n)
    for (int m = n + 1; m <= 10; ++m) CHECK(std::abs(inner(ks[n], ks[m])) < 1e-8);
}

TEST_CASE("matched gaussian pairs") {
  auto [f, g] = matched_gaussian_pair({complex{0.5, 0.0}}, kGrid, 1.0);
  const Ket h0 = fock(0, kGrid, 1.0);
  for (int i = 0; i < kGrid.size(); i += 17)
    CHECK(std::abs(f.values()[i] - h0.values()[i]) < 1e-12);
  CHECK(std::abs(inner(f, g) - complex{1.0, 0.0}) < 1e-12);

  auto [sq, sq2] = matched_gaussian_pair({complex{1.0, 0.0}}, kGrid, 1.0);
  CHECK(l2_norm(sq) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(l2_norm(sq2) == doctest::Approx(1.0).epsilon(1e-9));

  auto [disp, undis] = matched_gaussian_pair({complex{0.5, 0.0}, complex{1.0, 0.0}},
                                             kGrid, 1.0);
  CHECK(l2_norm(disp) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(l2_norm(undis) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(matched_gaussian_pair({complex{-0.5, 0.0}}, kGrid, 1.0),
                  std::domain_error);
}

TEST_CASE("bump: support, norm, disjoint orthogonality") {
  const Ket b1 = bump(-1.0, 0.0, kGrid, 1.0);
  for (int i = 0; i < kGrid.size(); ++i) {
    const double x = kGrid.point(i);
    if (x <= -1.0 || x >= 0.0) CHECK(b1.values()[i] == complex{0.0, 0.0});
  }
  const Ket b2 = bump(0.0, 1.0, kGrid, 1.0);
  CHECK(l2_norm(b2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(inner(b1, b2)) < 1e-12);
  CHECK_THROWS_AS(bump(-9.0, 0.0, kGrid, 1.0), std::domain_error);
  CHECK_THROWS_AS(bump(1.0, 1.0, kGrid, 1.0), std::domain_error);
}

TEST_CASE("ket validation and decimation") {
  std::vector<complex> v(kGrid.size(), complex{1.0, 0.0});
  CHECK_THROWS_AS(Ket(kGrid, v, 1.0), std::invalid_argument);  // not normalized
  const Ket n = Ket::normalized(kGrid, v, 1.0);
  CHECK(l2_norm(n) == doctest::Approx(1.0).epsilon(1e-12));

  const Ket h2 = fock(2, kGrid, 1.0);
  const Ket h2d = h2.decimated();
  CHECK(h2d.grid().size() == kGrid.size() / 2);
  CHECK(l2_norm(h2d) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixed state invariants") {
  const Ket h0 = fock(0, kGrid, 1.0), h1 = fock(1, kGrid, 1.0);
  CHECK_THROWS_AS(MixedState::spectral({{0.5, h0}, {0.4, h1}}), std::domain_error);
  const MixedState ok = MixedState::spectral({{0.5, h0}, {0.5, h1}});
  CHECK(ok.is_spectral());
  // non-orthogonal kets are rejected for spectral, accepted as convex
  auto [g1, g2] = matched_gaussian_pair({complex{0.5, 0.0}, complex{0.3, 0.0}}, kGrid, 1.0);
  CHECK_THROWS_AS(MixedState::spectral({{0.5, g1}, {0.5, g2}}), std::invalid_argument);
  const MixedState cv = MixedState::convex({{0.5, g1}, {0.5, g2}});
  CHECK_FALSE(cv.is_spectral());
}

TEST_CASE("symplectic map validation") {
  CHECK_NOTHROW(SymplecticMap::rotation(0.7));
  CHECK_NOTHROW(SymplecticMap::squeeze(1.8));
  CHECK_NOTHROW(SymplecticMap::shear(0.4));
  CHECK_THROWS_AS(SymplecticMap({2.0, 0.0, 0.0, 1.0}), std::domain_error);
  const SymplecticMap s = SymplecticMap::rotation(0.3).transpose_times(
      SymplecticMap::squeeze(1.5));
  const SymplecticMap si = s.inverse();
  const auto z = si.apply(s.apply(0.4, -1.2)[0], s.apply(0.4, -1.2)[1]);
  CHECK(z[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(-1.2).epsilon(1e-12));
}

TEST_CASE("shifted copy mixture preconditions") {
  const Ket g0 = bump(0.0, 1.0, kGrid, 1.0);
  const auto eta = shifted_copy_mixture(g0, 4);
  CHECK(eta.shifts.size() == 4);
  CHECK(eta.shifts[0][0] == 1.0);
  CHECK_NOTHROW(shifted_copy_mixture(g0, 1));
  CHECK_THROWS_AS(shifted_copy_mixture(g0, 0), std::domain_error);
  const Ket wide = bump(0.0, 1.5, kGrid, 1.0);
  CHECK_THROWS_AS(shifted_copy_mixture(wide, 2), std::domain_error);
}

TEST_CASE("json state loading") {
  using nlohmann::json;
  const MixedState f1 = load_state(json::parse(R"({"schema":1,"type":"fock","n":1})"),
                                   kGrid, 1.0);
  CHECK(f1.components().size() == 1);

  const MixedState g = load_state(
      json::parse(R"({"schema":1,"type":"gaussian","a":[0.5,0.1],"b":0.2})"), kGrid, 1.0);
  CHECK(l2_norm(g.components()[0].ket) == doctest::Approx(1.0).epsilon(1e-9));

  const MixedState mix = load_state(json::parse(R"({
    "schema": 1, "type": "mixture", "spectral": true,
    "components": [
      {"weight": 0.5, "state": {"type": "fock", "n": 0}},
      {"weight": 0.5, "state": {"type": "fock", "n": 1}}
    ]})"),
                                    kGrid, 1.0);
  CHECK(mix.components().size() == 2);
  CHECK(mix.is_spectral());

  const auto eta = load_shifted_mixture(
      json::parse(R"({"schema":1,"type":"shifted_mixture","g0":{"type":"bump","support":[0,1]},"n":3})"),
      kGrid, 1.0);
  CHECK(eta.count == 3);

  CHECK_THROWS(load_state(json::parse(R"({"type":"nope"})"), kGrid, 1.0));
  CHECK_THROWS(load_state(json::parse(R"({"schema":2,"type":"fock","n":0})"), kGrid, 1.0));
  CHECK_THROWS(load_state(json::parse(R"(["not an object"])"), kGrid, 1.0));
}
