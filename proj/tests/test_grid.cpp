#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "phasespace/grid.hpp"

using namespace phasespace;

namespace {

RealField2D sampled(const GridSpec2D& g, double (*fn)(double, double)) {
  RealField2D f(g);
  for (int i = 0; i < g.x.size(); ++i)
    for (int j = 0; j < g.p.size(); ++j) f.at(i, j) = fn(g.x.point(i), g.p.point(j));
  return f;
}

}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec1D(0.0, 1.0, 100), std::domain_error);  // not pow2
  CHECK_THROWS_AS(GridSpec1D(1.0, 0.0, 128), std::domain_error);
  CHECK_THROWS_AS(HbarConfig(-1.0, 1), std::domain_error);
  CHECK_THROWS_AS(HbarConfig(1.0, 0), std::domain_error);
  const GridSpec1D g = GridSpec1D::symmetric(8.0, 512);
  CHECK(g.spacing() == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(g.symmetric_about_zero());
  CHECK_FALSE(GridSpec1D(0.0, 1.0, 64).symmetric_about_zero());
}

TEST_CASE("integrate: constant, gaussian, zero") {
  GridSpec2D unit{GridSpec1D(0.0, 1.0, 64), GridSpec1D(0.0, 1.0, 64)};
  RealField2D ones(unit);
  for (double& v : ones.values()) v = 1.0;
  CHECK(integrate(ones) == doctest::Approx(1.0).epsilon(1e-14));

  const GridSpec2D ps = default_phase_space(1.0);
  RealField2D w0 = sampled(ps, [](double x, double p) {
    return std::exp(-(x * x + p * p)) / M_PI;
  });
  CHECK(std::abs(integrate(w0) - 1.0) < 1e-6);

  RealField2D zero(ps);
  CHECK(integrate(zero) == 0.0);

  Field2D bad(unit);
  bad.at(0, 0) = complex{std::nan(""), 0.0};
  CHECK_THROWS_AS(integrate(bad), std::invalid_argument);
}

TEST_CASE("lq_norm: ground-state Wigner closed forms") {
  const GridSpec2D ps = default_phase_space(1.0);
  RealField2D w0 = sampled(ps, [](double x, double p) {
    return std::exp(-(x * x + p * p)) / M_PI;
  });
  CHECK(lq_norm(w0, 2.0) == doctest::Approx(std::pow(2 * M_PI, -0.5)).epsilon(1e-4));
  CHECK(lq_norm(w0, kInf) == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
  RealField2D zero(ps);
  CHECK(lq_norm(zero, 1.5) == 0.0);
  CHECK_THROWS_AS(lq_norm(w0, 0.5), std::domain_error);
}

TEST_CASE("marginal_x: fock wigner marginals") {
  const GridSpec2D ps = default_phase_space(1.0);
  RealField2D w1 = sampled(ps, [](double x, double p) {
    const double z2 = x * x + p * p;
    return (2 * z2 - 1) * std::exp(-z2) / M_PI;
  });
  const auto m = marginal_x(w1);
  for (int i = 0; i < ps.x.size(); i += 37) {
    const double x = ps.x.point(i);
    const double expected = (2 * x * x / std::sqrt(M_PI)) * std::exp(-x * x);
    CHECK(std::abs(m[i] - expected) < 1e-3);
  }
  RealField2D w0 = sampled(ps, [](double x, double p) {
    return std::exp(-(x * x + p * p)) / M_PI;
  });
  const auto m0 = marginal_x(w0);
  const int i0 = ps.x.size() / 2;  // x = 0
  CHECK(m0[i0] == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-3));

  RealField2D zero(ps);
  for (double v : marginal_x(zero)) CHECK(v == 0.0);

  Field2D noisy(ps);
  noisy.at(3, 4) = complex{1.0, 0.5};
  CHECK_THROWS_AS(marginal_x(noisy), std::invalid_argument);
}

TEST_CASE("integrate is linear; marginal integrates to the field integral") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridSpec2D g{GridSpec1D(-2.0, 2.0, 32), GridSpec1D(-2.0, 2.0, 32)};
  Field2D f1(g), f2(g);
  for (auto& v : f1.values()) v = complex{u(rng), u(rng)};
  for (auto& v : f2.values()) v = complex{u(rng), u(rng)};
  const complex a{0.7, -0.3}, b{-1.1, 0.2};
  Field2D combo(g);
  for (size_t k = 0; k < combo.values().size(); ++k)
    combo.values()[k] = a * f1.values()[k] + b * f2.values()[k];
  const complex lhs = integrate(combo);
  const complex rhs = a * integrate(f1) + b * integrate(f2);
  CHECK(std::abs(lhs - rhs) < 1e-12);

  RealField2D r(g);
  std::mt19937 rng2(8);
  for (auto& v : r.values()) v = u(rng2);
  const auto marg = marginal_x(r);
  KahanSum s;
  for (double v : marg) s.add(v);
  CHECK(std::abs(s.value() * g.x.spacing() - integrate(r)) < 1e-12);
}

TEST_CASE("lq_norm homogeneity and discrete Holder interpolation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GridSpec2D g{GridSpec1D(-2.0, 2.0, 32), GridSpec1D(-2.0, 2.0, 32)};
  for (int trial = 0; trial < 20; ++trial) {
    RealField2D f(g);
    for (auto& v : f.values()) v = u(rng);  // bounded by 1 in sup norm
    const double c = -3.7;
    RealField2D cf(g);
    for (size_t k = 0; k < f.values().size(); ++k) cf.values()[k] = c * f.values()[k];
    const double q = 1.0 + 0.9 * u(rng);
    CHECK(lq_norm(cf, q) == doctest::Approx(std::abs(c) * lq_norm(f, q)).epsilon(1e-12));

    // ||F||_q^q <= ||F||_1^theta ||F||_Q^{Q exponent}, Q = (q-theta)/(1-theta)
    const double theta = (2.0 - q) + (1.0 - (2.0 - q)) * (0.2 + 0.6 * u(rng));
    if (!(q > 1.0 && q < 2.0 && theta > 2.0 - q && theta < 1.0)) continue;
    const double bigq = (q - theta) / (1.0 - theta);
    const double lhs = std::pow(lq_norm(f, q), q);
    const double rhs = std::pow(lq_norm(f, 1.0), theta) * std::pow(lq_norm(f, bigq), q - theta);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}
