#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "eedp/errors.hpp"
#include "eedp/smoothing.hpp"
#include "frozen.hpp"

using namespace eedp;
using namespace eedp::smoothing;

namespace {
constexpr real_t kLn2 = std::numbers::ln2_v<real_t>;
constexpr real_t kHalfPi = std::numbers::pi_v<real_t> / 2;
}  // namespace

TEST_CASE("theta_abs reference values") {
  CHECK(theta_abs(0, 0.5L) == 0);
  CHECK(std::abs(theta_abs(10, 0.1L) - frozen::theta_10_01) < 1e-15L);
  CHECK(std::abs(theta_abs(0.5L, 0.2L) - frozen::theta_05_02) < 1e-15L);
  // Far in the tail the overflow-safe branch must agree with the asymptote.
  CHECK(std::abs(theta_abs(1e6L, 0.3L) - (1e6L - std::sin(0.3L) * kLn2)) <
        1e-9L);
  CHECK(std::isfinite(theta_abs(1e300L, 1e-9L)));
}

TEST_CASE("theta_abs is even, its gradient odd") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<long double> t(-50, 50), mu(1e-3L, 1.5L);
  for (int i = 0; i < 500; ++i) {
    const real_t x = t(rng), m = mu(rng);
    CHECK(theta_abs(-x, m) == theta_abs(x, m));
    CHECK(theta_abs_grad(-x, m) == -theta_abs_grad(x, m));
  }
}

TEST_CASE("theta_abs_grad") {
  CHECK(theta_abs_grad(0, 0.3L) == 0);
  CHECK(std::abs(theta_abs_grad(5, 0.001L) - 1) < 1e-12L);
  CHECK(theta_abs_hess(0, 0.3L) == doctest::Approx(1 / std::sin(0.3)));
}

TEST_CASE("theta_abs rejects mu outside (0, pi/2)") {
  CHECK_THROWS_AS(theta_abs(1, 0), ParameterDomainError);
  CHECK_THROWS_AS(theta_abs(1, -0.1L), ParameterDomainError);
  CHECK_THROWS_AS(theta_abs(1, kHalfPi), ParameterDomainError);
  CHECK_THROWS_AS(theta_abs_grad(1, 2), ParameterDomainError);
}

TEST_CASE("theta_abs_vector") {
  const std::vector<real_t> g{0, 0}, mu{0.1L, 0.2L};
  const auto out = theta_abs_vector(g, mu);
  CHECK(out == std::vector<real_t>{0, 0});

  const std::vector<real_t> g2{3, -3}, mu2{0.4L, 0.4L};
  const auto sym = theta_abs_vector(g2, mu2);
  CHECK(sym[0] == sym[1]);

  const std::vector<real_t> mu3{0.1L};
  CHECK_THROWS_AS(theta_abs_vector(g, mu3), DimensionError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<long double> t(-100, 100), m(1e-6L, 1.5L);
  for (int i = 0; i < 1000; ++i) {
    std::vector<real_t> gv(4), mv(4);
    for (int k = 0; k < 4; ++k) gv[k] = t(rng), mv[k] = m(rng);
    const auto th = theta_abs_vector(gv, mv);
    for (int k = 0; k < 4; ++k) {
      const real_t gap = std::abs(gv[k]) - th[k];
      CHECK(gap >= -1e-12L);
      CHECK(gap <= std::sin(mv[k]) * kLn2 + 1e-12L);
    }
  }
}

TEST_CASE("kernel kappa from the density") {
  CHECK(uniform_kernel().kappa() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(sigmoid_kernel().kappa() - frozen::kappa_logistic) < 1e-12L);
  CHECK(log_cosh_kernel().kappa() == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(kappa_by_quadrature(KernelKind::SigmoidConvolution) -
                 frozen::kappa_logistic) < 1e-12L);
  CHECK_THROWS_AS(SmoothingKernel(KernelKind::UniformConvolution, -1),
                  ParameterDomainError);
}

TEST_CASE("phi_plus closed forms") {
  const auto u = uniform_kernel();
  const auto s = sigmoid_kernel();
  for (real_t mu : {0.01L, 0.3L, 1.0L, 4.0L}) {
    CHECK(phi_plus(0, mu, u) == doctest::Approx(mu / 8));
    CHECK(phi_plus(mu / 2, mu, u) == doctest::Approx(mu / 2));
    CHECK(phi_plus(3 * mu, mu, u) == 3 * mu);
    CHECK(phi_plus(-mu / 2, mu, u) == 0);
    CHECK(phi_plus(-5 * mu, mu, u) == 0);
    CHECK(phi_plus_grad(-mu, mu, u) == 0);
    CHECK(phi_plus_grad(mu, mu, u) == 1);
    CHECK(phi_plus_grad(0, mu, s) == doctest::Approx(0.5));
  }
  CHECK(phi_plus(0, 1, s) == doctest::Approx(std::log(2.0)));
  CHECK(std::isfinite(phi_plus(1e5L, 1e-6L, s)));
  CHECK(phi_plus(-1e5L, 1e-6L, s) >= 0);
  CHECK_THROWS_AS(phi_plus(0, 0, u), ParameterDomainError);
}

TEST_CASE("phi_plus agrees with quadrature and finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<long double> t(-3, 3), m(0.01L, 2);
  for (const auto& k : {uniform_kernel(), sigmoid_kernel()}) {
    for (int i = 0; i < 200; ++i) {
      const real_t x = t(rng), mu = m(rng);
      CHECK(std::abs(phi_plus(x, mu, k) - phi_plus_by_quadrature(x, mu, k)) <
            1e-9L);
      if (k.kind() == KernelKind::UniformConvolution &&
          std::abs(std::abs(x) - mu / 2) < 1e-5L) {
        continue;
      }
      const real_t h = 1e-7L;
      const real_t fd = (phi_plus(x + h, mu, k) - phi_plus(x - h, mu, k)) / (2 * h);
      const real_t an = phi_plus_grad(x, mu, k);
      CHECK(std::abs(fd - an) / std::max<real_t>(1, std::abs(an)) < 1e-6L);
    }
  }
}

TEST_CASE("phi_plus band: 0 <= phi - (t)_+ <= kappa mu") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<long double> t(-10, 10), m(1e-4L, 3);
  for (const auto& k : {uniform_kernel(), sigmoid_kernel()}) {
    for (int i = 0; i < 2000; ++i) {
      const real_t x = t(rng), mu = m(rng);
      const real_t gap = phi_plus(x, mu, k) - std::max<real_t>(x, 0);
      CHECK(gap >= 0);
      CHECK(gap <= k.kappa() * mu + 1e-15L);
      const bool covered =
          k.kind() == KernelKind::SigmoidConvolution || std::abs(x) < mu / 2;
      if (covered && std::abs(x) < 10 * mu) CHECK(gap > 0);
    }
  }
}

TEST_CASE("smooth max and min") {
  const auto u = uniform_kernel();
  CHECK(smooth_max(1, 3, 1e-9L, u) == doctest::Approx(3));
  CHECK(std::abs(smooth_max(1, 3, 1e-3L, u) - 3) <= u.kappa() * 1e-3L);
  for (real_t h : {-2.0L, 0.0L, 7.5L}) {
    CHECK(smooth_max(h, h, 0.4L, u) == doctest::Approx(h + 0.4L / 8));
  }
  CHECK(smooth_min(1, 3, 1e-9L, u) == doctest::Approx(1));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<long double> v(-5, 5), m(1e-3L, 1);
  for (const auto& k : {uniform_kernel(), sigmoid_kernel()}) {
    for (int i = 0; i < 1000; ++i) {
      const real_t h = v(rng), g = v(rng), mu = m(rng);
      const real_t gap = smooth_max(h, g, mu, k) - std::max(h, g);
      CHECK(gap >= -1e-15L);  // g + phi(h - g) rounds in the last place
      CHECK(gap <= k.kappa() * mu + 1e-15L);
      if (k.kind() == KernelKind::SigmoidConvolution && std::abs(h - g) < mu) {
        CHECK(gap > 0);
      }
    }
  }
}

TEST_CASE("SmoothParam schedule") {
  SmoothParam p{0.1L, 0.1L, 1e-6L};
  const auto s = p.schedule();
  REQUIRE(s.size() == 6);
  CHECK(s.front() == 0.1L);
  CHECK(s.back() == 1e-6L);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] < s[i - 1]);

  SmoothParam one{0.5L, 0.1L, 0.5L};
  CHECK(one.schedule() == std::vector<real_t>{0.5L});

  // mu_min not on the geometric grid: the last stage is mu_min itself.
  SmoothParam off{0.1L, 0.3L, 0.005L};
  CHECK(off.schedule().back() == 0.005L);

  CHECK_THROWS_AS((SmoothParam{0.1L, 1.0L, 1e-6L}.validate()), ParameterDomainError);
  CHECK_THROWS_AS((SmoothParam{0.1L, 0.1L, 0.2L}.validate()), ParameterDomainError);
  CHECK_THROWS_AS((SmoothParam{2.0L, 0.1L, 1e-3L}.validate()), ParameterDomainError);
  CHECK_NOTHROW((SmoothParam{2.0L, 0.1L, 1e-3L}.validate(
      KernelKind::SigmoidConvolution)));
}

TEST_CASE("gradient consistency probes") {
  const auto at0 = gradient_consistency_probe(ProbeTarget::AbsLogCosh, 0, 40);
  CHECK(at0.success);
  CHECK(at0.clarke_lower == -1);
  CHECK(at0.clarke_upper == 1);
  REQUIRE(at0.sequences.size() == 3);
  for (const auto& s : at0.sequences) {
    CHECK(s.limit >= -1);
    CHECK(s.limit <= 1);
  }
  for (real_t p : {2.0L, -2.0L}) {
    const auto r = gradient_consistency_probe(ProbeTarget::AbsLogCosh, p, 40);
    CHECK(r.success);
    for (const auto& s : r.sequences) CHECK(std::abs(s.limit - p / 2) < 1e-9L);
  }
  const auto sig = gradient_consistency_probe(ProbeTarget::PlusSigmoid, 0, 40);
  CHECK(sig.success);
  bool saw_sigmoid_one = false;
  for (const auto& s : sig.sequences) {
    if (s.direction == 1) {
      saw_sigmoid_one = std::abs(s.limit - frozen::sigmoid_1) < 1e-12L;
    }
  }
  CHECK(saw_sigmoid_one);
  CHECK(gradient_consistency_probe(ProbeTarget::PlusUniform, 0, 40).success);
  CHECK(clarke_subdifferential(ProbeTarget::PlusUniform, 0) ==
        std::pair<real_t, real_t>{0, 1});
  CHECK_THROWS_AS(gradient_consistency_probe(ProbeTarget::AbsLogCosh, 0, 0),
                  ParameterDomainError);
}
