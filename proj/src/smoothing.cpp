#include "eedp/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eedp/errors.hpp"

namespace eedp::smoothing {

namespace {

constexpr real_t kLn2 = std::numbers::ln2_v<real_t>;
constexpr real_t kHalfPi = std::numbers::pi_v<real_t> / 2;
constexpr real_t kInf = std::numeric_limits<real_t>::infinity();

// Past this |t / sin(mu)| cosh is replaced by its asymptotic expansion.
constexpr real_t kLogCoshSwitch = 30;

real_t checked_sin(real_t mu) {
  if (!(mu > 0 && mu < kHalfPi)) {
    throw ParameterDomainError("theta_abs: mu must lie in (0, pi/2), got " +
                               std::to_string(static_cast<double>(mu)));
  }
  return std::sin(mu);
}

void check_convolution(real_t mu, const SmoothingKernel& kernel) {
  if (!(mu > 0)) {
    throw ParameterDomainError("phi_plus: mu must be positive, got " +
                               std::to_string(static_cast<double>(mu)));
  }
  if (!kernel.is_convolution()) {
    throw ParameterDomainError(
        "phi_plus: the LogCosh kernel smooths |t|, not (t)_+");
  }
}

// sech^2(x) without overflowing cosh.
real_t sech2(real_t x) {
  const real_t e = std::exp(-2 * std::abs(x));
  return 4 * e / ((1 + e) * (1 + e));
}

real_t logistic(real_t x) {
  if (x >= 0) return 1 / (1 + std::exp(-x));
  const real_t e = std::exp(x);
  return e / (1 + e);
}

real_t logistic_density(real_t s) {
  const real_t e = std::exp(-std::abs(s));
  return e / ((1 + e) * (1 + e));
}

template <class F>
real_t integrate(F f, real_t a, real_t b) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(a < b)) return 0;
  return gauss_kronrod<real_t, 31>::integrate(f, a, b, 20, 1e-14L);
}

real_t cached_kappa(KernelKind kind) {
  switch (kind) {
    case KernelKind::LogCosh:
      return kLn2;
    case KernelKind::UniformConvolution: {
      static const real_t kappa =
          kappa_by_quadrature(KernelKind::UniformConvolution);
      return kappa;
    }
    case KernelKind::SigmoidConvolution: {
      static const real_t kappa =
          kappa_by_quadrature(KernelKind::SigmoidConvolution);
      return kappa;
    }
  }
  return 0;
}

}  // namespace

SmoothingKernel::SmoothingKernel(KernelKind kind)
    : kind_(kind), kappa_(cached_kappa(kind)) {}

SmoothingKernel::SmoothingKernel(KernelKind kind, real_t kappa)
    : kind_(kind), kappa_(kappa) {
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    throw ParameterDomainError("kernel kappa must be finite and positive");
  }
}

real_t SmoothingKernel::density(real_t s) const {
  switch (kind_) {
    case KernelKind::UniformConvolution:
      return std::abs(s) <= 0.5L ? 1 : 0;
    case KernelKind::SigmoidConvolution:
      return logistic_density(s);
    case KernelKind::LogCosh:
      break;
  }
  throw ParameterDomainError("LogCosh has no convolution density");
}

std::pair<real_t, real_t> SmoothingKernel::support() const {
  if (kind_ == KernelKind::UniformConvolution) return {-0.5L, 0.5L};
  return {-kInf, kInf};
}

SmoothingKernel uniform_kernel() {
  return SmoothingKernel(KernelKind::UniformConvolution);
}
SmoothingKernel sigmoid_kernel() {
  return SmoothingKernel(KernelKind::SigmoidConvolution);
}
SmoothingKernel log_cosh_kernel() {
  return SmoothingKernel(KernelKind::LogCosh);
}

real_t kappa_by_quadrature(KernelKind kind) {
  // Build a throwaway kernel with a placeholder kappa to reach its density.
  const SmoothingKernel kernel(kind, 1);
  const auto [lo, hi] = kernel.support();
  auto left = [&](real_t s) { return -s * kernel.density(s); };
  auto right = [&](real_t s) { return s * kernel.density(s); };
  return integrate(left, lo, 0) + integrate(right, 0, hi);
}

void SmoothParam::validate(KernelKind kind) const {
  if (!(mu > 0)) throw ParameterDomainError("mu must be positive");
  if (!(alpha > 0 && alpha < 1)) {
    throw ParameterDomainError("alpha must lie in (0, 1)");
  }
  if (!(mu_min > 0)) throw ParameterDomainError("mu_min must be positive");
  if (mu_min > mu) throw ParameterDomainError("mu_min must not exceed mu");
  if (kind == KernelKind::LogCosh && !(mu < kHalfPi)) {
    throw ParameterDomainError("LogCosh smoothing requires mu < pi/2");
  }
}

std::vector<real_t> SmoothParam::schedule() const {
  std::vector<real_t> stages;
  const real_t floor = mu_min * (1 + 1e-9L);
  for (real_t m = mu; m > floor; m *= alpha) stages.push_back(m);
  stages.push_back(mu_min);
  return stages;
}

real_t theta_abs(real_t t, real_t mu) {
  const real_t s = checked_sin(mu);
  const real_t x = std::abs(t) / s;
  if (x > kLogCoshSwitch) {
    return std::abs(t) - s * kLn2 + s * std::log1p(std::exp(-2 * x));
  }
  return s * std::log(std::cosh(x));
}

real_t theta_abs_grad(real_t t, real_t mu) {
  const real_t s = checked_sin(mu);
  return std::tanh(t / s);
}

real_t theta_abs_hess(real_t t, real_t mu) {
  const real_t s = checked_sin(mu);
  return sech2(t / s) / s;
}

std::vector<real_t> theta_abs_vector(std::span<const real_t> g,
                                     std::span<const real_t> mu) {
  if (g.size() != mu.size()) {
    throw DimensionError("theta_abs_vector: " + std::to_string(g.size()) +
                         " values but " + std::to_string(mu.size()) +
                         " smoothing parameters");
  }
  std::vector<real_t> out(g.size());
  std::transform(g.begin(), g.end(), mu.begin(), out.begin(),
                 [](real_t v, real_t m) { return theta_abs(v, m); });
  return out;
}

real_t phi_plus(real_t t, real_t mu, const SmoothingKernel& kernel) {
  check_convolution(mu, kernel);
  if (kernel.kind() == KernelKind::UniformConvolution) {
    const real_t half = mu / 2;
    if (t <= -half) return 0;
    if (t >= half) return t;
    return (t + half) * (t + half) / (2 * mu);
  }
  const real_t x = t / mu;
  return mu * (std::max<real_t>(x, 0) + std::log1p(std::exp(-std::abs(x))));
}

real_t phi_plus_grad(real_t t, real_t mu, const SmoothingKernel& kernel) {
  check_convolution(mu, kernel);
  if (kernel.kind() == KernelKind::UniformConvolution) {
    const real_t half = mu / 2;
    if (t < -half) return 0;
    if (t > half) return 1;
    return (t + half) / mu;
  }
  return logistic(t / mu);
}

real_t phi_plus_hess(real_t t, real_t mu, const SmoothingKernel& kernel) {
  check_convolution(mu, kernel);
  if (kernel.kind() == KernelKind::UniformConvolution) {
    return std::abs(t) <= mu / 2 ? 1 / mu : 0;
  }
  const real_t sig = logistic(t / mu);
  return sig * (1 - sig) / mu;
}

real_t phi_plus_by_quadrature(real_t t, real_t mu,
                              const SmoothingKernel& kernel) {
  check_convolution(mu, kernel);
  const auto [lo, hi] = kernel.support();
  // (t - mu s)_+ vanishes for s >= t / mu.
  const real_t upper = std::min(t / mu, hi);
  if (upper <= lo) return 0;
  auto integrand = [&](real_t s) { return (t - mu * s) * kernel.density(s); };
  if (lo < 0 && 0 < upper) {
    return integrate(integrand, lo, 0) + integrate(integrand, 0, upper);
  }
  return integrate(integrand, lo, upper);
}

real_t smooth_max(real_t h, real_t g, real_t mu,
                  const SmoothingKernel& kernel) {
  return h + phi_plus(g - h, mu, kernel);
}

real_t smooth_min(real_t h, real_t g, real_t mu,
                  const SmoothingKernel& kernel) {
  return h - phi_plus(h - g, mu, kernel);
}

std::pair<real_t, real_t> clarke_subdifferential(ProbeTarget target,
                                                 real_t t) {
  if (target == ProbeTarget::AbsLogCosh) {
    if (t > 0) return {1, 1};
    if (t < 0) return {-1, -1};
    return {-1, 1};
  }
  if (t > 0) return {1, 1};
  if (t < 0) return {0, 0};
  return {0, 1};
}

ProbeReport gradient_consistency_probe(ProbeTarget target, real_t point,
                                       int sequence_count, real_t mu0,
                                       real_t ratio, real_t tolerance) {
  if (sequence_count < 1) {
    throw ParameterDomainError("probe needs at least one sequence term");
  }
  if (!(ratio > 0 && ratio < 1)) {
    throw ParameterDomainError("probe ratio must lie in (0, 1)");
  }
  const SmoothingKernel uniform = uniform_kernel();
  const SmoothingKernel sigmoid = sigmoid_kernel();
  auto derivative = [&](real_t t, real_t mu) {
    switch (target) {
      case ProbeTarget::AbsLogCosh:
        return theta_abs_grad(t, mu);
      case ProbeTarget::PlusUniform:
        return phi_plus_grad(t, mu, uniform);
      case ProbeTarget::PlusSigmoid:
        return phi_plus_grad(t, mu, sigmoid);
    }
    return real_t{0};
  };

  ProbeReport report;
  report.target = target;
  report.point = point;
  std::tie(report.clarke_lower, report.clarke_upper) =
      clarke_subdifferential(target, point);
  report.success = true;

  for (int direction : {-1, 0, 1}) {
    ProbeSequence seq;
    seq.direction = direction;
    real_t step = 1;
    for (int k = 0; k < sequence_count; ++k, step *= ratio) {
      const real_t t = point + direction * step;
      const real_t mu = mu0 * step;
      seq.t.push_back(t);
      seq.mu.push_back(mu);
      seq.derivative.push_back(derivative(t, mu));
    }
    seq.limit = seq.derivative.back();
    seq.in_subdifferential = seq.limit >= report.clarke_lower - tolerance &&
                             seq.limit <= report.clarke_upper + tolerance;
    report.success = report.success && seq.in_subdifferential;
    report.sequences.push_back(std::move(seq));
  }
  return report;
}

}  // namespace eedp::smoothing
