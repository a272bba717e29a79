#pragma once

#include <span>
#include <vector>

#include "eedp/types.hpp"

namespace eedp::smoothing {

enum class KernelKind {
  LogCosh,             // sin(mu) ln cosh(t / sin(mu)), smooths |t|
  UniformConvolution,  // rho(s) = 1 on [-1/2, 1/2], smooths (t)_+
  SigmoidConvolution,  // rho(s) = e^{-s} / (1 + e^{-s})^2, smooths (t)_+
};

/**
 * A smoothing family together with its error constant kappa.
 *
 * For the convolution kinds kappa = \int |s| rho(s) ds, evaluated once per
 * kind by adaptive quadrature and cached. For LogCosh kappa = ln 2, the
 * constant in |t| - theta_mu(t) <= sin(mu) ln 2 <= kappa mu.
 */
class SmoothingKernel {
 public:
  explicit SmoothingKernel(KernelKind kind);

  /// Overrides kappa. Used to inject faults into the property battery.
  SmoothingKernel(KernelKind kind, real_t kappa);

  KernelKind kind() const { return kind_; }
  real_t kappa() const { return kappa_; }

  /// True for the kinds that smooth the plus function.
  bool is_convolution() const { return kind_ != KernelKind::LogCosh; }

  /// The symmetric density rho(s). Only defined for convolution kinds.
  real_t density(real_t s) const;

  /// Support of rho as [lower, upper]; infinite bounds for the sigmoid.
  std::pair<real_t, real_t> support() const;

 private:
  KernelKind kind_;
  real_t kappa_;
};

SmoothingKernel uniform_kernel();
SmoothingKernel sigmoid_kernel();
SmoothingKernel log_cosh_kernel();

/// kappa = \int |s| rho(s) ds by adaptive Gauss-Kronrod quadrature.
real_t kappa_by_quadrature(KernelKind kind);

/// Continuation parameters: mu_{k+1} = alpha * mu_k until mu_min.
struct SmoothParam {
  real_t mu = 0.1L;
  real_t alpha = 0.1L;
  real_t mu_min = 1e-6L;

  /// Throws ParameterDomainError on a violated invariant. The LogCosh kind
  /// additionally requires mu < pi/2.
  void validate(KernelKind kind = KernelKind::LogCosh) const;

  /// The stage values mu, alpha mu, ... that are >= mu_min, always ending
  /// exactly at mu_min. When mu_min > mu the schedule is {mu_min}.
  std::vector<real_t> schedule() const;
};

// |t| smoothing: theta_mu(t) = sin(mu) ln cosh(t / sin(mu)), 0 < mu < pi/2.
real_t theta_abs(real_t t, real_t mu);
real_t theta_abs_grad(real_t t, real_t mu);
real_t theta_abs_hess(real_t t, real_t mu);

/// Componentwise theta_abs with per-component mu.
std::vector<real_t> theta_abs_vector(std::span<const real_t> g,
                                     std::span<const real_t> mu);

// (t)_+ smoothing by convolution with the kernel density, closed forms.
real_t phi_plus(real_t t, real_t mu, const SmoothingKernel& kernel);
real_t phi_plus_grad(real_t t, real_t mu, const SmoothingKernel& kernel);
real_t phi_plus_hess(real_t t, real_t mu, const SmoothingKernel& kernel);

/// phi(t, mu) = \int (t - mu s)_+ rho(s) ds evaluated by quadrature of the
/// density directly. Independent of the closed forms above.
real_t phi_plus_by_quadrature(real_t t, real_t mu,
                              const SmoothingKernel& kernel);

// max(h, g) = h + (g - h)_+ and min(h, g) = h - (h - g)_+.
real_t smooth_max(real_t h, real_t g, real_t mu, const SmoothingKernel& kernel);
real_t smooth_min(real_t h, real_t g, real_t mu, const SmoothingKernel& kernel);

// ---------------------------------------------------------------------------
// Gradient consistency

enum class ProbeTarget { AbsLogCosh, PlusUniform, PlusSigmoid };

struct ProbeSequence {
  int direction = 0;              // d in t_k = point + d r^k
  std::vector<real_t> t;          // t_k
  std::vector<real_t> mu;         // mu_k = mu0 r^k
  std::vector<real_t> derivative; // smoothed derivative at (t_k, mu_k)
  real_t limit = 0;               // accumulation value (tail of the sequence)
  bool in_subdifferential = false;
};

struct ProbeReport {
  ProbeTarget target = ProbeTarget::AbsLogCosh;
  real_t point = 0;
  real_t clarke_lower = 0;  // Clarke subdifferential of the target at point
  real_t clarke_upper = 0;
  std::vector<ProbeSequence> sequences;
  bool success = false;
};

/// Clarke subdifferential [lo, hi] of |.| or (.)_+ at t.
std::pair<real_t, real_t> clarke_subdifferential(ProbeTarget target, real_t t);

/**
 * Follows t_k = point + d r^k (d in {-1, 0, +1}) with mu_k = mu0 r^k for
 * sequence_count terms and checks that every accumulation value of the
 * smoothed derivative lies in the Clarke subdifferential of the target,
 * within `tolerance`.
 */
ProbeReport gradient_consistency_probe(ProbeTarget target, real_t point,
                                       int sequence_count, real_t mu0 = 1,
                                       real_t ratio = 0.5L,
                                       real_t tolerance = 1e-9L);

}  // namespace eedp::smoothing
