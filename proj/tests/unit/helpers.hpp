#pragma once

#include <memory>
#include <string>

#include "eedp/dispatch.hpp"

namespace testing {

inline std::string bundled_path() {
  return std::string(EEDP_DATA_DIR) + "/two_gen_650.json";
}

inline const eedp::dispatch::DispatchProblem& two_gen() {
  static const auto problem = eedp::dispatch::load_problem(bundled_path());
  return problem;
}

inline eedp::dispatch::GeneratorCoefficients unit(const std::string& name,
                                                  eedp::real_t p_min,
                                                  eedp::real_t p_max) {
  eedp::dispatch::GeneratorCoefficients u;
  u.name = name;
  u.a = 0.002L;
  u.b = 8;
  u.c = 300;
  u.g_valve = 150;
  u.h_valve = 0.04L;
  u.alpha_e = 0.01L;
  u.beta_e = 1;
  u.gamma_e = 100;
  u.p_min = p_min;
  u.p_max = p_max;
  return u;
}

inline eedp::Vector vec(std::initializer_list<eedp::real_t> v) {
  eedp::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v) out[i++] = x;
  return out;
}

}  // namespace testing
