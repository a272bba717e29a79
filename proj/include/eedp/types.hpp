#pragma once

#include <Eigen/Core>

namespace eedp {

// Extended precision: the smoothed valve-point kinks at small mu have
// curvature ~1/sin(mu), which exhausts double resolution of the iterate.
using real_t = long double;

using Vector = Eigen::Matrix<real_t, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<real_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Selects between the OpenMP kernel and its serial reference.
enum class Execution { Serial, Parallel };

}  // namespace eedp
