#pragma once

#include <Eigen/Core>

namespace containment {

using Vec2 = Eigen::Vector2d;

/// Planar pose (x, y, theta). Also used for pose rates and accelerations.
using Pose = Eigen::Vector3d;

inline Vec2 position(const Pose& p) { return p.head<2>(); }

}  // namespace containment
