#pragma once

#include <complex>

#include <Eigen/Dense>

namespace elhs {

using Complex = std::complex<double>;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CVec4 = Eigen::Vector4cd;
using CMat3 = Eigen::Matrix3cd;
using CMat4 = Eigen::Matrix4cd;
using CMat43 = Eigen::Matrix<Complex, 4, 3>;
using CMat34 = Eigen::Matrix<Complex, 3, 4>;

inline constexpr Complex iu{0.0, 1.0};   // imaginary unit

/// Bilinear (unconjugated) dot product; Eigen's dot() conjugates the left
/// argument, which is not what the mode algebra wants.
inline Complex bdot(const CVec3& a, const CVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Bilinear cross product; Eigen's cross() conjugates componentwise for
/// complex scalars.
inline CVec3 bcross(const CVec3& a, const CVec3& b) {
    return CVec3(a[1] * b[2] - a[2] * b[1],
                 a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0]);
}

}  // namespace elhs
