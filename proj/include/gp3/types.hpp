// Shared numeric types, angle helpers, and the tolerance ledger.
#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace gp3 {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Vector4 = Eigen::Vector4cd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr double kPi = std::numbers::pi;

// Principal value in (-pi, pi].
double wrap_angle(double a);

// Shortest-arc distance between two angles.
double circular_distance(double a, double b);

// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double kNorm = 1e-12;        // unit norm / hermiticity / trace
inline constexpr double kOrthogonal = 1e-12;  // overlaps below this count as zero
inline constexpr double kIdempotent = 1e-10;  // projector idempotency
inline constexpr double kLeakage = 1e-10;     // |01> reference-state leakage
inline constexpr double kReparam = 1e-10;     // reparametrization reconstruction
inline constexpr double kClosure = 1e-8;      // cycle closure (convention guard)
}  // namespace tol

}  // namespace gp3
