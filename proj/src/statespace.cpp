#include "gp3/statespace.hpp"

#include <algorithm>
#include <cmath>

namespace gp3 {

namespace {

// Magnitudes below this are treated as exactly zero when resolving chart
// degeneracies.
constexpr double kZeroAmp = 1e-12;

double wrap_two_pi(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;  // a tiny negative input can round up to 2pi
  return w;
}

}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double circular_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

StateVec::StateVec(Vec amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() != 3 && amps_.size() != 4) {
    throw std::invalid_argument("StateVec dimension must be 3 or 4");
  }
  if (std::abs(amps_.norm() - 1.0) > tol::kNorm) {
    throw std::invalid_argument("StateVec must have unit norm");
  }
}

StateVec StateVec::basis(Eigen::Index dim, Eigen::Index k) {
  Vec v = Vec::Zero(dim);
  v(k) = 1.0;
  return StateVec(std::move(v));
}

ParamPoint::ParamPoint(double theta, double phi, double chi1, double chi2)
    : theta(theta), phi(phi), chi1(chi1), chi2(chi2) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0) ||
      !(phi >= 0.0 && phi <= kPi / 2.0)) {
    throw std::invalid_argument("ParamPoint: theta, phi must lie in [0, pi/2]");
  }
  if (!(chi1 >= 0.0 && chi1 < 2.0 * kPi) ||
      !(chi2 >= 0.0 && chi2 < 2.0 * kPi)) {
    throw std::invalid_argument("ParamPoint: chi1, chi2 must lie in [0, 2pi)");
  }
}

Ray::Ray(Mat matrix) : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (matrix_.cols() != n || (n != 3 && n != 4)) {
    throw std::invalid_argument("Ray must be a 3x3 or 4x4 matrix");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kNorm) {
    throw std::invalid_argument("Ray must be Hermitian");
  }
  if ((matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff() > tol::kIdempotent) {
    throw std::invalid_argument("Ray must be idempotent");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol::kNorm) {
    throw std::invalid_argument("Ray must have unit trace");
  }
}

StateVec param_to_state(const ParamPoint& p) {
  Vec v(3);
  v(0) = std::polar(std::cos(p.theta), p.chi1);
  v(1) = std::polar(std::sin(p.theta) * std::cos(p.phi), p.chi2);
  v(2) = Complex(std::sin(p.theta) * std::sin(p.phi), 0.0);
  return StateVec(std::move(v));
}

ChartCoords state_to_param(const StateVec& v) {
  if (v.dim() != 3) {
    throw std::invalid_argument("state_to_param expects a dim-3 state");
  }
  const double m0 = std::abs(v[0]);
  const double m1 = std::abs(v[1]);
  const double m2 = std::abs(v[2]);

  const double theta = std::acos(std::clamp(m0, 0.0, 1.0));
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - m0 * m0));
  const double phi = sin_theta > kZeroAmp ? std::atan2(m2, m1) : 0.0;

  // Gauge convention: last nonzero amplitude (index order 2, 1, 0) is made
  // real positive by the choice of eta.
  double eta = 0.0;
  if (m2 > kZeroAmp) {
    eta = std::arg(v[2]);
  } else if (m1 > kZeroAmp) {
    eta = std::arg(v[1]);
  } else if (m0 > kZeroAmp) {
    eta = std::arg(v[0]);
  }

  const double chi1 = m0 > kZeroAmp ? wrap_two_pi(std::arg(v[0]) - eta) : 0.0;
  const double chi2 = m1 > kZeroAmp ? wrap_two_pi(std::arg(v[1]) - eta) : 0.0;
  return ChartCoords{ParamPoint(theta, phi, chi1, chi2), wrap_angle(eta)};
}

Ray projector(const StateVec& v) {
  return Ray(v.amplitudes() * v.amplitudes().adjoint());
}

StateVec embed(const StateVec& v3) {
  if (v3.dim() != 3) {
    throw std::invalid_argument("embed expects a dim-3 state");
  }
  Vec w = Vec::Zero(4);
  for (int i = 0; i < 3; ++i) w(kEmbedIndex[i]) = v3[i];
  return StateVec(std::move(w));
}

StateVec extract(const StateVec& v4) {
  if (v4.dim() != 4) {
    throw std::invalid_argument("extract expects a dim-4 state");
  }
  if (std::abs(v4[kReferenceIndex]) > tol::kLeakage) {
    throw LeakageError("reference-state leakage: |01> amplitude exceeds tolerance");
  }
  Vec v(3);
  for (int i = 0; i < 3; ++i) v(i) = v4[kEmbedIndex[i]];
  return StateVec(std::move(v));
}

Complex overlap(const StateVec& v, const StateVec& w) {
  if (v.dim() != w.dim()) {
    throw std::invalid_argument("overlap requires equal dimensions");
  }
  return v.amplitudes().dot(w.amplitudes());
}

}  // namespace gp3
