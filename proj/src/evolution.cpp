#include "gp3/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gp3 {

namespace {

Complex closure_amplitude_raw(double s1, double s2, double theta, double varphi) {
  return std::cos(s1) * std::cos(s2) -
         std::polar(1.0, theta) * std::sin(s1) * std::sin(s2) * std::cos(varphi);
}

void require_half_open_range(double x, const char* name) {
  if (!(x >= 0.0 && x <= kPi / 2.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, pi/2]");
  }
}

}  // namespace

CycleParams::CycleParams(double s1_0, double s2_0, double theta, double varphi)
    : s1_0(s1_0), s2_0(s2_0), theta(theta), varphi(varphi) {
  require_half_open_range(s1_0, "s1_0");
  require_half_open_range(s2_0, "s2_0");
  require_half_open_range(varphi, "varphi");
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite");
  }
  if (std::abs(closure_amplitude_raw(s1_0, s2_0, theta, varphi)) <=
      tol::kOrthogonal) {
    throw DegeneracyError(
        "cycle closure is orthogonal to |00>: beta undefined for these "
        "parameters");
  }
}

Unitary4 rot_R(double s) {
  const double c = std::cos(s), sn = std::sin(s);
  Unitary4 m = Unitary4::Identity();
  m(0, 0) = c;
  m(0, 2) = -sn;
  m(2, 0) = sn;
  m(2, 2) = c;
  return m;
}

Unitary4 rot_R_deriv(double s) {
  const double c = std::cos(s), sn = std::sin(s);
  Unitary4 m = Unitary4::Zero();
  m(0, 0) = -sn;
  m(0, 2) = -c;
  m(2, 0) = c;
  m(2, 2) = -sn;
  return m;
}

Unitary4 rot_R23(double mix, double ph1, double ph2) {
  const double c = std::cos(mix), sn = std::sin(mix);
  Unitary4 m = Unitary4::Identity();
  m(2, 2) = std::polar(c, ph1);
  m(2, 3) = std::polar(sn, -ph2);
  m(3, 2) = -std::polar(sn, ph2);
  m(3, 3) = std::polar(c, -ph1);
  return m;
}

StateVec psi2(const CycleParams& c) {
  Vec v = Vec::Zero(4);
  v(0) = std::cos(c.s1_0);
  v(2) = std::sin(c.s1_0);
  return StateVec(std::move(v));
}

StateVec psi3(const CycleParams& c) {
  Vec v = Vec::Zero(4);
  v(0) = closure_amplitude_raw(c.s1_0, c.s2_0, c.theta, c.varphi);
  v(2) = std::sin(c.s1_0) * std::cos(c.s2_0) +
         std::polar(1.0, c.theta) * std::cos(c.s1_0) * std::sin(c.s2_0) *
             std::cos(c.varphi);
  v(3) = std::sin(c.varphi) * std::sin(c.s2_0);
  return StateVec(std::move(v));
}

Complex closure_amplitude(const CycleParams& c) {
  return closure_amplitude_raw(c.s1_0, c.s2_0, c.theta, c.varphi);
}

Reparam reparametrize(const StateVec& v) {
  if (v.dim() != 4) {
    throw std::invalid_argument("reparametrize expects a dim-4 state");
  }
  if (std::abs(v[kReferenceIndex]) > tol::kLeakage) {
    throw LeakageError("reference-state leakage: |01> amplitude exceeds tolerance");
  }
  const Complex a11 = v[3];
  if (std::abs(a11) > tol::kOrthogonal &&
      (std::abs(a11.imag()) > tol::kReparam || a11.real() < -tol::kReparam)) {
    throw ConventionError("|11> amplitude must be real nonnegative");
  }

  const double m0 = std::abs(v[0]);
  Reparam r{};
  r.s3_0 = std::acos(std::clamp(m0, 0.0, 1.0));
  r.xi = m0 > tol::kOrthogonal ? std::arg(v[0]) : 0.0;
  const double sin_s3 = std::sqrt(std::max(0.0, 1.0 - m0 * m0));
  if (sin_s3 > tol::kOrthogonal) {
    r.tau = std::atan2(std::max(a11.real(), 0.0), std::abs(v[2]));
    r.chi = std::abs(v[2]) > tol::kOrthogonal ? wrap_angle(std::arg(v[2]) - r.xi)
                                              : 0.0;
  }

  if ((reparam_reconstruct(r).amplitudes() - v.amplitudes())
          .cwiseAbs()
          .maxCoeff() > tol::kReparam) {
    throw ConventionError("reparametrization failed to reconstruct the state");
  }
  return r;
}

StateVec reparam_reconstruct(const Reparam& r) {
  Vec v = Vec::Zero(4);
  v(0) = std::polar(std::cos(r.s3_0), r.xi);
  v(2) = std::polar(std::sin(r.s3_0) * std::cos(r.tau), r.xi + r.chi);
  v(3) = std::sin(r.s3_0) * std::sin(r.tau);
  return StateVec(std::move(v));
}

CycleUnitaries::CycleUnitaries(const CycleParams& c)
    : params_(c),
      psi1_(StateVec::basis(4, 0)),
      psi2_(psi2(c)),
      psi3_(psi3(c)),
      rep_(reparametrize(psi3_)),
      r_s1_(rot_R(c.s1_0)),
      v2_(rot_R23(-c.varphi, c.theta, 0.0)),
      v3_(rot_R23(-rep_.tau, rep_.chi, -rep_.xi)),
      beta_(wrap_angle(std::arg(psi3_[0]))) {
  const Vector4 e00 = Vector4::Unit(0);
  const Vector4 closed =
      u3(s3_end()) * (u2(s2_end()) * (u1(s1_end()) * e00)).eval();
  const Vector4 expected = std::polar(1.0, beta_) * e00;
  if ((closed - expected).cwiseAbs().maxCoeff() > tol::kClosure) {
    throw ConventionError("convention mismatch: cycle failed to close");
  }
}

Unitary4 CycleUnitaries::u1(double s) const { return rot_R(s); }

Unitary4 CycleUnitaries::u2(double s) const {
  return r_s1_ * v2_ * rot_R(s) * v2_.adjoint() * r_s1_.adjoint();
}

Unitary4 CycleUnitaries::u3(double s) const {
  return v3_ * rot_R(-s) * v3_.adjoint();
}

double beta_predicted(const CycleParams& c) {
  const Complex z = closure_amplitude(c);
  if (std::abs(z) <= tol::kOrthogonal) {
    throw DegeneracyError("beta undefined (orthogonal closure)");
  }
  return wrap_angle(std::arg(z));
}

std::array<Curve, 3> leg_curves(const CycleUnitaries& cu) {
  const Vector4 p1 = Vector4::Unit(0);
  const Vector4 p2 = cu.u1(cu.s1_end()) * p1;
  const Vector4 p3 = cu.u2(cu.s2_end()) * p2;
  const Matrix4 r_s1 = rot_R(cu.params().s1_0);
  const Matrix4 v2 = cu.v2();
  const Matrix4 v3 = cu.v3();

  Curve leg1;
  leg1.value = [p1](double s) -> Vec { return rot_R(s) * p1; };
  leg1.derivative = [p1](double s) -> Vec { return rot_R_deriv(s) * p1; };
  leg1.s_end = cu.s1_end();

  Curve leg2;
  leg2.value = [r_s1, v2, p2](double s) -> Vec {
    return r_s1 * (v2 * (rot_R(s) * (v2.adjoint() * (r_s1.adjoint() * p2))));
  };
  leg2.derivative = [r_s1, v2, p2](double s) -> Vec {
    return r_s1 *
           (v2 * (rot_R_deriv(s) * (v2.adjoint() * (r_s1.adjoint() * p2))));
  };
  leg2.s_end = cu.s2_end();

  Curve leg3;
  leg3.value = [v3, p3](double s) -> Vec {
    return v3 * (rot_R(-s) * (v3.adjoint() * p3));
  };
  leg3.derivative = [v3, p3](double s) -> Vec {
    return v3 * (-rot_R_deriv(-s) * (v3.adjoint() * p3));
  };
  leg3.s_end = cu.s3_end();

  return {std::move(leg1), std::move(leg2), std::move(leg3)};
}

PhaseReport run_cycle(const CycleParams& c, const QuadratureConfig& quad) {
  const CycleUnitaries cu(c);
  const auto legs = leg_curves(cu);
  double dynamical = 0.0;
  for (const auto& leg : legs) dynamical += dynamical_phase(leg, quad);
  const StateVec closing(legs[2].value(legs[2].s_end));
  const double total = total_phase(cu.psi_1(), closing);
  return {total, dynamical, wrap_angle(total - dynamical)};
}

}  // namespace gp3
