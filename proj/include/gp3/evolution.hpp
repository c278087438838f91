// Explicit cycle unitaries for the three-leg geodesic triangle
// |00> -> psi2 -> psi3 -> e^{i beta}|00>, the closed-form intermediate
// states, the {xi, chi, tau, s3_0} reparametrization, and the predicted
// closure phase.
//
// The SU(2)_{23} conjugators are bound as rot_R23(-varphi, theta, 0) for the
// second leg and rot_R23(-tau, chi, -xi) for the third; this is the binding
// that reproduces the closed-form psi3 and closes the cycle at
// beta = arg(cos s1_0 cos s2_0 - e^{i theta} sin s1_0 sin s2_0 cos varphi),
// and it is guarded by an explicit closure check at construction.
#pragma once

#include <array>

#include "gp3/geometry.hpp"
#include "gp3/statespace.hpp"
#include "gp3/types.hpp"

namespace gp3 {

using Unitary4 = Matrix4;

// Angles driving one cycle. theta here is the phase parameter carried by
// psi3, not the chart angle of the octant coordinates.
struct CycleParams {
  double s1_0;   // [0, pi/2]
  double s2_0;   // [0, pi/2]
  double theta;  // rad
  double varphi; // [0, pi/2]

  // Validates ranges and rejects parameter sets whose cycle closes onto a
  // state orthogonal to |00> (beta undefined).
  CycleParams(double s1_0, double s2_0, double theta, double varphi);
};

// psi3 = e^{i xi} cos s3_0 |00> + e^{i(xi+chi)} sin s3_0 cos tau |10>
//        + sin s3_0 sin tau |11>.
struct Reparam {
  double xi;
  double chi;
  double tau;   // [0, pi/2]
  double s3_0;  // [0, pi/2]
};

// Real rotation mixing |00> and |10>, identity on |01> and |11>.
Unitary4 rot_R(double s);

// d/ds rot_R(s).
Unitary4 rot_R_deriv(double s);

// SU(2) block on {|10>,|11>}:
//   [ e^{i ph1} cos mix    e^{-i ph2} sin mix ]
//   [ -e^{i ph2} sin mix   e^{-i ph1} cos mix ]
// identity on |00> and |01>.
Unitary4 rot_R23(double mix, double ph1, double ph2);

// Closed-form states reached after the first and second legs (dim 4,
// zero |01> amplitude).
StateVec psi2(const CycleParams& c);
StateVec psi3(const CycleParams& c);

// <00|psi3>; the argument of the predicted closure phase.
Complex closure_amplitude(const CycleParams& c);

// Solves the reparametrization for a dim-4 state with zero |01> amplitude
// and real nonnegative |11> amplitude. Degeneracy conventions: cos s3_0 = 0
// -> xi := 0; cos tau = 0 or s3_0 = 0 -> chi := 0.
Reparam reparametrize(const StateVec& v);

StateVec reparam_reconstruct(const Reparam& r);

// The three one-parameter unitary families. Each leaves |01> strictly
// invariant; endpoints satisfy u1(s1_0)|00> = psi2, u2(s2_0) psi2 = psi3,
// u3(s3_0) psi3 = e^{i beta}|00>.
class CycleUnitaries {
 public:
  explicit CycleUnitaries(const CycleParams& c);

  Unitary4 u1(double s) const;  // R(s)
  Unitary4 u2(double s) const;  // R(s1_0) V2 R(s) V2^-1 R(s1_0)^-1
  Unitary4 u3(double s) const;  // V3 R(-s) V3^-1

  double s1_end() const { return params_.s1_0; }
  double s2_end() const { return params_.s2_0; }
  double s3_end() const { return rep_.s3_0; }

  const CycleParams& params() const { return params_; }
  const StateVec& psi_1() const { return psi1_; }
  const StateVec& psi_2() const { return psi2_; }
  const StateVec& psi_3() const { return psi3_; }
  const Reparam& reparam() const { return rep_; }
  double beta() const { return beta_; }

  // Conjugators, exposed for the pulse compiler.
  const Unitary4& v2() const { return v2_; }
  const Unitary4& v3() const { return v3_; }

 private:
  CycleParams params_;
  StateVec psi1_;
  StateVec psi2_;
  StateVec psi3_;
  Reparam rep_;
  Unitary4 r_s1_;
  Unitary4 v2_;
  Unitary4 v3_;
  double beta_;
};

inline CycleUnitaries cycle_unitaries(const CycleParams& c) {
  return CycleUnitaries(c);
}

// arg(cos s1_0 cos s2_0 - e^{i theta} sin s1_0 sin s2_0 cos varphi),
// principal value.
double beta_predicted(const CycleParams& c);

// The three lifts s -> u_k(s) (state after the previous legs), with analytic
// derivatives; their dynamical phases vanish.
std::array<Curve, 3> leg_curves(const CycleUnitaries& cu);

// Applies the three unitaries at their endpoint parameters to |00>, returns
// the total closure phase together with the quadrature dynamical phase along
// the three lifts (expected ~ 0).
PhaseReport run_cycle(const CycleParams& c, const QuadratureConfig& quad = {});

}  // namespace gp3
