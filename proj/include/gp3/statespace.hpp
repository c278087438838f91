// Three-level state vectors, the octant+torus coordinate chart, rank-1
// projectors, and the embedding into the two-qubit space.
#pragma once

#include "gp3/errors.hpp"
#include "gp3/types.hpp"

namespace gp3 {

// Basis mapping of the three-level space into the two-qubit basis
// {|00>,|01>,|10>,|11>}: three-level amplitudes live at indices 0, 2, 3;
// index 1 (|01>) is reserved for the reference state.
inline constexpr int kEmbedIndex[3] = {0, 2, 3};
inline constexpr int kReferenceIndex = 1;

// Unit-norm complex amplitude vector of dimension 3 or 4.
// Dimension-3 vectors use basis order |00>,|10>,|11>; dimension-4 vectors
// use |00>,|01>,|10>,|11>. Immutable after construction.
class StateVec {
 public:
  explicit StateVec(Vec amplitudes);

  static StateVec basis(Eigen::Index dim, Eigen::Index k);

  Eigen::Index dim() const { return amps_.size(); }
  const Vec& amplitudes() const { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

 private:
  Vec amps_;
};

// Point of the octant+torus chart: (theta, phi) on the positive octant of
// S^2, (chi1, chi2) on the torus fibre.
struct ParamPoint {
  double theta;  // [0, pi/2]
  double phi;    // [0, pi/2]
  double chi1;   // [0, 2pi)
  double chi2;   // [0, 2pi)

  ParamPoint(double theta, double phi, double chi1, double chi2);
};

struct ChartCoords {
  ParamPoint point;
  double eta;  // global phase, (-pi, pi]
};

// Rank-1 projector rho = |psi><psi|: Hermitian, idempotent, trace 1.
class Ray {
 public:
  explicit Ray(Mat matrix);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Mat& matrix() const { return matrix_; }

 private:
  Mat matrix_;
};

// Chart map: (e^{i chi1} cos theta, e^{i chi2} sin theta cos phi,
// sin theta sin phi), with global phase eta = 0.
StateVec param_to_state(const ParamPoint& p);

// Inverse chart. The global phase eta is fixed so that the last nonzero
// amplitude (checked in index order 2, 1, 0) is real positive; any chart
// angle left undetermined by a vanishing amplitude is set to 0.
ChartCoords state_to_param(const StateVec& v);

Ray projector(const StateVec& v);

// embed places dim-3 amplitudes at indices {0, 2, 3} of a dim-4 vector;
// extract inverts it and fails if the |01> amplitude exceeds the leakage
// tolerance.
StateVec embed(const StateVec& v3);
StateVec extract(const StateVec& v4);

// <v|w>, conjugate-linear in the first argument.
Complex overlap(const StateVec& v, const StateVec& w);

}  // namespace gp3
