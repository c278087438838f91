// Ray-space geodesics, the phase functionals, and the polygon geometric
// phase via the Bargmann invariant.
//
// Phase conventions used throughout the project:
//   * every returned phase is a principal value in (-pi, pi];
//   * the polygon geometric phase is
//       -arg(<psi_1|psi_2><psi_2|psi_3> ... <psi_n|psi_1>)
//     which equals -arg Tr(rho_1 rho_2 ... rho_n);
//   * geodesic lifts are phase-aligned so that each leg's endpoint overlap is
//     real positive, which makes the dynamical phase of the lift vanish.
#pragma once

#include <functional>
#include <vector>

#include "gp3/statespace.hpp"
#include "gp3/types.hpp"

namespace gp3 {

struct QuadratureConfig {
  double tolerance = 1e-10;  // absolute error-estimate target
  int max_panels = 1 << 16;  // composite Simpson panel budget
  double fd_step = 1e-5;     // central-difference step for non-analytic curves
};

struct QuadratureResult {
  double value;
  double error_estimate;
  int panels;
};

struct PhaseReport {
  double total;      // rad
  double dynamical;  // rad
  double geometric;  // rad, wrap(total - dynamical)
};

// Geodesic arc between two nonorthogonal rays. The stored endpoint is
// phase-aligned so <start|end_aligned> is real positive; the lift direction
// is the unit vector orthogonal to start that spans the arc. s_max = 0 marks
// the degenerate (equal-ray) arc.
class GeodesicArc {
 public:
  GeodesicArc(StateVec start, StateVec end_aligned, Vec direction, double s_max)
      : start_(std::move(start)),
        end_aligned_(std::move(end_aligned)),
        dir_(std::move(direction)),
        s_max_(s_max) {}

  const StateVec& start() const { return start_; }
  const StateVec& end_aligned() const { return end_aligned_; }
  const Vec& direction() const { return dir_; }
  double s_max() const { return s_max_; }
  bool degenerate() const { return s_max_ == 0.0; }

 private:
  StateVec start_;
  StateVec end_aligned_;
  Vec dir_;
  double s_max_;
};

// Parametrized lift psi(s) on [s_begin, s_end]. value(s) must be unit norm;
// when derivative is absent it is computed by central differences with one
// Richardson level, so value must be evaluable in a small neighborhood of
// the interval.
struct Curve {
  std::function<Vec(double)> value;
  std::function<Vec(double)> derivative;
  double s_begin = 0.0;
  double s_end = 0.0;
};

// Closed geodesic polygon: rays at the vertices plus the cyclic arcs joining
// them. Arc lifts are chained so the concatenated curve is continuous.
struct PolygonPath {
  std::vector<Ray> vertices;
  std::vector<GeodesicArc> arcs;
};

// Builds the geodesic arc from psi_k to psi_k1. Throws DegeneracyError for
// orthogonal endpoints; identical rays yield the degenerate arc.
GeodesicArc make_geodesic(const StateVec& psi_k, const StateVec& psi_k1);

// psi(s) = start cos s + direction sin s, for s in [0, s_max].
StateVec arc_point(const GeodesicArc& arc, double s);

Curve arc_curve(const GeodesicArc& arc);

// arg<v|w>; throws DegeneracyError when the overlap vanishes.
double total_phase(const StateVec& v, const StateVec& w);

// Composite Simpson quadrature with panel doubling until the Richardson
// error estimate drops below quad.tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& quad);

// -integral of <psi|i d/ds psi> along the curve.
double dynamical_phase(const Curve& curve, const QuadratureConfig& quad = {});

// Total phase of the endpoints minus the dynamical phase along the curve.
PhaseReport geometric_phase(const Curve& curve, const QuadratureConfig& quad = {});

// Joins n >= 3 vertices cyclically with geodesic arcs. Rejects consecutive
// duplicate rays and orthogonal consecutive vertices.
PolygonPath make_polygon(const std::vector<StateVec>& vertices);

// Geometric phase of the closed polygon by quadrature over the chained lifts.
PhaseReport polygon_phase(const PolygonPath& path, const QuadratureConfig& quad = {});

// Cyclic product <psi_1|psi_2><psi_2|psi_3> ... <psi_n|psi_1>.
Complex bargmann_invariant(const std::vector<StateVec>& vectors);

// -arg of the cyclic overlap product; gauge-invariant.
double bargmann_gp(const std::vector<StateVec>& vectors);

// Same phase from -arg Tr(rho_1 ... rho_n); the independent projector route.
double bargmann_gp_trace(const std::vector<Ray>& rays);

}  // namespace gp3
