#include "gp3/geometry.hpp"

#include <cmath>
#include <utility>

namespace gp3 {

namespace {

// Treat overlaps this close to 1 as the same ray.
constexpr double kSameRay = 1e-14;

}  // namespace

GeodesicArc make_geodesic(const StateVec& psi_k, const StateVec& psi_k1) {
  const Complex z = overlap(psi_k, psi_k1);
  if (std::abs(z) <= tol::kOrthogonal) {
    throw DegeneracyError("no unique geodesic lift: endpoints are orthogonal");
  }
  const Complex align = std::polar(1.0, -std::arg(z));
  Vec end = align * psi_k1.amplitudes();
  const double ovl = std::min(std::abs(z), 1.0);
  if (ovl >= 1.0 - kSameRay) {
    return GeodesicArc(psi_k, StateVec(std::move(end)),
                       Vec::Zero(psi_k.dim()), 0.0);
  }
  Vec dir = end - ovl * psi_k.amplitudes();
  dir /= dir.norm();  // norm is sqrt(1 - ovl^2)
  return GeodesicArc(psi_k, StateVec(std::move(end)), std::move(dir),
                     std::acos(ovl));
}

StateVec arc_point(const GeodesicArc& arc, double s) {
  if (s < 0.0 || s > arc.s_max()) {
    throw std::out_of_range("arc parameter outside [0, s_max]");
  }
  if (arc.degenerate()) return arc.start();
  return StateVec(std::cos(s) * arc.start().amplitudes() +
                  std::sin(s) * arc.direction());
}

Curve arc_curve(const GeodesicArc& arc) {
  const Vec start = arc.start().amplitudes();
  const Vec dir = arc.degenerate() ? Vec::Zero(arc.start().dim())
                                   : arc.direction();
  Curve curve;
  curve.value = [start, dir](double s) -> Vec {
    return std::cos(s) * start + std::sin(s) * dir;
  };
  curve.derivative = [start, dir](double s) -> Vec {
    return -std::sin(s) * start + std::cos(s) * dir;
  };
  curve.s_begin = 0.0;
  curve.s_end = arc.s_max();
  return curve;
}

double total_phase(const StateVec& v, const StateVec& w) {
  const Complex z = overlap(v, w);
  if (std::abs(z) <= tol::kOrthogonal) {
    throw DegeneracyError("total phase undefined: vanishing overlap");
  }
  return wrap_angle(std::arg(z));
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& quad) {
  if (a > b) throw std::invalid_argument("integrate requires a <= b");
  if (a == b) return {0.0, 0.0, 0};

  auto simpson = [&](int n) {
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += ((i & 1) ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
  };

  int n = 8;
  double prev = simpson(n);
  double est = 0.0;
  while (2 * n <= quad.max_panels) {
    n *= 2;
    const double cur = simpson(n);
    est = std::abs(cur - prev) / 15.0;
    if (est <= quad.tolerance) return {cur, est, n};
    prev = cur;
  }
  throw QuadratureError("quadrature did not converge within the panel budget",
                        est);
}

double dynamical_phase(const Curve& curve, const QuadratureConfig& quad) {
  if (!curve.value) throw std::invalid_argument("curve has no value function");
  if (curve.s_begin > curve.s_end) {
    throw std::invalid_argument("curve interval must satisfy s_begin <= s_end");
  }
  std::function<Vec(double)> deriv = curve.derivative;
  if (!deriv) {
    const double h = quad.fd_step;
    const auto value = curve.value;
    deriv = [value, h](double s) -> Vec {
      const Vec d1 = (value(s + h) - value(s - h)) / (2.0 * h);
      const Vec d2 = (value(s + h / 2.0) - value(s - h / 2.0)) / h;
      return (4.0 * d2 - d1) / 3.0;
    };
  }
  // gamma_d = -int <psi|i d_s psi> ds = int Im<psi|psi'> ds for unit lifts.
  auto integrand = [&](double s) {
    return curve.value(s).dot(deriv(s)).imag();
  };
  return integrate(integrand, curve.s_begin, curve.s_end, quad).value;
}

PhaseReport geometric_phase(const Curve& curve, const QuadratureConfig& quad) {
  const double total = total_phase(StateVec(curve.value(curve.s_begin)),
                                   StateVec(curve.value(curve.s_end)));
  const double dynamical = dynamical_phase(curve, quad);
  return {total, dynamical, wrap_angle(total - dynamical)};
}

PolygonPath make_polygon(const std::vector<StateVec>& vertices) {
  const auto n = vertices.size();
  if (n < 3) throw std::invalid_argument("polygon requires at least 3 vertices");
  for (const auto& v : vertices) {
    if (v.dim() != vertices.front().dim()) {
      throw std::invalid_argument("polygon vertices must have equal dimension");
    }
  }

  std::vector<Ray> rays;
  rays.reserve(n);
  for (const auto& v : vertices) rays.push_back(projector(v));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& next = rays[(k + 1) % n].matrix();
    if ((rays[k].matrix() - next).cwiseAbs().maxCoeff() < tol::kNorm) {
      throw std::invalid_argument("polygon has consecutive duplicate rays");
    }
  }

  std::vector<GeodesicArc> arcs;
  arcs.reserve(n);
  StateVec current = vertices.front();
  for (std::size_t k = 0; k < n; ++k) {
    GeodesicArc arc = make_geodesic(current, vertices[(k + 1) % n]);
    current = arc.end_aligned();
    arcs.push_back(std::move(arc));
  }
  return PolygonPath{std::move(rays), std::move(arcs)};
}

PhaseReport polygon_phase(const PolygonPath& path, const QuadratureConfig& quad) {
  if (path.arcs.empty()) throw std::invalid_argument("empty polygon");
  double dynamical = 0.0;
  for (const auto& arc : path.arcs) {
    dynamical += dynamical_phase(arc_curve(arc), quad);
  }
  const double total =
      total_phase(path.arcs.front().start(), path.arcs.back().end_aligned());
  return {total, dynamical, wrap_angle(total - dynamical)};
}

Complex bargmann_invariant(const std::vector<StateVec>& vectors) {
  const auto n = vectors.size();
  if (n < 3) throw std::invalid_argument("Bargmann invariant requires n >= 3");
  Complex prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = overlap(vectors[k], vectors[(k + 1) % n]);
    if (std::abs(z) <= tol::kOrthogonal) {
      throw DegeneracyError("degenerate polygon: consecutive overlap vanishes");
    }
    prod *= z;
  }
  return prod;
}

double bargmann_gp(const std::vector<StateVec>& vectors) {
  return wrap_angle(-std::arg(bargmann_invariant(vectors)));
}

double bargmann_gp_trace(const std::vector<Ray>& rays) {
  const auto n = rays.size();
  if (n < 3) throw std::invalid_argument("Bargmann invariant requires n >= 3");
  Mat prod = rays.front().matrix();
  for (std::size_t k = 1; k < n; ++k) {
    if (rays[k].dim() != rays.front().dim()) {
      throw std::invalid_argument("rays must have equal dimension");
    }
    prod = prod * rays[k].matrix();
  }
  const Complex t = prod.trace();
  if (std::abs(t) <= tol::kOrthogonal) {
    throw DegeneracyError("degenerate polygon: trace invariant vanishes");
  }
  return wrap_angle(-std::arg(t));
}

}  // namespace gp3
