#include "gp3/statespace.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace gp3;
using gp3::testing::make_rng;
using gp3::testing::max_abs_diff;
using gp3::testing::random_angle;
using gp3::testing::random_state;

namespace {

Vec vec3(Complex a, Complex b, Complex c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("StateVec validates dimension and norm") {
  CHECK_THROWS_AS(StateVec(Vec::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(StateVec(vec3(1.0, 1.0, 0.0)), std::invalid_argument);
  const StateVec v(vec3(1.0, 0.0, 0.0));
  CHECK(v.dim() == 3);
}

TEST_CASE("ParamPoint validates ranges") {
  CHECK_THROWS_AS(ParamPoint(-0.1, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(0.0, kPi, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ParamPoint(0.0, 0.0, 2.0 * kPi, 0.0), std::invalid_argument);
  CHECK_NOTHROW(ParamPoint(kPi / 2.0, 0.0, 0.0, 6.0));
}

TEST_CASE("param_to_state chart examples") {
  CHECK(max_abs_diff(param_to_state(ParamPoint(0, 0, 0, 0)).amplitudes(),
                     vec3(1, 0, 0)) < 1e-15);
  CHECK(max_abs_diff(
            param_to_state(ParamPoint(kPi / 2, kPi / 2, 0, 0)).amplitudes(),
            vec3(0, 0, 1)) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(param_to_state(ParamPoint(kPi / 4, 0, 0, 0)).amplitudes(),
                     vec3(r, r, 0)) < 1e-15);
}

TEST_CASE("param_to_state is exactly normalized") {
  auto rng = make_rng();
  for (int i = 0; i < 200; ++i) {
    const ParamPoint p(random_angle(rng, 0, kPi / 2),
                       random_angle(rng, 0, kPi / 2),
                       random_angle(rng, 0, 2 * kPi - 1e-9),
                       random_angle(rng, 0, 2 * kPi - 1e-9));
    CHECK(std::abs(param_to_state(p).amplitudes().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("state_to_param inverts the chart") {
  const auto [p0, eta0] = state_to_param(StateVec(vec3(1, 0, 0)));
  CHECK(p0.theta == doctest::Approx(0.0));
  CHECK(p0.phi == doctest::Approx(0.0));
  CHECK(p0.chi1 == doctest::Approx(0.0));
  CHECK(p0.chi2 == doctest::Approx(0.0));
  CHECK(eta0 == doctest::Approx(0.0));

  // degenerate third amplitude: eta makes the second amplitude real positive
  const double r = 1.0 / std::sqrt(2.0);
  const auto [p1, eta1] =
      state_to_param(StateVec(vec3(Complex(0, r), r, 0.0)));
  CHECK(p1.theta == doctest::Approx(kPi / 4));
  CHECK(p1.phi == doctest::Approx(0.0));
  CHECK(wrap_angle(p1.chi1 - p1.chi2) == doctest::Approx(kPi / 2));
  CHECK(eta1 == doctest::Approx(0.0));
}

TEST_CASE("state_to_param near the branch cut of the chi angles") {
  // arg - eta lands a hair below zero: chi must wrap into [0, 2pi)
  Vec v(3);
  v << Complex(0.6, -1e-17), 0.0, 0.8;
  CHECK_NOTHROW(state_to_param(StateVec(v)));
}

TEST_CASE("chart round trip on random states") {
  auto rng = make_rng(31);
  for (int i = 0; i < 100; ++i) {
    const StateVec v = random_state(rng);
    const auto [p, eta] = state_to_param(v);
    const Vec rebuilt =
        std::polar(1.0, eta) * param_to_state(p).amplitudes();
    CHECK(max_abs_diff(rebuilt, v.amplitudes()) < 1e-10);
  }
}

TEST_CASE("chart round trip on the open chart") {
  auto rng = make_rng(32);
  for (int i = 0; i < 100; ++i) {
    const ParamPoint p(random_angle(rng, 0.05, kPi / 2 - 0.05),
                       random_angle(rng, 0.05, kPi / 2 - 0.05),
                       random_angle(rng, 0, 2 * kPi - 1e-6),
                       random_angle(rng, 0, 2 * kPi - 1e-6));
    const auto [q, eta] = state_to_param(param_to_state(p));
    CHECK(std::abs(q.theta - p.theta) < 1e-10);
    CHECK(std::abs(q.phi - p.phi) < 1e-10);
    CHECK(circular_distance(q.chi1, p.chi1) < 1e-10);
    CHECK(circular_distance(q.chi2, p.chi2) < 1e-10);
    CHECK(circular_distance(eta, 0.0) < 1e-10);
  }
}

TEST_CASE("projector examples and invariants") {
  const Ray r0 = projector(StateVec(vec3(1, 0, 0)));
  Mat expected = Mat::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK((r0.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  const Ray r1 = projector(StateVec(vec3(s, s, 0)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(r1.matrix()(i, j) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(r1.matrix()(2, 2)) == 0.0);
}

TEST_CASE("projector is gauge invariant") {
  auto rng = make_rng(33);
  for (int i = 0; i < 100; ++i) {
    const StateVec v = random_state(rng);
    const double alpha = random_angle(rng, -kPi, kPi);
    const StateVec w(std::polar(1.0, alpha) * v.amplitudes());
    CHECK((projector(v).matrix() - projector(w).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("Ray rejects invalid matrices") {
  Mat m = Mat::Zero(3, 3);
  m(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(Ray{m}, std::invalid_argument);
  Mat half = Mat::Zero(3, 3);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;  // Hermitian, trace 1, but not idempotent
  CHECK_THROWS_AS(Ray{half}, std::invalid_argument);
}

TEST_CASE("embed and extract") {
  const StateVec v(vec3(0.5, Complex(0, 0.5), std::sqrt(0.5)));
  const StateVec w = embed(v);
  CHECK(w[0] == v[0]);
  CHECK(w[1] == Complex(0.0));
  CHECK(w[2] == v[1]);
  CHECK(w[3] == v[2]);
  const StateVec back = extract(w);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == v[i]);

  CHECK_THROWS_AS(extract(StateVec::basis(4, 1)), LeakageError);
}

TEST_CASE("overlap is the conjugate-linear inner product") {
  const StateVec v(vec3(1, 0, 0));
  CHECK(std::abs(overlap(v, v) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(overlap(v, StateVec(vec3(0, 1, 0)))) == 0.0);

  const Complex ph = std::polar(1.0 / std::sqrt(2.0), kPi / 3.0);
  const StateVec w(vec3(ph, 1.0 / std::sqrt(2.0), 0.0));
  CHECK(std::abs(overlap(v, w) - ph) < 1e-15);
  // conjugate-linear in the first argument
  const StateVec v2(std::polar(1.0, 0.7) * v.amplitudes());
  CHECK(std::abs(overlap(v2, w) - std::polar(1.0, -0.7) * ph) < 1e-15);

  CHECK_THROWS_AS(overlap(v, StateVec::basis(4, 0)), std::invalid_argument);
}
