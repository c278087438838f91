#include "gp3/nmr.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace gp3 {

namespace {

Matrix2 pauli(Axis axis) {
  Matrix2 m;
  switch (axis) {
    case Axis::x:
      m << 0, 1, 1, 0;
      break;
    case Axis::y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Axis::z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix4 kron2(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const Matrix2 kId2 = Matrix2::Identity();

void check_unitary4(const Matrix4& u, const char* what) {
  if ((u.adjoint() * u - Matrix4::Identity()).cwiseAbs().maxCoeff() >
      tol::kNorm) {
    throw std::invalid_argument(std::string(what) + " is not unitary");
  }
}

// SU(2) axis-angle decomposition target = exp(-i gamma n.I).
struct AxisAngle {
  double gamma;
  double beta;  // polar angle of n
  double phi;   // azimuth of n
};

AxisAngle su2_axis_angle(const Matrix2& t) {
  const double c0 = 0.5 * t.trace().real();
  Eigen::Vector3d v;
  v << -0.5 * (pauli(Axis::x) * t).trace().imag(),
      -0.5 * (pauli(Axis::y) * t).trace().imag(),
      -0.5 * (pauli(Axis::z) * t).trace().imag();
  const double sn = v.norm();
  AxisAngle out{2.0 * std::atan2(sn, c0), 0.0, 0.0};
  if (sn > 1e-14) {
    const Eigen::Vector3d n = v / sn;
    out.beta = std::atan2(std::hypot(n.x(), n.y()), n.z());
    out.phi = (std::hypot(n.x(), n.y()) > 1e-14) ? std::atan2(n.y(), n.x())
                                                 : 0.0;
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* spin_name(Spin s) { return s == Spin::a ? "a" : "b"; }

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    default:
      return "z";
  }
}

Spin parse_spin(const std::string& s) {
  if (s == "a") return Spin::a;
  if (s == "b") return Spin::b;
  throw Error("unknown spin label: " + s);
}

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw Error("unknown axis label: " + s);
}

}  // namespace

SpinSystem::SpinSystem(double omega_a, double omega_b, double j_coupling)
    : omega_a(omega_a), omega_b(omega_b), j_coupling(j_coupling) {
  if (!(j_coupling > 0.0)) {
    throw std::invalid_argument("scalar coupling J must be positive");
  }
}

double op_duration(const PulseOp& op) {
  return std::visit(
      [](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, RfPulse>) return o.duration;
        if constexpr (std::is_same_v<T, DelayOp>) return o.duration;
        return 0.0;
      },
      op);
}

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const auto& op : ops) t += op_duration(op);
  return t;
}

void PulseSequence::append(const PulseSequence& other) {
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

DensityMatrix::DensityMatrix(Matrix4 matrix, Mode mode)
    : matrix_(std::move(matrix)), mode_(mode) {
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kNorm) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  const double expected_trace = mode_ == Mode::normalized ? 1.0 : 0.0;
  if (std::abs(matrix_.trace() - Complex(expected_trace)) > tol::kNorm) {
    throw std::invalid_argument("density matrix has wrong trace for its mode");
  }
}

DensityMatrix DensityMatrix::pure(const StateVec& v4) {
  if (v4.dim() != 4) {
    throw std::invalid_argument("DensityMatrix::pure expects a dim-4 state");
  }
  const Vector4 a = v4.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

Matrix4 rf_unitary(const RfPulse& p) {
  if (!std::isfinite(p.angle)) {
    throw std::invalid_argument("pulse angle must be finite");
  }
  if (p.duration < 0.0) {
    throw std::invalid_argument("pulse duration must be nonnegative");
  }
  const Matrix2 u = std::cos(p.angle / 2.0) * kId2 -
                    Complex(0, 1) * std::sin(p.angle / 2.0) * pauli(p.axis);
  return p.spin == Spin::a ? kron2(u, kId2) : kron2(kId2, u);
}

Matrix4 delay_unitary(double duration, const SpinSystem& sys) {
  if (duration < 0.0) {
    throw std::invalid_argument("delay duration must be nonnegative");
  }
  // exp(-i 2 pi J t Iz^a Iz^b); diagonal phases -+ pi J t / 2.
  const double d = kPi * sys.j_coupling * duration / 2.0;
  Matrix4 u = Matrix4::Zero();
  u(0, 0) = std::polar(1.0, -d);
  u(1, 1) = std::polar(1.0, d);
  u(2, 2) = std::polar(1.0, d);
  u(3, 3) = std::polar(1.0, -d);
  return u;
}

DensityMatrix apply(const PulseOp& op, const DensityMatrix& rho,
                    const SpinSystem& sys) {
  return std::visit(
      [&](const auto& o) -> DensityMatrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, RfPulse>) {
          const Matrix4 u = rf_unitary(o);
          return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.mode());
        } else if constexpr (std::is_same_v<T, DelayOp>) {
          const Matrix4 u = delay_unitary(o.duration, sys);
          return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.mode());
        } else if constexpr (std::is_same_v<T, GradientZ>) {
          const Matrix4 crushed = rho.matrix().diagonal().asDiagonal();
          return DensityMatrix(crushed, rho.mode());
        } else {
          check_unitary4(o.u, "ideal gate");
          return DensityMatrix(o.u * rho.matrix() * o.u.adjoint(), rho.mode());
        }
      },
      op);
}

RunResult run_sequence(const PulseSequence& seq, const DensityMatrix& rho0,
                       const SpinSystem& sys) {
  DensityMatrix rho = rho0;
  for (const auto& op : seq.ops) rho = apply(op, rho, sys);
  return RunResult{std::move(rho), seq.total_duration()};
}

Matrix4 sequence_unitary(const PulseSequence& seq, const SpinSystem& sys) {
  Matrix4 net = Matrix4::Identity();
  for (const auto& op : seq.ops) {
    if (std::holds_alternative<GradientZ>(op)) {
      throw std::invalid_argument(
          "sequence_unitary: gradient crushers are not unitary");
    }
    const Matrix4 u = std::visit(
        [&](const auto& o) -> Matrix4 {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, RfPulse>) return rf_unitary(o);
          if constexpr (std::is_same_v<T, DelayOp>)
            return delay_unitary(o.duration, sys);
          if constexpr (std::is_same_v<T, IdealGate>) return o.u;
          return Matrix4::Identity();
        },
        op);
    net = u * net;
  }
  return net;
}

Matrix4 iz_operator(Spin spin) {
  const Matrix2 half_z = 0.5 * pauli(Axis::z);
  return spin == Spin::a ? kron2(half_z, kId2) : kron2(kId2, half_z);
}

double deviation_overlap(const Matrix4& m1, const Matrix4& m2) {
  const Matrix4 d1 = m1 - m1.trace() / 4.0 * Matrix4::Identity();
  const Matrix4 d2 = m2 - m2.trace() / 4.0 * Matrix4::Identity();
  const double n1 = (d1.adjoint() * d1).trace().real();
  const double n2 = (d2.adjoint() * d2).trace().real();
  if (n1 <= 0.0 || n2 <= 0.0) {
    throw std::invalid_argument("deviation_overlap needs nonzero traceless parts");
  }
  return (d1.adjoint() * d2).trace().real() / std::sqrt(n1 * n2);
}

PulseSequence preparation_sequence(const SpinSystem& sys) {
  PulseSequence seq;
  seq.append(RfPulse{Spin::b, Axis::x, kPi / 3.0});
  seq.append(GradientZ{});
  seq.append(RfPulse{Spin::b, Axis::x, kPi / 4.0});
  seq.append(DelayOp{1.0 / (2.0 * sys.j_coupling)});
  seq.append(RfPulse{Spin::b, Axis::y, kPi / 4.0});
  seq.append(GradientZ{});
  return seq;
}

Preparation prepare_pseudopure(PrepMode mode, const SpinSystem& sys,
                               const Polarizations& pol) {
  const DensityMatrix target = DensityMatrix::pure(StateVec::basis(4, 0));
  if (mode == PrepMode::ideal) {
    return Preparation{target, 1.0};
  }
  const Matrix4 initial =
      pol.p_a * iz_operator(Spin::a) + pol.p_b * iz_operator(Spin::b);
  const DensityMatrix rho0(initial, DensityMatrix::Mode::deviation);
  DensityMatrix rho = run_sequence(preparation_sequence(sys), rho0, sys).rho;
  const double fidelity = deviation_overlap(rho.matrix(), target.matrix());
  return Preparation{std::move(rho), fidelity};
}

PulseSequence compile_controlled_R(double s, const SpinSystem& sys) {
  if (!(std::abs(s) <= kPi / 2.0)) {
    throw std::invalid_argument("controlled-R angle must lie in [-pi/2, pi/2]");
  }
  const double t = std::abs(s) / (kPi * sys.j_coupling);
  const double half = s >= 0.0 ? kPi / 2.0 : -kPi / 2.0;
  PulseSequence seq;
  seq.append(RfPulse{Spin::a, Axis::x, half});
  seq.append(DelayOp{t});
  seq.append(RfPulse{Spin::a, Axis::x, -half});
  seq.append(RfPulse{Spin::a, Axis::y, s});
  return seq;
}

PulseSequence compile_controlled_su2(const Matrix2& target,
                                     const SpinSystem& sys) {
  if ((target.adjoint() * target - kId2).cwiseAbs().maxCoeff() > tol::kNorm ||
      std::abs(target.determinant() - Complex(1.0)) > 1e-10) {
    throw std::invalid_argument("controlled-SU(2) target must be special unitary");
  }
  const AxisAngle aa = su2_axis_angle(target);

  PulseSequence seq;
  seq.append(RfPulse{Spin::b, Axis::z, -aa.phi});
  seq.append(RfPulse{Spin::b, Axis::y, -kPi - aa.beta});
  seq.append(DelayOp{aa.gamma / (2.0 * kPi * sys.j_coupling)});
  seq.append(RfPulse{Spin::b, Axis::y, kPi + aa.beta});
  seq.append(RfPulse{Spin::b, Axis::z, aa.phi});
  // rotation by gamma/2 about n(beta, phi) as a z-y-z composite
  seq.append(RfPulse{Spin::b, Axis::z, -aa.phi});
  seq.append(RfPulse{Spin::b, Axis::y, -aa.beta});
  seq.append(RfPulse{Spin::b, Axis::z, aa.gamma / 2.0});
  seq.append(RfPulse{Spin::b, Axis::y, aa.beta});
  seq.append(RfPulse{Spin::b, Axis::z, aa.phi});

  Matrix4 full_target = Matrix4::Identity();
  full_target.block<2, 2>(2, 2) = target;
  if (aligned_gate_fidelity(sequence_unitary(seq, sys), full_target) <
      1.0 - 1e-8) {
    throw ConventionError("decomposition invalid: compiled gate misses target");
  }
  return seq;
}

PulseSequence compile_controlled_R23(double chi, double tau, double neg_xi,
                                     const SpinSystem& sys) {
  const Matrix4 target = rot_R23(-tau, chi, neg_xi);
  return compile_controlled_su2(target.block<2, 2>(2, 2), sys);
}

double aligned_gate_fidelity(const Matrix4& net, const Matrix4& target,
                             PhaseAlignment alignment) {
  check_unitary4(net, "net gate");
  check_unitary4(target, "target gate");
  const Matrix4 residue = net * target.adjoint();
  Vector4 phases;
  if (alignment == PhaseAlignment::global_only) {
    const Complex t = residue.trace();
    const Complex g = std::abs(t) > 1e-14 ? t / std::abs(t) : Complex(1.0);
    phases.setConstant(g);
  } else {
    for (int k = 0; k < 4; ++k) {
      const Complex d = residue(k, k);
      phases(k) = std::abs(d) > 1e-14 ? d / std::abs(d) : Complex(1.0);
    }
    phases(1) = phases(0);  // the |00>/|01> interference pair is locked
  }
  const Matrix4 aligned = phases.asDiagonal() * target;
  return 1.0 - (net - aligned).cwiseAbs().maxCoeff();
}

double read_phase(const DensityMatrix& rho) {
  const Complex c = rho.matrix()(0, 1);
  if (std::abs(c) < 1e-10) {
    throw DegeneracyError("no signal: vanishing |00>/|01> coherence");
  }
  return wrap_angle(std::arg(c));
}

PulseSequence hadamard_b(GateMode mode) {
  PulseSequence seq;
  if (mode == GateMode::ideal) {
    Matrix2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    seq.append(IdealGate{kron2(kId2, h)});
  } else {
    seq.append(RfPulse{Spin::b, Axis::y, kPi / 2.0});
    seq.append(RfPulse{Spin::b, Axis::x, kPi});
  }
  return seq;
}

PulseSequence compile_cycle(const CycleUnitaries& cu, GateMode mode,
                            const SpinSystem& sys) {
  PulseSequence seq;
  if (mode == GateMode::ideal) {
    seq.append(IdealGate{cu.u1(cu.s1_end())});
    seq.append(IdealGate{cu.u2(cu.s2_end())});
    seq.append(IdealGate{cu.u3(cu.s3_end())});
    return seq;
  }
  const Matrix2 v2 = cu.v2().block<2, 2>(2, 2);
  const Matrix2 v3 = cu.v3().block<2, 2>(2, 2);
  // u1 = R(s1)
  seq.append(compile_controlled_R(cu.s1_end(), sys));
  // u2 = R(s1) V2 R(s2) V2^-1 R(-s1), applied right to left
  seq.append(compile_controlled_R(-cu.s1_end(), sys));
  seq.append(compile_controlled_su2(v2.adjoint(), sys));
  seq.append(compile_controlled_R(cu.s2_end(), sys));
  seq.append(compile_controlled_su2(v2, sys));
  seq.append(compile_controlled_R(cu.s1_end(), sys));
  // u3 = V3 R(-s3) V3^-1
  seq.append(compile_controlled_su2(v3.adjoint(), sys));
  seq.append(compile_controlled_R(-cu.s3_end(), sys));
  seq.append(compile_controlled_su2(v3, sys));
  return seq;
}

ExperimentResult full_experiment(const CycleParams& c, GateMode mode,
                                 const SpinSystem& sys) {
  const CycleUnitaries cu(c);
  const Preparation prep = prepare_pseudopure(PrepMode::ideal, sys);
  PulseSequence seq = hadamard_b(mode);
  seq.append(compile_cycle(cu, mode, sys));
  const RunResult run = run_sequence(seq, prep.rho, sys);
  return ExperimentResult{read_phase(run.rho), run.duration};
}

std::string to_text(const PulseSequence& seq) {
  std::ostringstream out;
  for (const auto& op : seq.ops) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, RfPulse>) {
            out << "rf " << spin_name(o.spin) << ' ' << axis_name(o.axis)
                << ' ' << format_double(o.angle) << ' '
                << format_double(o.duration) << '\n';
          } else if constexpr (std::is_same_v<T, DelayOp>) {
            out << "delay - - 0 " << format_double(o.duration) << '\n';
          } else if constexpr (std::is_same_v<T, GradientZ>) {
            out << "gradz - - 0 0\n";
          } else {
            out << "gate - - 0 0";
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j)
                out << ' ' << format_double(o.u(i, j).real()) << ' '
                    << format_double(o.u(i, j).imag());
            out << '\n';
          }
        },
        op);
  }
  return out.str();
}

PulseSequence sequence_from_text(const std::string& text) {
  PulseSequence seq;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind, spin, axis;
    double angle = 0.0, duration = 0.0;
    if (!(ls >> kind >> spin >> axis >> angle >> duration)) {
      throw Error("malformed pulse-sequence line: " + line);
    }
    if (kind == "rf") {
      seq.append(RfPulse{parse_spin(spin), parse_axis(axis), angle, duration});
    } else if (kind == "delay") {
      seq.append(DelayOp{duration});
    } else if (kind == "gradz") {
      seq.append(GradientZ{});
    } else if (kind == "gate") {
      Matrix4 u;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double re = 0.0, im = 0.0;
          if (!(ls >> re >> im)) {
            throw Error("malformed gate line: " + line);
          }
          u(i, j) = Complex(re, im);
        }
      seq.append(IdealGate{u});
    } else {
      throw Error("unknown pulse-sequence op: " + kind);
    }
  }
  return seq;
}

}  // namespace gp3
