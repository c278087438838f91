// Idealized pulse-level simulation of the two-spin system: RF pulses and
// J-coupling delays in the doubly rotating frame, gradient crushers,
// pseudopure preparation, controlled-gate compilation, and interferometric
// phase readout.
//
// Conventions:
//   * an RF pulse R_axis(angle) conjugates by exp(-i angle I_axis) on the
//     addressed spin, with I_axis = sigma_axis / 2;
//   * a delay of duration t conjugates by exp(-i 2 pi J t Iz^a Iz^b), both
//     carriers on resonance;
//   * a z-gradient zeroes every off-diagonal element of the density matrix;
//   * hard pulses and gradients take zero time, only delays contribute to
//     the sequence duration.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gp3/evolution.hpp"
#include "gp3/statespace.hpp"
#include "gp3/types.hpp"

namespace gp3 {

struct SpinSystem {
  double omega_a = 2.0 * kPi * 400e6;  // rad/s
  double omega_b = 2.0 * kPi * 100e6;  // rad/s
  double j_coupling = 214.5;           // Hz

  SpinSystem() = default;
  SpinSystem(double omega_a, double omega_b, double j_coupling);
};

enum class Spin { a, b };
enum class Axis { x, y, z };

struct RfPulse {
  Spin spin;
  Axis axis;
  double angle;           // rad
  double duration = 0.0;  // s; 0 in the hard-pulse idealization
};

struct DelayOp {
  double duration;  // s
};

struct GradientZ {};

struct IdealGate {
  Matrix4 u;  // duration 0
};

using PulseOp = std::variant<RfPulse, DelayOp, GradientZ, IdealGate>;

double op_duration(const PulseOp& op);

struct PulseSequence {
  std::vector<PulseOp> ops;

  double total_duration() const;
  void append(PulseOp op) { ops.push_back(std::move(op)); }
  void append(const PulseSequence& other);
};

// 4x4 Hermitian state, either trace-1 (normalized) or trace-0 (deviation).
class DensityMatrix {
 public:
  enum class Mode { normalized, deviation };

  explicit DensityMatrix(Matrix4 matrix, Mode mode = Mode::normalized);

  static DensityMatrix pure(const StateVec& v4);

  const Matrix4& matrix() const { return matrix_; }
  Mode mode() const { return mode_; }

 private:
  Matrix4 matrix_;
  Mode mode_;
};

Matrix4 rf_unitary(const RfPulse& p);
Matrix4 delay_unitary(double duration, const SpinSystem& sys);

DensityMatrix apply(const PulseOp& op, const DensityMatrix& rho,
                    const SpinSystem& sys);

struct RunResult {
  DensityMatrix rho;
  double duration;  // s
};

RunResult run_sequence(const PulseSequence& seq, const DensityMatrix& rho0,
                       const SpinSystem& sys);

// Net unitary of a gradient-free sequence.
Matrix4 sequence_unitary(const PulseSequence& seq, const SpinSystem& sys);

// I_z operator of one spin (diag +-1/2 in the product basis).
Matrix4 iz_operator(Spin spin);

// Normalized Hilbert-Schmidt overlap of the traceless parts; the standard
// correlation measure for deviation density matrices.
double deviation_overlap(const Matrix4& m1, const Matrix4& m2);

enum class PrepMode { ideal, sequence };

struct Polarizations {
  double p_a = 1.0;
  double p_b = 1.0;
};

struct Preparation {
  DensityMatrix rho;
  double fidelity;  // deviation overlap with the ideal |00> pseudopure target
};

// The spatial-averaging preparation sequence
// Rx^b(pi/3) -> Gz -> Rx^b(pi/4) -> 1/(2J) -> Ry^b(pi/4) -> Gz.
PulseSequence preparation_sequence(const SpinSystem& sys);

// ideal: exact |00><00|. sequence: runs the literal preparation sequence on
// the initial deviation p_a Iz^a + p_b Iz^b and reports the achieved
// fidelity (the sequence does not reproduce the ideal target exactly under
// these conventions; the number is reported, not asserted).
Preparation prepare_pseudopure(PrepMode mode, const SpinSystem& sys,
                               const Polarizations& pol = {});

// Controlled rotation mixing |00> and |10>:
// Rx^a(pi/2) -> s/(pi J) -> Rx^a(-pi/2) -> Ry^a(s), net equal to rot_R(s).
// Negative s (needed for inverse legs) compiles as the mirrored sequence.
PulseSequence compile_controlled_R(double s, const SpinSystem& sys);

// Pulse realization of the controlled SU(2) gate acting on {|10>,|11>} when
// spin a is |1>: the target block is decomposed as exp(-i gamma n.I) with
// axis n(beta, phi); the J-coupling delay gamma/(2 pi J) supplies the
// conditional half-rotation and a final composite-z-y-z rotation by gamma/2
// about n completes it. Verified against the target at construction.
PulseSequence compile_controlled_su2(const Matrix2& target,
                                     const SpinSystem& sys);

// Pulse form of the third-leg conjugator rot_R23(-tau, chi, neg_xi).
PulseSequence compile_controlled_R23(double chi, double tau, double neg_xi,
                                     const SpinSystem& sys);

enum class PhaseAlignment {
  diagonal_pair_locked,  // diagonal phases allowed, |00>/|01> pair locked
  global_only
};

// 1 - max elementwise deviation after the allowed phase alignment.
double aligned_gate_fidelity(const Matrix4& net, const Matrix4& target,
                             PhaseAlignment alignment =
                                 PhaseAlignment::diagonal_pair_locked);

// arg<00|rho|01>, the qubit-b single-quantum coherence phase.
double read_phase(const DensityMatrix& rho);

enum class GateMode { ideal, pulse };

// Hadamard on qubit b: an ideal gate, or the composite Ry^b(pi/2), Rx^b(pi)
// (equal to the Hadamard up to a global phase).
PulseSequence hadamard_b(GateMode mode);

// The three cycle gates as ideal unitaries or compiled pulse sequences.
PulseSequence compile_cycle(const CycleUnitaries& cu, GateMode mode,
                            const SpinSystem& sys);

struct ExperimentResult {
  double beta;      // rad
  double duration;  // s, cyclic-evolution time (delays only)
};

// Ideal pseudopure |00> -> Hadamard on b -> the three cycle gates ->
// phase-sensitive readout of the |00>/|01> coherence.
ExperimentResult full_experiment(const CycleParams& c, GateMode mode,
                                 const SpinSystem& sys = {});

// Line-oriented text form, one op per line; bit-exact round-trip.
std::string to_text(const PulseSequence& seq);
PulseSequence sequence_from_text(const std::string& text);

}  // namespace gp3
