/// Frequency-domain input-output simulation: S-parameter matrices and
/// driven-mode expectation profiles for QBHs with port and intrinsic losses.
/// The Lamb shift is dropped and all bath couplings are Markovian
/// (frequency independent); only the positive-frequency sector is modelled.

#pragma once

#include <vector>

#include "bosetopo/qbh.hpp"

namespace bosetopo {

/// One drive/readout channel: a mode index and the port coupling rate.
/// Several ports may attach to the same mode (two antennas on one cavity);
/// each port's kappa adds to that mode's total damping.
struct Port {
  int mode = 0;
  Complex kappa;
};

struct ScatteringSetup {
  QuadraticHamiltonian h;
  std::vector<Complex> kappa;  // intrinsic per-mode loss rates (Hz)
  std::vector<Port> ports;

  /// Intrinsic plus summed port rates, per mode.
  std::vector<Complex> total_kappa() const;
};

/// The response matrix of the frequency-domain Langevin equations,
/// curly-G(omega) = omega I - tau3 H + (i/2) diag(kappa_tot, 0) with
/// H = G tau3; the damping block acts on the annihilation sector only.
/// Requires omega > 0 (positive-frequency sector).
Matrix response_matrix(const ScatteringSetup& setup, double omega);

struct ScatteringResponse {
  RealVector frequencies;                          // Hz
  std::vector<Matrix> s_matrix;                    // P x P per frequency
  std::vector<std::vector<Vector>> mode_profiles;  // [freq][drive port] -> 2N
  std::vector<char> flagged;  // response matrix singular at this point
};

/// For each frequency and drive port: unit input on the port, solve the 2N
/// linear system v = i G^-1 sqrt(kappa_p) e_p, and read off
/// S_qp = delta_qp - sqrt(kappa_q*) v_(mode q). Singular grid points are
/// flagged, never interpolated. Frequencies are solved independently across
/// up to `jobs` threads.
ScatteringResponse s_parameters(const ScatteringSetup& setup,
                                const RealVector& omega_grid, int jobs = 1);
/// Serial reference implementation (same contract).
ScatteringResponse s_parameters_serial(const ScatteringSetup& setup,
                                       const RealVector& omega_grid);

struct DrivenProfile {
  Vector expectation;      // mean-field amplitudes, length 2N
  RealVector normalized;   // magnitudes scaled to max 1
  Complex detection_amplitude;  // photon amplitude at the detection site
  int detection_mode = 0;  // boundary photon farthest from the drive
};

/// Mean-field mode expectations for a single drive. Throws on a singular
/// response matrix.
DrivenProfile driven_mode_profile(const ScatteringSetup& setup, int drive_port,
                                  double omega);

/// Standard loss assignment for photo-magnonic chains: ports with rate
/// kappa_c on the two boundary photon modes (both on the single photon for
/// N = 1), intrinsic kappa_m on every magnon, lossless bulk photons.
ScatteringSetup photo_magnonic_setup(const QuadraticHamiltonian& h,
                                     double kappa_c, double kappa_m);

}  // namespace bosetopo
