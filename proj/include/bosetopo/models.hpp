/// Named constructors for the lattice models of the toolkit, in real space
/// (finite chains, open or periodic boundaries) and momentum space (Bloch
/// symbols), plus the perturbations used in the robustness studies.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>

#include "bosetopo/qbh.hpp"

namespace bosetopo {

// ---------------------------------------------------------------------------
// Bloch symbols
// ---------------------------------------------------------------------------

/// Fourier-coefficient blocks {K_r, Delta_r} of a translation-invariant QBH,
/// indexed by hopping range r. The lower-shift matrix T_N maps to e^{ik}, so
/// evaluate(k) returns K(k) = sum_r e^{ikr} K_r (Hermitian for all k) and
/// Delta(k) = sum_r e^{ikr} Delta_r.
struct BlochSymbol {
  int n_cell = 0;
  std::map<int, std::pair<Matrix, Matrix>> blocks;  // r -> (K_r, Delta_r)

  /// Accumulate into the (K_r, Delta_r) pair for range r, creating it if
  /// needed. Mirror blocks at -r must be added by the caller.
  void add_block(int r, const Matrix& k_part, const Matrix& delta_part);

  Matrix evaluate_K(double k) const;
  Matrix evaluate_Delta(double k) const;

  /// Momentum-space dynamical matrix
  /// G(k) = [[K(k), -Delta(k)], [conj(Delta(-k)), -conj(K(-k))]].
  Matrix evaluate_G(double k) const;

  /// Symbol of the real-space imaginary parts, K_im = (K - K*)/(2i) and
  /// Delta_im likewise: X_im(k) = (X(k) - conj(X(-k)))/(2i).
  Matrix evaluate_K_im(double k) const;
  Matrix evaluate_Delta_im(double k) const;
  /// Symbol of the real parts.
  Matrix evaluate_K_re(double k) const;
  Matrix evaluate_Delta_re(double k) const;

  /// Checks K_{-r} = K_r^dag and Delta_{-r} = Delta_r^T; throws on violation.
  void validate() const;

  /// max |Delta_r| over all ranges (zero for number-conserving models).
  double max_delta() const;
};

// ---------------------------------------------------------------------------
// Model specifications
// ---------------------------------------------------------------------------

struct ModelSpec;

/// A perturbation applied on top of a base model.
struct PerturbationSpec {
  enum class Kind { MagnonHopping, SshChiralBreaking, LinearInterpolation };

  Kind kind;
  double strength = 0.0;               // t_m, t, or interpolation x in [0,1]
  std::shared_ptr<ModelSpec> toward;   // LinearInterpolation target
};

/// Declarative description of a model instance; the canonical serialization
/// lives in the cli module.
struct ModelSpec {
  enum class Name { PhotoMagnonic, PhotoMagnonicRWA, BKC, BosonicSSH };

  Name name = Name::PhotoMagnonicRWA;
  int N = 1;            // unit cells
  int n_offset = 0;     // photo-magnonic coupling offset
  bool pbc = false;
  std::map<std::string, Complex> parameters;
  std::vector<PerturbationSpec> perturbations;

  Complex param(const std::string& key, Complex fallback = Complex(0)) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  }
};

// ---------------------------------------------------------------------------
// Real-space constructors
// ---------------------------------------------------------------------------

/// Photo-magnonic chain H^(n) with coupling offset n. 2N modes ordered
/// [a_0..a_{N-1}, m_0..m_{N-1}]; photon hopping enters with amplitude -t;
/// the photon-magnon coupling links a_j to m_{j+n}. With rwa the pairing
/// (counter-rotating) part is dropped; the constructor never shifts frames,
/// so the rotating-frame model is obtained by passing omega_a = omega_m = 0.
/// Under open boundaries magnon modes m_0..m_{n-1} are fully disconnected.
QuadraticHamiltonian photo_magnonic_chain(int N, int n, double omega_a,
                                          double omega_m, Complex t, Complex g,
                                          bool rwa, bool pbc = false);

/// Bosonic Kitaev chain: K = (it/2)(T - T^T), Delta = (i delta/2)(T + T^T).
QuadraticHamiltonian bkc(int N, double t, double delta, bool pbc = false);

/// Bosonic SSH chain, 2N modes ordered [a_0..a_{N-1}, b_0..b_{N-1}], Delta=0,
/// K = [[0, t1 I + t2 T^T], [t1 I + t2 T, 0]].
QuadraticHamiltonian bosonic_ssh(int N, double t1, double t2,
                                 bool pbc = false);

/// Two tunnel-coupled cavities; eigenvalues omega_a +- |t|.
QuadraticHamiltonian coupled_cavity_pair(double omega_a, Complex t);

/// Applies a single perturbation to a finite chain (layout inferred from the
/// mode labels). Throws on incompatible layouts.
QuadraticHamiltonian apply_perturbation(const QuadraticHamiltonian& h,
                                        const PerturbationSpec& p,
                                        bool pbc = false);

/// Builds the full model described by a spec (base constructor plus all
/// perturbations in order).
QuadraticHamiltonian build_model(const ModelSpec& spec);

/// Unit-cell index per mode, parsed from labels of the form "<family>_<j>".
std::vector<int> cell_layout(const QuadraticHamiltonian& h);

// ---------------------------------------------------------------------------
// Momentum-space constructors
// ---------------------------------------------------------------------------

/// Bloch symbol of a translation-invariant spec (perturbations included).
BlochSymbol bloch_symbol(const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Cavity magnon-polariton frequencies (omega_plus, omega_minus).
/// Full form: omega_pm^2 = (wa^2 + wm^2)/2 +- sqrt((wa^2 - wm^2)^2
///            + 16 wa wm |g|^2)/2, requiring wa, wm > 0.
/// RWA form:  omega_pm = (wa + wm)/2 +- sqrt((wa - wm)^2 + 4|g|^2)/2.
std::pair<double, double> closed_form_polaritons(double omega_a,
                                                 double omega_m, Complex g,
                                                 bool rwa);

}  // namespace bosetopo
