/// Core representation of quadratic bosonic Hamiltonians (QBHs).
///
/// A QBH on N modes is stored as a Hermitian hopping matrix K and a symmetric
/// pairing matrix Delta. All matrix entries are ordinary frequencies in Hz
/// (omega / 2pi); hbar is set to 1 throughout the toolkit.
///
/// The bosonic dynamical matrix G = [[K, -Delta], [Delta*, -K*]] governs the
/// Heisenberg equations of motion and is the object all symmetry and topology
/// analysis acts on.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bosetopo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for the structural (Hermiticity/symmetry/constraint)
/// checks: residual <= kStructuralTol * max(1, max-abs entry).
inline constexpr double kStructuralTol = 1e-12;

/// Default tolerance for downstream "is zero" decisions.
inline constexpr double kDefaultTol = 1e-8;

// ---------------------------------------------------------------------------
// Terms and Hamiltonians
// ---------------------------------------------------------------------------

/// One second-quantized term of a QBH.
struct Term {
  enum class Kind { Onsite, Hopping, Pairing };

  Kind kind;
  int i = 0;
  int j = 0;
  Complex amplitude;

  /// omega * a_i^dag a_i with real omega.
  static Term onsite(int i, double omega) {
    return {Kind::Onsite, i, i, Complex(omega, 0.0)};
  }
  /// amplitude * a_i^dag a_j + h.c., i != j.
  static Term hopping(int i, int j, Complex amplitude) {
    return {Kind::Hopping, i, j, amplitude};
  }
  /// amplitude * a_i^dag a_j^dag + h.c. (i == j allowed).
  static Term pairing(int i, int j, Complex amplitude) {
    return {Kind::Pairing, i, j, amplitude};
  }
};

/// Hopping/pairing matrix pair (K, Delta) plus mode labels such as "a_0",
/// "m_3". Labels of the form "<family>_<cell>" drive the unit-cell layout
/// used by localization analysis and perturbations.
struct QuadraticHamiltonian {
  Matrix K;
  Matrix Delta;
  std::vector<std::string> mode_labels;

  int n_modes() const { return static_cast<int>(K.rows()); }

  /// Throws std::invalid_argument if K is not Hermitian or Delta is not
  /// symmetric within the structural tolerance.
  void validate() const;
};

/// Assemble a QBH from a term list. Order-independent: terms accumulate.
/// The diagonal pairing convention is Delta[i][i] += 2*amplitude so that
/// Pairing(i, i, eta) means exactly eta * a_i^dag^2 + h.c.
QuadraticHamiltonian build_qbh(int n_modes, const std::vector<Term>& terms,
                               std::vector<std::string> mode_labels = {});

// ---------------------------------------------------------------------------
// Dynamical matrix
// ---------------------------------------------------------------------------

/// The 2N x 2N bosonic dynamical matrix G = [[K, -Delta], [Delta*, -K*]].
/// Satisfies pseudo-Hermiticity tau3 G^dag tau3 = G and particle-hole
/// symmetry tau1 G* tau1 = -G by construction.
struct DynamicalMatrix {
  Matrix G;
  int n_modes = 0;
};

DynamicalMatrix dynamical_matrix(const QuadraticHamiltonian& h);

/// max |tau3 G^dag tau3 - G|.
double pseudo_hermiticity_residual(const DynamicalMatrix& d);
/// max |tau1 G* tau1 + G|.
double particle_hole_residual(const DynamicalMatrix& d);

/// G1 G2 - G2 G1.
Matrix commutator(const Matrix& g1, const Matrix& g2);
inline Matrix commutator(const DynamicalMatrix& g1, const DynamicalMatrix& g2) {
  return commutator(g1.G, g2.G);
}

// ---------------------------------------------------------------------------
// Symmetry generators
// ---------------------------------------------------------------------------

/// Dynamical matrices of the symmetry generators: the number symmetry has
/// beta3 = tau3 and the squeezing symmetries combine beta1 = -i tau1 and
/// beta2 = -i tau2.
struct BetaGenerator {
  enum class Kind { S1, S2, Number, Squeeze };

  Kind kind;
  double n1 = 0.0;  // used when kind == Squeeze; n1^2 + n2^2 = 1
  double n2 = 0.0;

  static BetaGenerator s1() { return {Kind::S1, 1.0, 0.0}; }
  static BetaGenerator s2() { return {Kind::S2, 0.0, 1.0}; }
  static BetaGenerator number() { return {Kind::Number}; }
  static BetaGenerator squeeze(double n1, double n2) {
    return {Kind::Squeeze, n1, n2};
  }
};

/// Returns the 2N x 2N generator matrix (beta1, beta2, beta3, or
/// n1 beta1 + n2 beta2). Throws if n1^2 + n2^2 deviates from 1 by > 1e-10.
DynamicalMatrix beta_matrix(const BetaGenerator& gen, int n_modes);

// ---------------------------------------------------------------------------
// Shift matrices
// ---------------------------------------------------------------------------

/// (T_N)^n with T_N carrying ones on the first lower diagonal; n = 0 gives
/// the identity and n >= N the zero matrix. Upper shifts are T^T.
RealMatrix shift_matrix(int N, int n);

/// Periodic (circulant) counterpart used for wrap-around boundary terms.
RealMatrix periodic_shift_matrix(int N, int n);

}  // namespace bosetopo
