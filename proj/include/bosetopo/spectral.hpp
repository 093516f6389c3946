/// Dense diagonalization of dynamical matrices and Bloch symbols, boundary
/// zero-mode detection with localization metrics, and finite-size scaling.

#pragma once

#include <vector>

#include "bosetopo/models.hpp"
#include "bosetopo/qbh.hpp"

namespace bosetopo {

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// Full complex eigendecomposition of a (generally non-normal) matrix.
/// Eigenpairs are sorted by real part, then imaginary part. Eigenvectors are
/// Euclidean-normalized; the indefinite tau3 norm v^dag tau3 v is reported
/// separately because zero modes can have vanishing tau3 norm.
struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  Matrix right_eigenvectors;  // columns
  RealVector residuals;       // ||G v - lambda v|| per normalized pair
  RealVector ipr;             // inverse participation ratio per eigenvector
  RealVector tau3_norms;      // empty when the input is not a 2N dynamical matrix
  std::vector<char> converged;  // residual <= 1e-9 * spectral radius
  bool defectivity_warning = false;
  double spectral_radius = 0.0;
};

SpectrumResult diagonalize(const Matrix& m);
SpectrumResult diagonalize(const DynamicalMatrix& d);

/// Eigenvalues of the symbol per k (G(k) in general, K(k) when the symbol
/// carries no pairing), each list sorted by real then imaginary part.
/// k points are evaluated independently across up to `jobs` threads.
std::vector<std::vector<Complex>> band_structure(const BlochSymbol& sym,
                                                 const std::vector<double>& k_grid,
                                                 int jobs = 1);
/// Serial reference implementation of band_structure (same contract).
std::vector<std::vector<Complex>> band_structure_serial(
    const BlochSymbol& sym, const std::vector<double>& k_grid);

// ---------------------------------------------------------------------------
// Zero modes
// ---------------------------------------------------------------------------

struct ZeroMode {
  Complex eigenvalue;
  Vector eigenvector;  // length 2N, Euclidean-normalized
  double edge_weight_left = 0.0;   // probability mass on the first unit cell
  double edge_weight_right = 0.0;  // probability mass on the last unit cell
  double localization_length = 0.0;  // in cells; meaningless if delocalized
  bool delocalized = false;
  double ipr = 0.0;
};

/// Boundary zero-mode report. `count` is the number of physical modes: the
/// particle-hole constraint doubles every zero eigenvalue of G, so count is
/// half the number of near-zero eigenvalues and the listed modes are
/// deduplicated representatives.
struct ZeroModeReport {
  int count = 0;
  std::vector<ZeroMode> modes;
  double tolerance_used = 0.0;
};

/// Detects eigenpairs with |lambda| <= tol. tol <= 0 selects the default
/// 1e-8 * spectral radius. Near-zero eigenvectors are orthonormalized and
/// rotated to diagonalize the left-edge-mass operator before localization
/// analysis, so degenerate left/right modes separate cleanly. The unit-cell
/// layout is taken from the Hamiltonian's mode labels.
ZeroModeReport zero_modes(const QuadraticHamiltonian& h, double tol = -1.0);

/// Lower-level variant with an explicit per-mode unit-cell assignment.
ZeroModeReport zero_modes(const DynamicalMatrix& d,
                          const std::vector<int>& cells, double tol = -1.0);

// ---------------------------------------------------------------------------
// Finite-size scaling
// ---------------------------------------------------------------------------

enum class Observable { MinAbsEigenvalue, Gap, ZeroModeCount };

/// Observable per chain size, plus an exponential-decay fit
/// value ~ exp(-rate * N) for MinAbsEigenvalue.
struct FiniteSizeScan {
  std::vector<int> sizes;
  std::vector<double> values;
  double fit_rate = 0.0;
  double fit_r2 = 0.0;
  bool fit_valid = false;
};

/// Rebuilds the model at each size (sizes nonempty, ascending) and evaluates
/// the observable. Gap is the smallest |eigenvalue| above the zero-mode
/// tolerance. Sizes are evaluated independently across up to `jobs` threads.
FiniteSizeScan finite_size_scan(const ModelSpec& spec,
                                const std::vector<int>& sizes,
                                Observable observable, double tol = -1.0,
                                int jobs = 1);

}  // namespace bosetopo
