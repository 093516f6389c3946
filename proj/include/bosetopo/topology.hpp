/// Symmetry-class detection and topological invariants: the winding number
/// of det B(k) for the squeezing class, the Pfaffian Z2 invariant for the
/// number-plus-squeezing class, the Berry winding of band eigenvectors, and
/// the bulk-boundary correspondence checks.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bosetopo/models.hpp"
#include "bosetopo/qbh.hpp"
#include "bosetopo/spectral.hpp"

namespace bosetopo {

// ---------------------------------------------------------------------------
// Symmetry classes
// ---------------------------------------------------------------------------

/// Diagonal gauge transformation a_j -> d_j a_j with per-mode phases d_j
/// restricted to {1, i, -1, -i}. The structured form records the phase of a
/// mode in family f and cell c as i^(p*c + q_f), which is the pattern needed
/// to transfer a dressing from a finite chain to its Bloch symbol.
struct Dressing {
  std::vector<Complex> phases;  // per mode
  int p = 0;                    // shared cell-dependence exponent
  std::map<std::string, int> q;  // per-family constant exponent
};

/// Result of testing the three basic symmetries on a dynamical matrix:
/// time reversal (G real), number ([G, beta3] = 0), and squeezing
/// ([G, n1 beta1 + n2 beta2] = 0 for some direction (n1, n2)).
struct SymmetryClassReport {
  bool time_reversal = false;
  bool number = false;
  std::optional<std::pair<double, double>> squeezing;  // (n1, n2), n1^2+n2^2=1
  std::string class_label;  // "{}", "{T}", "{N}", "{S}", ..., "{T,N,S}"
  std::optional<Dressing> local_dressing;  // set when the class holds only
                                           // after a diagonal gauge transform
  double tolerance_used = 0.0;
};

/// Tests the commutators directly on G. The squeezing direction is the
/// null direction of the 2x2 Gram matrix of [G, beta1] and [G, beta2]
/// (the condition is linear in (n1, n2)); if both commutators vanish the
/// direction is degenerate and (1, 0) is reported. With search_dressing,
/// diagonal gauges with phases i^(p*cell + q_family) for p, q in {0..3} are
/// searched and the largest resulting symmetry set is reported.
SymmetryClassReport detect_symmetry_class(const QuadraticHamiltonian& h,
                                          double tol = kDefaultTol,
                                          bool search_dressing = true);

/// Applies a diagonal gauge a_j -> d_j a_j: K -> D K D^dag, Delta -> D Delta D.
QuadraticHamiltonian apply_dressing(const QuadraticHamiltonian& h,
                                    const std::vector<Complex>& phases);

/// Transfers a structured dressing to a Bloch symbol:
/// K_r -> i^(p r) D0 K_r D0^dag with D0 = diag(i^q_f). Throws if the symbol
/// carries pairing blocks and p != 0 (cell-dependent phases are not
/// translation invariant on Delta).
BlochSymbol apply_dressing(const BlochSymbol& sym,
                           const std::vector<std::string>& families,
                           const Dressing& dressing, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

/// A momentum-space matrix function k -> M(k), dim x dim.
struct SymbolFn {
  int dim = 0;
  std::function<Matrix(double)> eval;
};

struct InvariantResult {
  enum class Kind { Winding, Pfaffian, Trivial, GapClosed };

  Kind kind = Kind::Trivial;
  int winding = 0;        // valid when kind == Winding
  int pfaffian_sign = 0;  // +1 / -1, valid when kind == Pfaffian
  double gap_margin = 0.0;  // min over k of the relevant |det| or band gap
  int grid_size = 0;
};

/// Auxiliary matrix of a squeezing-symmetric QBH: B = i(K_im - X) with
/// X = Delta_im for the (1,0) axis, X = Delta_re for the (0,1) axis, and
/// X = (n1 Delta_re + n2 Delta_im) / (2 n1 n2) in general, where K_im, etc.,
/// are the entrywise imaginary/real parts. Throws if the squeezing symmetry
/// does not hold at the given direction, or if |n1 n2| < 1e-6 off-axis.
Matrix auxiliary_B(const QuadraticHamiltonian& h,
                   std::pair<double, double> squeeze,
                   double tol = kDefaultTol);

/// Momentum-space auxiliary matrix; B(k) is evaluated from the symbol's
/// imaginary/real-part symbols at -k, which makes the scalar BKC case come
/// out as B(k) = t sin(k) - i delta cos(k).
SymbolFn auxiliary_B(const BlochSymbol& sym, std::pair<double, double> squeeze,
                     double tol = kDefaultTol);

/// Winding number of det B(k) around the origin: counterclockwise phase
/// accumulation over a closed uniform grid (>= 64 points), adaptively
/// bisected until every per-step |d arg| < pi/2. gap_margin = min |det B|;
/// GapClosed when it drops below 1e-10 * max |det B|. Throws if refinement
/// exceeds 2^20 points.
InvariantResult winding_number(const SymbolFn& b, int grid = 256);

/// Pfaffian of a real antisymmetric matrix of even order: recursive cofactor
/// expansion up to order 8, Parlett-Reid tridiagonalization with pivoting
/// beyond. Satisfies Pf(A)^2 = det(A).
double pfaffian(const RealMatrix& a);

/// Z2 invariant s = sign(Pf(-iK(0)) / Pf(-iK(-pi))) for a symbol in the
/// number-plus-squeezing class (Delta = 0, all K_r pure imaginary, so -iK(k)
/// is real antisymmetric exactly at k = 0 and k = -pi). gap_margin is the
/// minimum |eigenvalue of K(k)| over a 1024-point grid; GapClosed when it
/// vanishes or det K(k) changes sign on the grid.
InvariantResult pfaffian_invariant(const BlochSymbol& sym,
                                   double tol = kDefaultTol,
                                   int grid = 1024);

enum class Band { Plus, Minus };

/// Berry winding of the chosen band of a number-conserving symbol: the
/// eigenvectors of K(k) are gauge-fixed against an anchor component and the
/// Wilson-loop phase is accumulated per step over the closed grid. The
/// result is rounded to the nearest integer; the grid is refined until the
/// pre-rounding deviation is below 1e-3.
int berry_winding(const BlochSymbol& sym, Band band, int grid = 512);

/// Wilson-loop winding of an explicit closed loop of normalized vectors
/// (the internal kernel of berry_winding, exposed for gauge-invariance
/// testing). Input phases per vector are irrelevant.
double wilson_loop_phase(const std::vector<Vector>& loop);

// ---------------------------------------------------------------------------
// Bulk-boundary correspondence
// ---------------------------------------------------------------------------

struct BulkBoundaryReport {
  SymmetryClassReport symmetry;
  InvariantResult invariant;
  int left_zero_modes = 0;       // modes with left-edge weight > 0.5
  double cross_edge_weight = 0;  // max right-edge weight among counted modes
  bool holds = false;
  double tolerance_used = 0.0;
};

/// Computes the applicable invariant from the symbol and compares it to the
/// count of zero modes localized at the left termination of the open chain:
/// |winding| is a lower bound on the count for the squeezing class; the
/// Pfaffian sign fixes the count's parity for the number-plus-squeezing
/// class. tol <= 0 selects the zero-mode default.
BulkBoundaryReport bulk_boundary_check(const ModelSpec& spec, int N,
                                       double tol = -1.0);

}  // namespace bosetopo
