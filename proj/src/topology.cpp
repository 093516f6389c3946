#include "bosetopo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace bosetopo {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Complex quarter_phase(int exponent) {
  switch (((exponent % 4) + 4) % 4) {
    case 0: return Complex(1.0, 0.0);
    case 1: return Complex(0.0, 1.0);
    case 2: return Complex(-1.0, 0.0);
    default: return Complex(0.0, -1.0);
  }
}

struct ClassFlags {
  bool time_reversal = false;
  bool number = false;
  std::optional<std::pair<double, double>> squeezing;

  int size() const {
    return (time_reversal ? 1 : 0) + (number ? 1 : 0) + (squeezing ? 1 : 0);
  }

  /// Dressing-search ranking. Squeezing dominates because it is the symmetry
  /// that defines the invariants; among equally squeezed classes the larger
  /// set wins (the SSH chain is {T,N} plain but {N,S} after the sublattice
  /// dressing, and the dressed class is the informative one).
  int rank() const { return (squeezing ? 4 : 0) + size(); }
};

std::string class_label_of(const ClassFlags& flags) {
  std::string label = "{";
  bool first = true;
  const auto append = [&](const char* name) {
    if (!first) label += ",";
    label += name;
    first = false;
  };
  if (flags.time_reversal) append("T");
  if (flags.number) append("N");
  if (flags.squeezing) append("S");
  return label + "}";
}

/// Tests the three basic symmetries on a single dynamical matrix.
ClassFlags evaluate_flags(const DynamicalMatrix& d, double tol) {
  const int n = d.n_modes;
  const double thr = tol * std::max(1.0, max_abs(d.G));

  ClassFlags flags;
  flags.time_reversal = d.G.imag().cwiseAbs().maxCoeff() <= thr;

  const Matrix c3 = commutator(d, beta_matrix(BetaGenerator::number(), n));
  flags.number = max_abs(c3) <= thr;

  const Matrix c1 = commutator(d, beta_matrix(BetaGenerator::s1(), n));
  const Matrix c2 = commutator(d, beta_matrix(BetaGenerator::s2(), n));
  if (max_abs(c1) <= thr && max_abs(c2) <= thr) {
    flags.squeezing = {1.0, 0.0};  // degenerate direction: any (n1, n2) works
    return flags;
  }
  // [G, n1 b1 + n2 b2] is linear in (n1, n2): the best direction is the
  // smallest eigenvector of the 2x2 Gram matrix of the two commutators.
  const double g11 = c1.cwiseAbs2().sum();
  const double g22 = c2.cwiseAbs2().sum();
  const double g12 = (c1.adjoint() * c2).trace().real();
  const double half_tr = (g11 + g22) / 2.0;
  const double disc =
      std::sqrt((g11 - g22) * (g11 - g22) / 4.0 + g12 * g12);
  const double lambda_min = half_tr - disc;
  double n1, n2;
  if (std::abs(g12) > 0.0 || g11 != g22) {
    // Eigenvector of [[g11, g12], [g12, g22]] for lambda_min.
    n1 = g12;
    n2 = lambda_min - g11;
    if (n1 == 0.0 && n2 == 0.0) {
      n1 = lambda_min - g22;
      n2 = g12;
    }
  } else {
    n1 = 1.0;
    n2 = 0.0;
  }
  const double norm = std::hypot(n1, n2);
  if (norm == 0.0) {
    n1 = 1.0;
    n2 = 0.0;
  } else {
    n1 /= norm;
    n2 /= norm;
  }
  if (n1 < 0.0 || (std::abs(n1) < 1e-12 && n2 < 0.0)) {
    n1 = -n1;
    n2 = -n2;
  }
  if (std::abs(n1) < 1e-12) n1 = 0.0;
  if (std::abs(n2) < 1e-12) n2 = 0.0;
  if (max_abs(n1 * c1 + n2 * c2) <= thr) flags.squeezing = {n1, n2};
  return flags;
}

std::vector<std::string> family_order(const QuadraticHamiltonian& h) {
  std::vector<std::string> families;
  std::set<std::string> seen;
  for (const auto& label : h.mode_labels) {
    const auto pos = label.rfind('_');
    const std::string family =
        pos == std::string::npos ? label : label.substr(0, pos);
    if (seen.insert(family).second) families.push_back(family);
  }
  if (families.empty()) families.push_back("a");
  return families;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dressings
// ---------------------------------------------------------------------------

QuadraticHamiltonian apply_dressing(const QuadraticHamiltonian& h,
                                    const std::vector<Complex>& phases) {
  if (static_cast<int>(phases.size()) != h.n_modes()) {
    throw std::invalid_argument("apply_dressing: phase count mismatch");
  }
  const int n = h.n_modes();
  Matrix d = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = phases[j];
  QuadraticHamiltonian out = h;
  out.K = d * h.K * d.adjoint();
  out.Delta = d * h.Delta * d;
  out.validate();
  return out;
}

BlochSymbol apply_dressing(const BlochSymbol& sym,
                           const std::vector<std::string>& families,
                           const Dressing& dressing, double tol) {
  if (static_cast<int>(families.size()) != sym.n_cell) {
    throw std::invalid_argument("apply_dressing: family count != n_cell");
  }
  const double scale = std::max(1.0, [&] {
    double s = 0.0;
    for (const auto& [r, pair] : sym.blocks) {
      s = std::max({s, max_abs(pair.first), max_abs(pair.second)});
    }
    return s;
  }());
  if (dressing.p % 4 != 0 && sym.max_delta() > tol * scale) {
    throw std::invalid_argument(
        "apply_dressing: cell-dependent phases are not translation invariant "
        "on a pairing symbol");
  }
  Matrix d0 = Matrix::Zero(sym.n_cell, sym.n_cell);
  for (int f = 0; f < sym.n_cell; ++f) {
    const auto it = dressing.q.find(families[f]);
    d0(f, f) = quarter_phase(it == dressing.q.end() ? 0 : it->second);
  }
  BlochSymbol out;
  out.n_cell = sym.n_cell;
  for (const auto& [r, pair] : sym.blocks) {
    const Complex cell_phase = quarter_phase(dressing.p * r);
    out.blocks[r] = {cell_phase * (d0 * pair.first * d0.adjoint()),
                     cell_phase * (d0 * pair.second * d0)};
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry-class detection
// ---------------------------------------------------------------------------

SymmetryClassReport detect_symmetry_class(const QuadraticHamiltonian& h,
                                          double tol, bool search_dressing) {
  h.validate();
  const int n = h.n_modes();

  SymmetryClassReport report;
  report.tolerance_used = tol;

  const ClassFlags plain = evaluate_flags(dynamical_matrix(h), tol);
  ClassFlags best = plain;
  std::optional<Dressing> best_dressing;

  if (search_dressing && plain.size() < 3) {
    const std::vector<std::string> families = family_order(h);
    const std::vector<int> cells = cell_layout(h);
    std::map<std::string, int> family_index;
    for (size_t f = 0; f < families.size(); ++f) {
      family_index[families[f]] = static_cast<int>(f);
    }
    std::vector<int> mode_family(n, 0);
    for (int j = 0; j < n; ++j) {
      if (!h.mode_labels.empty()) {
        const auto pos = h.mode_labels[j].rfind('_');
        mode_family[j] = family_index.at(
            pos == std::string::npos ? h.mode_labels[j]
                                     : h.mode_labels[j].substr(0, pos));
      }
    }

    const int n_fam = static_cast<int>(families.size());
    const int q_combos = 1 << (2 * n_fam);  // 4^n_fam
    for (int p = 0; p < 4; ++p) {
      for (int qc = 0; qc < q_combos; ++qc) {
        if (p == 0 && qc == 0) continue;  // identity
        std::vector<int> q(n_fam);
        for (int f = 0; f < n_fam; ++f) q[f] = (qc >> (2 * f)) & 3;

        std::vector<Complex> phases(n);
        for (int j = 0; j < n; ++j) {
          phases[j] = quarter_phase(p * cells[j] + q[mode_family[j]]);
        }
        const ClassFlags dressed =
            evaluate_flags(dynamical_matrix(apply_dressing(h, phases)), tol);
        if (dressed.rank() > best.rank()) {
          best = dressed;
          Dressing dress;
          dress.phases = std::move(phases);
          dress.p = p;
          for (int f = 0; f < n_fam; ++f) dress.q[families[f]] = q[f];
          best_dressing = std::move(dress);
        }
      }
    }
  }

  report.time_reversal = best.time_reversal;
  report.number = best.number;
  report.squeezing = best.squeezing;
  report.class_label = class_label_of(best);
  report.local_dressing = best_dressing;
  return report;
}

// ---------------------------------------------------------------------------
// Auxiliary matrix
// ---------------------------------------------------------------------------

namespace {

enum class SqueezeCase { S1, S2, Generic };

SqueezeCase classify_squeeze(std::pair<double, double> squeeze) {
  const double n1 = squeeze.first;
  const double n2 = squeeze.second;
  if (std::abs(n1 * n1 + n2 * n2 - 1.0) > 1e-6) {
    throw std::invalid_argument("auxiliary_B: (n1, n2) not normalized");
  }
  if (std::abs(n2) < 1e-6) return SqueezeCase::S1;
  if (std::abs(n1) < 1e-6) return SqueezeCase::S2;
  if (std::abs(n1 * n2) < 1e-6) {
    throw std::invalid_argument(
        "auxiliary_B: degenerate off-axis direction; use the nearest axis "
        "case (1,0) or (0,1)");
  }
  return SqueezeCase::Generic;
}

Matrix aux_b_from_parts(const Matrix& k_im, const Matrix& delta_re,
                        const Matrix& delta_im,
                        std::pair<double, double> squeeze, SqueezeCase sc) {
  switch (sc) {
    case SqueezeCase::S1:
      return kI * (k_im - delta_im);
    case SqueezeCase::S2:
      return kI * (k_im - delta_re);
    case SqueezeCase::Generic: {
      const double n1 = squeeze.first;
      const double n2 = squeeze.second;
      return kI * (k_im - (n1 * delta_re + n2 * delta_im) / (2.0 * n1 * n2));
    }
  }
  throw std::logic_error("auxiliary_B: unreachable");
}

}  // namespace

Matrix auxiliary_B(const QuadraticHamiltonian& h,
                   std::pair<double, double> squeeze, double tol) {
  h.validate();
  const SqueezeCase sc = classify_squeeze(squeeze);
  const DynamicalMatrix d = dynamical_matrix(h);
  const Matrix beta =
      beta_matrix(BetaGenerator::squeeze(squeeze.first, squeeze.second),
                  h.n_modes())
          .G;
  const double thr = tol * std::max(1.0, max_abs(d.G));
  if (max_abs(commutator(d.G, beta)) > thr) {
    throw std::invalid_argument(
        "auxiliary_B: squeezing symmetry does not hold at this direction");
  }
  const Matrix k_im = h.K.imag().cast<Complex>();
  const Matrix delta_re = h.Delta.real().cast<Complex>();
  const Matrix delta_im = h.Delta.imag().cast<Complex>();
  return aux_b_from_parts(k_im, delta_re, delta_im, squeeze, sc);
}

SymbolFn auxiliary_B(const BlochSymbol& sym,
                     std::pair<double, double> squeeze, double tol) {
  sym.validate();
  const SqueezeCase sc = classify_squeeze(squeeze);

  // Verify the squeezing symmetry of G(k) on a sample grid.
  const Matrix beta =
      beta_matrix(BetaGenerator::squeeze(squeeze.first, squeeze.second),
                  sym.n_cell)
          .G;
  double scale = 1.0;
  for (const auto& [r, pair] : sym.blocks) {
    scale = std::max({scale, max_abs(pair.first), max_abs(pair.second)});
  }
  for (int i = 0; i < 16; ++i) {
    const double k = -kPi + 2.0 * kPi * i / 16.0;
    if (max_abs(commutator(sym.evaluate_G(k), beta)) > tol * scale) {
      throw std::invalid_argument(
          "auxiliary_B: squeezing symmetry does not hold at this direction");
    }
  }

  BlochSymbol copy = sym;
  SymbolFn fn;
  fn.dim = sym.n_cell;
  fn.eval = [copy, squeeze, sc](double k) {
    // The imaginary/real-part symbols are evaluated at -k; this orientation
    // makes the scalar BKC case read t sin(k) - i delta cos(k).
    return aux_b_from_parts(copy.evaluate_K_im(-k), copy.evaluate_Delta_re(-k),
                            copy.evaluate_Delta_im(-k), squeeze, sc);
  };
  return fn;
}

// ---------------------------------------------------------------------------
// Winding number
// ---------------------------------------------------------------------------

InvariantResult winding_number(const SymbolFn& b, int grid) {
  if (grid < 64) throw std::invalid_argument("winding_number: grid < 64");
  if (!b.eval) throw std::invalid_argument("winding_number: empty symbol");
  constexpr int kMaxPoints = 1 << 20;

  struct Node {
    double k;
    Complex det;
  };
  std::vector<Node> nodes;
  nodes.reserve(grid);
  const auto det_at = [&](double k) {
    const Matrix m = b.eval(k);
    return b.dim == 1 ? m(0, 0) : Complex(m.determinant());
  };
  for (int i = 0; i < grid; ++i) {
    const double k = -kPi + 2.0 * kPi * i / grid;
    nodes.push_back({k, det_at(k)});
  }

  const auto gap_closed_now = [&]() {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const Node& node : nodes) {
      lo = std::min(lo, std::abs(node.det));
      hi = std::max(hi, std::abs(node.det));
    }
    return hi == 0.0 || lo < 1e-10 * hi;
  };
  const auto gap_closed_result = [&]() {
    InvariantResult result;
    result.kind = InvariantResult::Kind::GapClosed;
    result.grid_size = static_cast<int>(nodes.size());
    double lo = std::numeric_limits<double>::infinity();
    for (const Node& node : nodes) lo = std::min(lo, std::abs(node.det));
    result.gap_margin = lo;
    return result;
  };
  if (gap_closed_now()) return gap_closed_result();

  // Adaptive bisection: every step of the closed loop must rotate by less
  // than pi/2 so the phase increments are branch-cut safe.
  bool refined = true;
  while (refined) {
    refined = false;
    std::vector<Node> next;
    next.reserve(nodes.size() * 2);
    for (size_t i = 0; i < nodes.size(); ++i) {
      const Node& cur = nodes[i];
      const Node& nxt = nodes[(i + 1) % nodes.size()];
      next.push_back(cur);
      const double k_next = i + 1 < nodes.size() ? nxt.k : nxt.k + 2.0 * kPi;
      const double dphi = std::arg(nxt.det / cur.det);
      if (std::abs(dphi) >= kPi / 2.0) {
        const double mid = (cur.k + k_next) / 2.0;
        next.push_back({mid, det_at(mid)});
        refined = true;
      }
    }
    nodes = std::move(next);
    if (gap_closed_now()) return gap_closed_result();
    if (static_cast<int>(nodes.size()) > kMaxPoints) {
      throw std::runtime_error(
          "winding_number: refinement exceeded 2^20 points (unresolvable "
          "near gap closing)");
    }
  }

  double total = 0.0;
  double min_det = std::numeric_limits<double>::infinity();
  double max_det = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Node& cur = nodes[i];
    const Node& nxt = nodes[(i + 1) % nodes.size()];
    total += std::arg(nxt.det / cur.det);
    min_det = std::min(min_det, std::abs(cur.det));
    max_det = std::max(max_det, std::abs(cur.det));
  }

  InvariantResult result;
  result.gap_margin = min_det;
  result.grid_size = static_cast<int>(nodes.size());
  if (max_det == 0.0 || min_det < 1e-10 * max_det) {
    result.kind = InvariantResult::Kind::GapClosed;
    return result;
  }
  const double w = total / (2.0 * kPi);
  if (std::abs(w - std::round(w)) > 1e-3) {
    throw std::runtime_error(
        "winding_number: accumulated phase is not an integer multiple of "
        "2 pi");
  }
  result.kind = InvariantResult::Kind::Winding;
  result.winding = static_cast<int>(std::llround(w));
  return result;
}

// ---------------------------------------------------------------------------
// Pfaffian
// ---------------------------------------------------------------------------

namespace {

double pfaffian_recursive(RealMatrix a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n == 2) return a(0, 1);
  double result = 0.0;
  double sign = 1.0;
  for (int j = 1; j < n; ++j) {
    // Minor with rows/columns 0 and j removed.
    RealMatrix minor(n - 2, n - 2);
    int row = 0;
    for (int r = 1; r < n; ++r) {
      if (r == j) continue;
      int col = 0;
      for (int c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(row, col++) = a(r, c);
      }
      ++row;
    }
    result += sign * a(0, j) * pfaffian_recursive(std::move(minor));
    sign = -sign;
  }
  return result;
}

/// Parlett-Reid tridiagonalization with greedy pivoting; O(n^3).
double pfaffian_parlett_reid(RealMatrix a) {
  const int n = static_cast<int>(a.rows());
  double result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // Pivot: bring the largest entry of column k below the diagonal to k+1.
    int pivot = k + 1;
    double best = std::abs(a(k + 1, k));
    for (int r = k + 2; r < n; ++r) {
      if (std::abs(a(r, k)) > best) {
        best = std::abs(a(r, k));
        pivot = r;
      }
    }
    if (pivot != k + 1) {
      a.row(pivot).swap(a.row(k + 1));
      a.col(pivot).swap(a.col(k + 1));
      result = -result;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    result *= a(k, k + 1);
    if (k + 2 < n) {
      const double inv = 1.0 / a(k + 1, k);
      const RealVector tau = a.col(k).segment(k + 2, n - k - 2) * inv;
      const RealVector col = a.col(k + 1).segment(k + 2, n - k - 2);
      auto block = a.block(k + 2, k + 2, n - k - 2, n - k - 2);
      block += tau * col.transpose();
      block -= col * tau.transpose();
    }
  }
  return result;
}

}  // namespace

double pfaffian(const RealMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("pfaffian: matrix not square");
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd order");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("pfaffian: matrix not antisymmetric");
  }
  if (n <= 8) return pfaffian_recursive(a);
  return pfaffian_parlett_reid(a);
}

// ---------------------------------------------------------------------------
// Pfaffian invariant
// ---------------------------------------------------------------------------

InvariantResult pfaffian_invariant(const BlochSymbol& sym, double tol,
                                   int grid) {
  sym.validate();
  if (sym.n_cell % 2 != 0) {
    throw std::invalid_argument("pfaffian_invariant: odd modes per cell");
  }
  double scale = 1.0;
  for (const auto& [r, pair] : sym.blocks) {
    scale = std::max({scale, max_abs(pair.first), max_abs(pair.second)});
  }
  if (sym.max_delta() > tol * scale) {
    throw std::invalid_argument(
        "pfaffian_invariant: pairing present (number symmetry broken)");
  }

  const auto real_antisym_at = [&](double k) {
    const Matrix m = -kI * sym.evaluate_K(k);
    if (m.imag().cwiseAbs().maxCoeff() > tol * scale) {
      throw std::invalid_argument(
          "pfaffian_invariant: -iK(k) not real at k = " + std::to_string(k));
    }
    const RealMatrix a = m.real();
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
      throw std::invalid_argument(
          "pfaffian_invariant: -iK(k) not antisymmetric at k = " +
          std::to_string(k));
    }
    return a;
  };
  const RealMatrix a0 = real_antisym_at(0.0);
  const RealMatrix api = real_antisym_at(-kPi);

  // Gap scan: the bands of K(k) are real; a sign change of det K(k) between
  // grid points closes the gap even if no sample lands on the crossing.
  InvariantResult result;
  result.grid_size = grid;
  result.gap_margin = std::numeric_limits<double>::infinity();
  bool closed = false;
  double prev_det = 0.0;
  double first_det = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double k = -kPi + 2.0 * kPi * i / grid;
    const Matrix kk = sym.evaluate_K(k);
    if (max_abs(kk - kk.adjoint()) > tol * scale) {
      throw std::invalid_argument("pfaffian_invariant: K(k) not Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> es(kk,
                                                   Eigen::EigenvaluesOnly);
    result.gap_margin =
        std::min(result.gap_margin, es.eigenvalues().cwiseAbs().minCoeff());
    const double det = es.eigenvalues().prod();
    if (i == 0) {
      first_det = det;
    } else if (det * prev_det < 0.0) {
      closed = true;
    }
    prev_det = det;
  }
  if (prev_det * first_det < 0.0) closed = true;
  if (closed || result.gap_margin <= 1e-10 * scale) {
    result.kind = InvariantResult::Kind::GapClosed;
    return result;
  }

  const double pf0 = pfaffian(a0);
  const double pfp = pfaffian(api);
  if (pf0 == 0.0 || pfp == 0.0) {
    result.kind = InvariantResult::Kind::GapClosed;
    return result;
  }
  result.kind = InvariantResult::Kind::Pfaffian;
  result.pfaffian_sign = pf0 / pfp > 0.0 ? 1 : -1;
  return result;
}

// ---------------------------------------------------------------------------
// Berry winding
// ---------------------------------------------------------------------------

double wilson_loop_phase(const std::vector<Vector>& loop) {
  if (loop.size() < 3) {
    throw std::invalid_argument("wilson_loop_phase: need at least 3 vectors");
  }
  const int dim = static_cast<int>(loop.front().size());

  // Gauge fix against the component with the largest minimum magnitude over
  // the loop, so arbitrary input phases cancel exactly.
  int anchor = 0;
  double best = -1.0;
  for (int c = 0; c < dim; ++c) {
    double worst = std::numeric_limits<double>::infinity();
    for (const Vector& u : loop) worst = std::min(worst, std::abs(u(c)));
    if (worst > best) {
      best = worst;
      anchor = c;
    }
  }
  if (best <= 0.0) {
    throw std::runtime_error(
        "wilson_loop_phase: no component stays nonzero along the loop");
  }

  std::vector<Vector> fixed;
  fixed.reserve(loop.size());
  for (const Vector& u : loop) {
    fixed.push_back(u * (std::abs(u(anchor)) / u(anchor)));
  }

  double gamma = 0.0;
  for (size_t i = 0; i < fixed.size(); ++i) {
    const Vector& cur = fixed[i];
    const Vector& nxt = fixed[(i + 1) % fixed.size()];
    // Phase accumulated with the convention gamma = -(i/pi) int <u|d_k u> dk,
    // so the upper polariton band of the offset-n coupling carries +n.
    gamma += std::imag(std::log(cur.dot(nxt)));
  }
  return gamma / kPi;
}

int berry_winding(const BlochSymbol& sym, Band band, int grid) {
  sym.validate();
  double scale = 1.0;
  for (const auto& [r, pair] : sym.blocks) {
    scale = std::max({scale, max_abs(pair.first), max_abs(pair.second)});
  }
  if (sym.max_delta() > kStructuralTol * scale) {
    throw std::invalid_argument("berry_winding: pairing present");
  }
  constexpr int kMaxGrid = 1 << 16;

  for (int points = std::max(grid, 8); points <= kMaxGrid; points *= 2) {
    std::vector<Vector> loop;
    loop.reserve(points);
    bool degenerate = false;
    for (int i = 0; i < points; ++i) {
      const double k = -kPi + 2.0 * kPi * i / points;
      const Matrix kk = sym.evaluate_K(k);
      if (max_abs(kk - kk.adjoint()) > kStructuralTol * scale) {
        throw std::invalid_argument("berry_winding: K(k) not Hermitian");
      }
      const Eigen::SelfAdjointEigenSolver<Matrix> es(kk);
      const int idx = band == Band::Plus ? sym.n_cell - 1 : 0;
      const int neighbor = band == Band::Plus ? idx - 1 : idx + 1;
      if (sym.n_cell > 1 &&
          std::abs(es.eigenvalues()(idx) - es.eigenvalues()(neighbor)) <=
              1e-12 * scale) {
        degenerate = true;
        break;
      }
      loop.push_back(es.eigenvectors().col(idx));
    }
    if (degenerate) {
      throw std::runtime_error("berry_winding: band degeneracy on the grid");
    }
    const double gamma = wilson_loop_phase(loop);
    if (std::abs(gamma - std::round(gamma)) <= 1e-3) {
      return static_cast<int>(std::llround(gamma));
    }
  }
  throw std::runtime_error(
      "berry_winding: no integer Wilson-loop phase up to the grid cap");
}

// ---------------------------------------------------------------------------
// Bulk-boundary correspondence
// ---------------------------------------------------------------------------

BulkBoundaryReport bulk_boundary_check(const ModelSpec& spec, int N,
                                       double tol) {
  if (N < 8) throw std::invalid_argument("bulk_boundary_check: N < 8");

  ModelSpec sized = spec;
  sized.N = N;
  sized.pbc = false;
  const QuadraticHamiltonian h = build_model(sized);

  BulkBoundaryReport report;
  report.symmetry = detect_symmetry_class(h);

  BlochSymbol sym = bloch_symbol(sized);
  if (report.symmetry.local_dressing) {
    sym = apply_dressing(sym, family_order(h), *report.symmetry.local_dressing);
  }

  if (report.symmetry.number && report.symmetry.squeezing) {
    report.invariant = pfaffian_invariant(sym);
  } else if (report.symmetry.squeezing) {
    report.invariant =
        winding_number(auxiliary_B(sym, *report.symmetry.squeezing));
  } else {
    report.invariant.kind = InvariantResult::Kind::Trivial;
  }

  const ZeroModeReport zeros = zero_modes(h, tol);
  report.tolerance_used = zeros.tolerance_used;
  for (const ZeroMode& mode : zeros.modes) {
    if (mode.edge_weight_left > 0.5) {
      ++report.left_zero_modes;
      report.cross_edge_weight =
          std::max(report.cross_edge_weight, mode.edge_weight_right);
    }
  }

  switch (report.invariant.kind) {
    case InvariantResult::Kind::Winding:
      report.holds = report.left_zero_modes >= std::abs(report.invariant.winding);
      break;
    case InvariantResult::Kind::Pfaffian:
      report.holds = (report.left_zero_modes % 2 == 1) ==
                     (report.invariant.pfaffian_sign == -1);
      break;
    case InvariantResult::Kind::Trivial:
      report.holds = true;
      break;
    case InvariantResult::Kind::GapClosed:
      report.holds = false;
      break;
  }
  return report;
}

}  // namespace bosetopo
