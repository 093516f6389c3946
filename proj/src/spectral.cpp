#include "bosetopo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bosetopo/parallel.hpp"

namespace bosetopo {

namespace {

/// Least-squares line fit y = a + b x; returns (intercept, slope, r2).
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  bool valid = false;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit fit;
  const size_t n = xs.size();
  if (n < 2) return fit;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.valid = true;
  return fit;
}

bool eig_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

// ---------------------------------------------------------------------------
// Diagonalization
// ---------------------------------------------------------------------------

SpectrumResult diagonalize(const Matrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("diagonalize: non-finite matrix entries");
  }
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("diagonalize: matrix not square");
  }
  const int n = static_cast<int>(m.rows());

  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("diagonalize: eigensolver failed to converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const Vector raw_vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return eig_less(raw_vals(i), raw_vals(j));
  });

  SpectrumResult result;
  result.eigenvalues.resize(n);
  result.right_eigenvectors.resize(n, n);
  result.residuals.resize(n);
  result.ipr.resize(n);
  result.converged.assign(n, 1);

  for (int c = 0; c < n; ++c) {
    const int src = order[c];
    Vector v = solver.eigenvectors().col(src);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    result.eigenvalues[c] = raw_vals(src);
    result.right_eigenvectors.col(c) = v;
  }

  result.spectral_radius = 0.0;
  for (const Complex& lambda : result.eigenvalues) {
    result.spectral_radius = std::max(result.spectral_radius, std::abs(lambda));
  }

  const double conv_tol = 1e-9 * std::max(result.spectral_radius, 1e-300);
  for (int c = 0; c < n; ++c) {
    const Vector v = result.right_eigenvectors.col(c);
    result.residuals(c) = (m * v - result.eigenvalues[c] * v).norm();
    result.converged[c] = result.residuals(c) <= conv_tol ? 1 : 0;

    const RealVector p = v.cwiseAbs2();
    const double total = p.sum();
    result.ipr(c) = total > 0.0 ? p.cwiseAbs2().sum() / (total * total) : 0.0;
  }

  // A nearly rank-deficient eigenvector basis signals a defective (or
  // numerically defective) input.
  const Eigen::JacobiSVD<Matrix> svd(result.right_eigenvectors);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  result.defectivity_warning = smax > 0.0 && smin < 1e-8 * smax;
  return result;
}

SpectrumResult diagonalize(const DynamicalMatrix& d) {
  SpectrumResult result = diagonalize(d.G);
  const int n = d.n_modes;
  const int dim = 2 * n;
  result.tau3_norms.resize(dim);
  for (int c = 0; c < dim; ++c) {
    const Vector v = result.right_eigenvectors.col(c);
    result.tau3_norms(c) =
        v.head(n).squaredNorm() - v.tail(n).squaredNorm();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Band structure
// ---------------------------------------------------------------------------

namespace {

std::vector<Complex> symbol_bands_at(const BlochSymbol& sym, double k,
                                     bool use_k_only) {
  const Matrix m = use_k_only ? sym.evaluate_K(k) : sym.evaluate_G(k);
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  std::vector<Complex> vals(solver.eigenvalues().data(),
                            solver.eigenvalues().data() +
                                solver.eigenvalues().size());
  std::sort(vals.begin(), vals.end(), eig_less);
  return vals;
}

std::vector<std::vector<Complex>> band_structure_impl(
    const BlochSymbol& sym, const std::vector<double>& k_grid, int jobs,
    bool serial) {
  if (k_grid.empty()) throw std::invalid_argument("band_structure: empty grid");
  sym.validate();
  constexpr double kPi = 3.14159265358979323846;
  for (double k : k_grid) {
    if (k < -kPi - 1e-12 || k > kPi + 1e-12) {
      throw std::invalid_argument("band_structure: k outside [-pi, pi]");
    }
  }
  const bool use_k_only = sym.max_delta() <= kStructuralTol;
  std::vector<std::vector<Complex>> bands(k_grid.size());
  const auto body = [&](int i) {
    bands[i] = symbol_bands_at(sym, k_grid[i], use_k_only);
  };
  if (serial) {
    serial_for(static_cast<int>(k_grid.size()), body);
  } else {
    parallel_for(static_cast<int>(k_grid.size()), jobs, body);
  }
  return bands;
}

}  // namespace

std::vector<std::vector<Complex>> band_structure(
    const BlochSymbol& sym, const std::vector<double>& k_grid, int jobs) {
  return band_structure_impl(sym, k_grid, jobs, /*serial=*/false);
}

std::vector<std::vector<Complex>> band_structure_serial(
    const BlochSymbol& sym, const std::vector<double>& k_grid) {
  return band_structure_impl(sym, k_grid, /*jobs=*/1, /*serial=*/true);
}

// ---------------------------------------------------------------------------
// Zero modes
// ---------------------------------------------------------------------------

namespace {

/// Per-cell probability mass of a 2N-component vector.
RealVector cell_profile(const Vector& v, const std::vector<int>& cells,
                        int n_cells) {
  const int n = static_cast<int>(cells.size());
  RealVector mass = RealVector::Zero(n_cells);
  for (int j = 0; j < n; ++j) {
    mass(cells[j]) += std::norm(v(j)) + std::norm(v(n + j));
  }
  const double total = mass.sum();
  if (total > 0.0) mass /= total;
  return mass;
}

}  // namespace

ZeroModeReport zero_modes(const DynamicalMatrix& d,
                          const std::vector<int>& cells, double tol) {
  if (static_cast<int>(cells.size()) != d.n_modes) {
    throw std::invalid_argument("zero_modes: cell layout size mismatch");
  }
  const int n = d.n_modes;
  const int n_cells =
      cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end()) + 1;

  const SpectrumResult spec = diagonalize(d);
  ZeroModeReport report;
  report.tolerance_used =
      tol > 0.0 ? tol : 1e-8 * spec.spectral_radius;

  std::vector<int> near_zero;
  for (int c = 0; c < 2 * n; ++c) {
    if (std::abs(spec.eigenvalues[c]) <= report.tolerance_used) {
      near_zero.push_back(c);
    }
  }
  const int m = static_cast<int>(near_zero.size());
  report.count = m / 2;
  if (m == 0) return report;

  // Orthonormalize the near-zero cluster, then rotate it to diagonalize the
  // left-edge-mass operator so degenerate left/right modes separate.
  Matrix basis(2 * n, m);
  for (int c = 0; c < m; ++c) {
    basis.col(c) = spec.right_eigenvectors.col(near_zero[c]);
  }
  const Eigen::HouseholderQR<Matrix> qr(basis);
  const Matrix q = Matrix(qr.householderQ()).leftCols(m);

  Matrix p_left = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    if (cells[j] == 0) {
      p_left(j, j) = 1.0;
      p_left(n + j, n + j) = 1.0;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> w(q.adjoint() * p_left * q);
  const Matrix rotated = q * w.eigenvectors();

  // Particle-hole symmetry doubles every zero mode; deduplicate by pairing
  // vectors with matching cell-mass profiles.
  std::vector<RealVector> profiles(m);
  for (int c = 0; c < m; ++c) {
    profiles[c] = cell_profile(rotated.col(c), cells, n_cells);
  }
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    used[i] = true;
    int partner = -1;
    double best = 1e-3;
    for (int j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      const double dist = (profiles[i] - profiles[j]).cwiseAbs().maxCoeff();
      if (dist < best) {
        best = dist;
        partner = j;
      }
    }
    if (partner >= 0) used[partner] = true;

    ZeroMode mode;
    const Vector v = rotated.col(i);
    mode.eigenvector = v;
    mode.eigenvalue = (v.adjoint() * (d.G * v)).value();
    mode.edge_weight_left = profiles[i](0);
    mode.edge_weight_right = profiles[i](n_cells - 1);
    const RealVector comp = v.cwiseAbs2();
    mode.ipr = comp.cwiseAbs2().sum() / std::pow(comp.sum(), 2);

    // Exponential fit of the per-cell mass, excluding the outermost cell at
    // each end; the decay direction follows the dominant edge.
    std::vector<double> xs, ys;
    for (int c = 1; c + 1 < n_cells; ++c) {
      const int cc =
          mode.edge_weight_left >= mode.edge_weight_right ? c : n_cells - 1 - c;
      const double mass = profiles[i](cc);
      if (mass > 1e-280) {
        xs.push_back(c);
        ys.push_back(std::log(mass));
      }
    }
    const LineFit fit = fit_line(xs, ys);
    if (fit.valid && std::abs(fit.slope) >= 1.0 / std::max(n_cells, 1)) {
      // mass ~ exp(-2 cell / xi): the amplitude decay length in cells.
      mode.localization_length = 2.0 / std::abs(fit.slope);
      mode.delocalized = false;
    } else {
      mode.localization_length = 0.0;
      mode.delocalized = true;
    }
    report.modes.push_back(std::move(mode));
  }
  return report;
}

ZeroModeReport zero_modes(const QuadraticHamiltonian& h, double tol) {
  return zero_modes(dynamical_matrix(h), cell_layout(h), tol);
}

// ---------------------------------------------------------------------------
// Finite-size scaling
// ---------------------------------------------------------------------------

FiniteSizeScan finite_size_scan(const ModelSpec& spec,
                                const std::vector<int>& sizes,
                                Observable observable, double tol, int jobs) {
  if (sizes.empty()) {
    throw std::invalid_argument("finite_size_scan: empty size list");
  }
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw std::invalid_argument("finite_size_scan: sizes must be ascending");
  }

  FiniteSizeScan scan;
  scan.sizes = sizes;
  scan.values.resize(sizes.size());

  parallel_for(static_cast<int>(sizes.size()), jobs, [&](int i) {
    ModelSpec sized = spec;
    sized.N = sizes[i];
    const QuadraticHamiltonian h = build_model(sized);
    const DynamicalMatrix d = dynamical_matrix(h);

    switch (observable) {
      case Observable::MinAbsEigenvalue: {
        const SpectrumResult s = diagonalize(d);
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& lambda : s.eigenvalues) {
          best = std::min(best, std::abs(lambda));
        }
        scan.values[i] = best;
        break;
      }
      case Observable::Gap: {
        const SpectrumResult s = diagonalize(d);
        const double zero_tol =
            tol > 0.0 ? tol : 1e-8 * s.spectral_radius;
        double best = 0.0;
        bool found = false;
        for (const Complex& lambda : s.eigenvalues) {
          const double mag = std::abs(lambda);
          if (mag > zero_tol && (!found || mag < best)) {
            best = mag;
            found = true;
          }
        }
        scan.values[i] = found ? best : 0.0;
        break;
      }
      case Observable::ZeroModeCount:
        scan.values[i] = zero_modes(d, cell_layout(h), tol).count;
        break;
    }
  });

  if (observable == Observable::MinAbsEigenvalue) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < sizes.size(); ++i) {
      if (scan.values[i] > 0.0) {
        xs.push_back(sizes[i]);
        ys.push_back(std::log(scan.values[i]));
      }
    }
    const LineFit fit = fit_line(xs, ys);
    scan.fit_valid = fit.valid;
    scan.fit_rate = -fit.slope;
    scan.fit_r2 = fit.r2;
  }
  return scan;
}

}  // namespace bosetopo
