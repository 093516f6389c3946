#include "bosetopo/qbh.hpp"

#include <cmath>

namespace bosetopo {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

void QuadraticHamiltonian::validate() const {
  if (K.rows() != K.cols() || Delta.rows() != Delta.cols() ||
      K.rows() != Delta.rows()) {
    throw std::invalid_argument("QuadraticHamiltonian: K/Delta size mismatch");
  }
  const double herm = max_abs(K - K.adjoint());
  if (herm > kStructuralTol * std::max(1.0, max_abs(K))) {
    throw std::invalid_argument("QuadraticHamiltonian: K is not Hermitian");
  }
  const double sym = max_abs(Delta - Delta.transpose());
  if (sym > kStructuralTol * std::max(1.0, max_abs(Delta))) {
    throw std::invalid_argument("QuadraticHamiltonian: Delta is not symmetric");
  }
  if (!mode_labels.empty() &&
      static_cast<int>(mode_labels.size()) != n_modes()) {
    throw std::invalid_argument("QuadraticHamiltonian: label count mismatch");
  }
}

QuadraticHamiltonian build_qbh(int n_modes, const std::vector<Term>& terms,
                               std::vector<std::string> mode_labels) {
  if (n_modes < 1) throw std::invalid_argument("build_qbh: n_modes < 1");
  QuadraticHamiltonian h;
  h.K = Matrix::Zero(n_modes, n_modes);
  h.Delta = Matrix::Zero(n_modes, n_modes);
  h.mode_labels = std::move(mode_labels);

  for (const Term& t : terms) {
    if (t.i < 0 || t.i >= n_modes || t.j < 0 || t.j >= n_modes) {
      throw std::invalid_argument("build_qbh: mode index out of range");
    }
    switch (t.kind) {
      case Term::Kind::Onsite:
        if (t.amplitude.imag() != 0.0) {
          throw std::invalid_argument("build_qbh: Onsite frequency not real");
        }
        h.K(t.i, t.i) += t.amplitude.real();
        break;
      case Term::Kind::Hopping:
        if (t.i == t.j) {
          throw std::invalid_argument("build_qbh: Hopping requires i != j");
        }
        // amplitude * a_i^dag a_j + h.c.
        h.K(t.i, t.j) += t.amplitude;
        h.K(t.j, t.i) += std::conj(t.amplitude);
        break;
      case Term::Kind::Pairing:
        // amplitude * a_i^dag a_j^dag + h.c.; the 1/2 of the canonical QBH
        // form is absorbed so the many-body term is exactly as written.
        if (t.i == t.j) {
          h.Delta(t.i, t.i) += 2.0 * t.amplitude;
        } else {
          h.Delta(t.i, t.j) += t.amplitude;
          h.Delta(t.j, t.i) += t.amplitude;
        }
        break;
    }
  }
  h.validate();
  return h;
}

DynamicalMatrix dynamical_matrix(const QuadraticHamiltonian& h) {
  h.validate();
  const int n = h.n_modes();
  DynamicalMatrix d;
  d.n_modes = n;
  d.G = Matrix::Zero(2 * n, 2 * n);
  d.G.topLeftCorner(n, n) = h.K;
  d.G.topRightCorner(n, n) = -h.Delta;
  d.G.bottomLeftCorner(n, n) = h.Delta.conjugate();
  d.G.bottomRightCorner(n, n) = -h.K.conjugate();
  return d;
}

double pseudo_hermiticity_residual(const DynamicalMatrix& d) {
  const int n = d.n_modes;
  Matrix tau3G = d.G.adjoint();
  tau3G.topRightCorner(n, n) *= -1.0;
  tau3G.bottomLeftCorner(n, n) *= -1.0;
  return max_abs(tau3G - d.G);
}

double particle_hole_residual(const DynamicalMatrix& d) {
  const int n = d.n_modes;
  Matrix m = d.G.conjugate();
  // tau1 M tau1 swaps the two block rows and the two block columns.
  Matrix swapped(2 * n, 2 * n);
  swapped.topLeftCorner(n, n) = m.bottomRightCorner(n, n);
  swapped.topRightCorner(n, n) = m.bottomLeftCorner(n, n);
  swapped.bottomLeftCorner(n, n) = m.topRightCorner(n, n);
  swapped.bottomRightCorner(n, n) = m.topLeftCorner(n, n);
  return max_abs(swapped + d.G);
}

Matrix commutator(const Matrix& g1, const Matrix& g2) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols()) {
    throw std::invalid_argument("commutator: dimension mismatch");
  }
  return g1 * g2 - g2 * g1;
}

DynamicalMatrix beta_matrix(const BetaGenerator& gen, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("beta_matrix: n_modes < 1");
  const int n = n_modes;
  const Matrix eye = Matrix::Identity(n, n);
  Matrix b = Matrix::Zero(2 * n, 2 * n);
  const Complex I(0.0, 1.0);

  double n1 = gen.n1, n2 = gen.n2;
  switch (gen.kind) {
    case BetaGenerator::Kind::Number:
      b.topLeftCorner(n, n) = eye;
      b.bottomRightCorner(n, n) = -eye;
      return {b, n};
    case BetaGenerator::Kind::S1:
      n1 = 1.0;
      n2 = 0.0;
      break;
    case BetaGenerator::Kind::S2:
      n1 = 0.0;
      n2 = 1.0;
      break;
    case BetaGenerator::Kind::Squeeze:
      if (std::abs(n1 * n1 + n2 * n2 - 1.0) > 1e-10) {
        throw std::invalid_argument("beta_matrix: n1^2 + n2^2 != 1");
      }
      break;
  }
  // beta1 = -i tau1, beta2 = -i tau2.
  b.topRightCorner(n, n) = (-I * n1 - n2) * eye;
  b.bottomLeftCorner(n, n) = (-I * n1 + n2) * eye;
  return {b, n};
}

RealMatrix shift_matrix(int N, int n) {
  if (N < 1) throw std::invalid_argument("shift_matrix: N < 1");
  if (n < 0) throw std::invalid_argument("shift_matrix: n < 0");
  RealMatrix t = RealMatrix::Zero(N, N);
  for (int j = 0; j + n < N; ++j) t(j + n, j) = 1.0;
  return t;
}

RealMatrix periodic_shift_matrix(int N, int n) {
  if (N < 1) throw std::invalid_argument("periodic_shift_matrix: N < 1");
  if (n < 0) throw std::invalid_argument("periodic_shift_matrix: n < 0");
  RealMatrix t = RealMatrix::Zero(N, N);
  for (int j = 0; j < N; ++j) t((j + n) % N, j) = 1.0;
  return t;
}

}  // namespace bosetopo
