/// Tests for the core QBH representation: term assembly, the dynamical
/// matrix and its structural symmetries, the symmetry generators, and the
/// shift matrices.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "bosetopo/qbh.hpp"

using namespace bosetopo;

namespace {

constexpr Complex kI(0.0, 1.0);

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Truncated single-mode annihilation operator on Fock states |0..dim-1>.
Matrix fock_annihilator(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// build_qbh
// ---------------------------------------------------------------------------

TEST_CASE("hopping term fills K Hermitian") {
  const Complex amp(3.0, -2.0);
  const auto h = build_qbh(3, {Term::hopping(0, 2, amp)});
  CHECK(h.K(0, 2) == amp);
  CHECK(h.K(2, 0) == std::conj(amp));
  CHECK(max_abs(h.Delta) == 0.0);
}

TEST_CASE("onsite term fills the diagonal") {
  const auto h = build_qbh(2, {Term::onsite(1, 5.5), Term::onsite(1, 0.5)});
  CHECK(h.K(1, 1) == Complex(6.0, 0.0));
  CHECK(h.K(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("diagonal pairing matches the Fock-space matrix element") {
  // The many-body term eta a^dag^2 + h.c. has <2|H|0> = sqrt(2) eta. The
  // stored Hamiltonian is (1/2) Delta_ii a^dag^2 + h.c., so Delta_ii must be
  // 2 eta for the matrix elements to agree.
  const Complex eta(0.7, 0.3);
  const auto h = build_qbh(1, {Term::pairing(0, 0, eta)});
  CHECK(h.Delta(0, 0) == 2.0 * eta);

  const int dim = 4;
  const Matrix a = fock_annihilator(dim);
  const Matrix adag = a.adjoint();
  const Matrix term = eta * adag * adag + std::conj(eta) * a * a;
  const Matrix stored = 0.5 * h.Delta(0, 0) * adag * adag +
                        0.5 * std::conj(h.Delta(0, 0)) * a * a;
  CHECK(max_abs(term - stored) < 1e-14);
  CHECK(std::abs(term(2, 0) - std::sqrt(2.0) * eta) < 1e-14);
}

TEST_CASE("off-diagonal pairing is symmetric and unhalved") {
  // eta a_0^dag a_1^dag + h.c. equals (1/2) sum_ij Delta_ij a_i^dag a_j^dag
  // + h.c. with Delta_01 = Delta_10 = eta (two equal terms in the sum).
  const Complex eta(1.0, -4.0);
  const auto h = build_qbh(2, {Term::pairing(0, 1, eta)});
  CHECK(h.Delta(0, 1) == eta);
  CHECK(h.Delta(1, 0) == eta);
  CHECK(h.Delta(0, 0) == Complex(0.0));

  // Two-mode Fock oracle on |n0 n1> with n < 2: <11|H|00> = eta.
  const int dim = 2;
  const Matrix a1 = fock_annihilator(dim);
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix a0_full = Eigen::kroneckerProduct(a1, id).eval();
  const Matrix a1_full = Eigen::kroneckerProduct(id, a1).eval();
  Matrix stored = Matrix::Zero(dim * dim, dim * dim);
  const Matrix ops[2] = {a0_full, a1_full};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      stored += 0.5 * h.Delta(i, j) * ops[i].adjoint() * ops[j].adjoint();
    }
  }
  // |11> is index 3, |00> index 0 in the Kronecker basis.
  CHECK(std::abs(stored(3, 0) - eta) < 1e-14);
}

TEST_CASE("terms accumulate independently of order") {
  std::vector<Term> terms = {
      Term::hopping(0, 1, Complex(1.0, 2.0)), Term::onsite(2, 3.0),
      Term::pairing(1, 2, Complex(0.0, 1.0)), Term::pairing(0, 0, 2.0),
      Term::hopping(0, 1, Complex(-0.5, 0.25))};
  const auto h1 = build_qbh(3, terms);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(terms.begin(), terms.end(), rng);
    const auto h2 = build_qbh(3, terms);
    CHECK(max_abs(h1.K - h2.K) == 0.0);
    CHECK(max_abs(h1.Delta - h2.Delta) == 0.0);
  }
}

TEST_CASE("build_qbh input validation") {
  CHECK_THROWS_AS(build_qbh(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_qbh(2, {Term::hopping(0, 2, 1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_qbh(2, {Term::hopping(1, 1, 1.0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_qbh(2, {{Term::Kind::Onsite, 0, 0, Complex(1.0, 1.0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_qbh(2, {}, {"a_0"}), std::invalid_argument);
}

TEST_CASE("validate rejects broken structure") {
  QuadraticHamiltonian h;
  h.K = Matrix::Zero(2, 2);
  h.Delta = Matrix::Zero(2, 2);
  h.K(0, 1) = Complex(1.0, 0.0);  // not Hermitian
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
  h.K(1, 0) = Complex(1.0, 0.0);
  CHECK_NOTHROW(h.validate());
  h.Delta(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
  h.Delta(1, 0) = 1.0;
  CHECK_NOTHROW(h.validate());
}

// ---------------------------------------------------------------------------
// Dynamical matrix
// ---------------------------------------------------------------------------

TEST_CASE("dynamical matrix blocks and structural symmetries") {
  const auto h = build_qbh(
      2, {Term::hopping(0, 1, Complex(1.0, 2.0)), Term::onsite(0, 5.0),
          Term::pairing(0, 1, Complex(0.5, -0.5)), Term::pairing(1, 1, 1.5)});
  const DynamicalMatrix d = dynamical_matrix(h);
  CHECK(d.n_modes == 2);
  CHECK(max_abs(d.G.topLeftCorner(2, 2) - h.K) == 0.0);
  CHECK(max_abs(d.G.topRightCorner(2, 2) + h.Delta) == 0.0);
  CHECK(max_abs(d.G.bottomLeftCorner(2, 2) - h.Delta.conjugate()) == 0.0);
  CHECK(max_abs(d.G.bottomRightCorner(2, 2) + h.K.conjugate()) == 0.0);
  CHECK(pseudo_hermiticity_residual(d) < 1e-14);
  CHECK(particle_hole_residual(d) < 1e-14);
}

// ---------------------------------------------------------------------------
// Symmetry generators
// ---------------------------------------------------------------------------

TEST_CASE("beta matrices for one mode match the Pauli forms") {
  // tau1 = [[0,1],[1,0]], tau2 = [[0,-i],[i,0]], tau3 = [[1,0],[0,-1]].
  const Matrix b1 = beta_matrix(BetaGenerator::s1(), 1).G;
  const Matrix b2 = beta_matrix(BetaGenerator::s2(), 1).G;
  const Matrix b3 = beta_matrix(BetaGenerator::number(), 1).G;

  Matrix ref1(2, 2), ref2(2, 2), ref3(2, 2);
  ref1 << 0, -kI, -kI, 0;        // -i tau1
  ref2 << 0, -1.0, 1.0, 0;       // -i tau2
  ref3 << 1.0, 0, 0, -1.0;       // tau3
  CHECK(max_abs(b1 - ref1) == 0.0);
  CHECK(max_abs(b2 - ref2) == 0.0);
  CHECK(max_abs(b3 - ref3) == 0.0);
}

TEST_CASE("beta algebra [b1, b2] = -2i b3") {
  for (int n : {1, 3}) {
    const Matrix b1 = beta_matrix(BetaGenerator::s1(), n).G;
    const Matrix b2 = beta_matrix(BetaGenerator::s2(), n).G;
    const Matrix b3 = beta_matrix(BetaGenerator::number(), n).G;
    // The su(1,1) algebra: [b1,b2] = -2i b3, [b2,b3] = +2i b1,
    // [b3,b1] = +2i b2 (the sign flip relative to su(2) comes from the -i
    // factors in b1, b2).
    CHECK(max_abs(commutator(b1, b2) + 2.0 * kI * b3) < 1e-15);
    CHECK(max_abs(commutator(b2, b3) - 2.0 * kI * b1) < 1e-15);
    CHECK(max_abs(commutator(b3, b1) - 2.0 * kI * b2) < 1e-15);
  }
}

TEST_CASE("squeeze generator combines directions and checks normalization") {
  const double n1 = 0.6, n2 = 0.8;
  const Matrix b = beta_matrix(BetaGenerator::squeeze(n1, n2), 2).G;
  const Matrix ref = n1 * beta_matrix(BetaGenerator::s1(), 2).G +
                     n2 * beta_matrix(BetaGenerator::s2(), 2).G;
  CHECK(max_abs(b - ref) < 1e-15);
  CHECK_THROWS_AS(beta_matrix(BetaGenerator::squeeze(1.0, 1.0), 2),
                  std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Shift matrices
// ---------------------------------------------------------------------------

TEST_CASE("shift matrices") {
  const RealMatrix t = shift_matrix(4, 1);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(t(i, j) == (i == j + 1 ? 1.0 : 0.0));
    }
  }
  CHECK((shift_matrix(4, 0) - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff()
        == 0.0);
  CHECK(shift_matrix(4, 4).cwiseAbs().maxCoeff() == 0.0);
  CHECK((shift_matrix(4, 2) - shift_matrix(4, 1) * shift_matrix(4, 1))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  const RealMatrix p = periodic_shift_matrix(4, 1);
  CHECK(p(0, 3) == 1.0);
  CHECK(p(1, 0) == 1.0);
  CHECK((p * p * p * p - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);
}
