#include "bosetopo/models.hpp"

#include <cmath>
#include <stdexcept>

namespace bosetopo {

namespace {

constexpr Complex kI(0.0, 1.0);

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<std::string> chain_labels(const std::vector<std::string>& families,
                                      int N) {
  std::vector<std::string> labels;
  labels.reserve(families.size() * static_cast<size_t>(N));
  for (const auto& f : families) {
    for (int j = 0; j < N; ++j) labels.push_back(f + "_" + std::to_string(j));
  }
  return labels;
}

/// Splits "family_cell" into its two parts; throws on malformed labels.
std::pair<std::string, int> parse_label(const std::string& label) {
  const auto pos = label.rfind('_');
  if (pos == std::string::npos || pos + 1 >= label.size()) {
    throw std::invalid_argument("mode label is not of the form <family>_<cell>: " +
                                label);
  }
  return {label.substr(0, pos), std::stoi(label.substr(pos + 1))};
}

/// Per-family mode-index tables: family name -> cell -> mode index.
std::map<std::string, std::vector<int>> family_layout(
    const QuadraticHamiltonian& h) {
  std::map<std::string, std::vector<int>> fams;
  if (h.mode_labels.empty()) {
    std::vector<int> cells(h.n_modes());
    for (int j = 0; j < h.n_modes(); ++j) cells[j] = j;
    fams["a"] = cells;
    return fams;
  }
  std::map<std::string, std::map<int, int>> raw;
  for (int j = 0; j < h.n_modes(); ++j) {
    const auto [family, cell] = parse_label(h.mode_labels[j]);
    raw[family][cell] = j;
  }
  for (const auto& [family, cells] : raw) {
    std::vector<int> idx;
    idx.reserve(cells.size());
    int expect = 0;
    for (const auto& [cell, mode] : cells) {
      if (cell != expect++) {
        throw std::invalid_argument("non-contiguous cell indices in family " +
                                    family);
      }
      idx.push_back(mode);
    }
    fams[family] = std::move(idx);
  }
  return fams;
}

}  // namespace

// ---------------------------------------------------------------------------
// BlochSymbol
// ---------------------------------------------------------------------------

void BlochSymbol::add_block(int r, const Matrix& k_part,
                            const Matrix& delta_part) {
  auto it = blocks.find(r);
  if (it == blocks.end()) {
    blocks[r] = {k_part, delta_part};
    return;
  }
  it->second.first += k_part;
  it->second.second += delta_part;
}

Matrix BlochSymbol::evaluate_K(double k) const {
  Matrix out = Matrix::Zero(n_cell, n_cell);
  for (const auto& [r, pair] : blocks) {
    out += std::exp(kI * (k * r)) * pair.first;
  }
  return out;
}

Matrix BlochSymbol::evaluate_Delta(double k) const {
  Matrix out = Matrix::Zero(n_cell, n_cell);
  for (const auto& [r, pair] : blocks) {
    out += std::exp(kI * (k * r)) * pair.second;
  }
  return out;
}

Matrix BlochSymbol::evaluate_G(double k) const {
  const int n = n_cell;
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = evaluate_K(k);
  g.topRightCorner(n, n) = -evaluate_Delta(k);
  g.bottomLeftCorner(n, n) = evaluate_Delta(-k).conjugate();
  g.bottomRightCorner(n, n) = -evaluate_K(-k).conjugate();
  return g;
}

Matrix BlochSymbol::evaluate_K_im(double k) const {
  return (evaluate_K(k) - evaluate_K(-k).conjugate()) / (2.0 * kI);
}

Matrix BlochSymbol::evaluate_Delta_im(double k) const {
  return (evaluate_Delta(k) - evaluate_Delta(-k).conjugate()) / (2.0 * kI);
}

Matrix BlochSymbol::evaluate_K_re(double k) const {
  return (evaluate_K(k) + evaluate_K(-k).conjugate()) / 2.0;
}

Matrix BlochSymbol::evaluate_Delta_re(double k) const {
  return (evaluate_Delta(k) + evaluate_Delta(-k).conjugate()) / 2.0;
}

void BlochSymbol::validate() const {
  if (n_cell < 1) throw std::invalid_argument("BlochSymbol: n_cell < 1");
  double scale = 1.0;
  for (const auto& [r, pair] : blocks) {
    scale = std::max({scale, max_abs(pair.first), max_abs(pair.second)});
  }
  const Matrix zero = Matrix::Zero(n_cell, n_cell);
  for (const auto& [r, pair] : blocks) {
    const auto mirror = blocks.find(-r);
    const Matrix& mk = mirror == blocks.end() ? zero : mirror->second.first;
    const Matrix& md = mirror == blocks.end() ? zero : mirror->second.second;
    if (max_abs(mk - pair.first.adjoint()) > kStructuralTol * scale) {
      throw std::invalid_argument("BlochSymbol: K_{-r} != K_r^dag at r=" +
                                  std::to_string(r));
    }
    if (max_abs(md - pair.second.transpose()) > kStructuralTol * scale) {
      throw std::invalid_argument("BlochSymbol: Delta_{-r} != Delta_r^T at r=" +
                                  std::to_string(r));
    }
  }
}

double BlochSymbol::max_delta() const {
  double m = 0.0;
  for (const auto& [r, pair] : blocks) m = std::max(m, max_abs(pair.second));
  return m;
}

// ---------------------------------------------------------------------------
// Real-space constructors
// ---------------------------------------------------------------------------

QuadraticHamiltonian photo_magnonic_chain(int N, int n, double omega_a,
                                          double omega_m, Complex t, Complex g,
                                          bool rwa, bool pbc) {
  if (N < 1) throw std::invalid_argument("photo_magnonic_chain: N < 1");
  if (n < 0 || n > N) {
    throw std::invalid_argument("photo_magnonic_chain: need 0 <= n <= N");
  }
  std::vector<Term> terms;
  const auto a = [](int j) { return j; };
  const auto m = [N](int j) { return N + j; };

  for (int j = 0; j < N; ++j) {
    if (omega_a != 0.0) terms.push_back(Term::onsite(a(j), omega_a));
    if (omega_m != 0.0) terms.push_back(Term::onsite(m(j), omega_m));
  }
  for (int j = 0; j < N; ++j) {
    const int jp = j + 1;
    if (jp < N) {
      terms.push_back(Term::hopping(a(jp), a(j), -t));
    } else if (pbc && jp % N != j) {
      terms.push_back(Term::hopping(a(jp % N), a(j), -t));
    }
    const int jn = j + n;
    const int target = pbc ? jn % N : jn;
    if (jn < N || pbc) {
      terms.push_back(Term::hopping(m(target), a(j), g));
      if (!rwa) terms.push_back(Term::pairing(a(j), m(target), std::conj(g)));
    }
  }
  return build_qbh(2 * N, terms, chain_labels({"a", "m"}, N));
}

QuadraticHamiltonian bkc(int N, double t, double delta, bool pbc) {
  if (N < 2) throw std::invalid_argument("bkc: N < 2");
  std::vector<Term> terms;
  const int last = pbc ? N : N - 1;
  for (int j = 0; j < last; ++j) {
    const int jp = (j + 1) % N;
    terms.push_back(Term::hopping(jp, j, kI * (t / 2.0)));
    terms.push_back(Term::pairing(j, jp, kI * (delta / 2.0)));
  }
  return build_qbh(N, terms, chain_labels({"a"}, N));
}

QuadraticHamiltonian bosonic_ssh(int N, double t1, double t2, bool pbc) {
  if (N < 1) throw std::invalid_argument("bosonic_ssh: N < 1");
  if (t1 <= 0.0 || t2 <= 0.0) {
    throw std::invalid_argument("bosonic_ssh: t1 and t2 must be positive");
  }
  std::vector<Term> terms;
  const auto a = [](int j) { return j; };
  const auto b = [N](int j) { return N + j; };
  for (int j = 0; j < N; ++j) {
    terms.push_back(Term::hopping(a(j), b(j), Complex(t1)));
    const int jp = j + 1;
    if (jp < N) {
      terms.push_back(Term::hopping(a(j), b(jp), Complex(t2)));
    } else if (pbc && N > 1) {
      terms.push_back(Term::hopping(a(j), b(jp % N), Complex(t2)));
    }
  }
  return build_qbh(2 * N, terms, chain_labels({"a", "b"}, N));
}

QuadraticHamiltonian coupled_cavity_pair(double omega_a, Complex t) {
  return build_qbh(
      2,
      {Term::onsite(0, omega_a), Term::onsite(1, omega_a),
       Term::hopping(1, 0, t)},
      {"a_0", "a_1"});
}

// ---------------------------------------------------------------------------
// Perturbations
// ---------------------------------------------------------------------------

QuadraticHamiltonian apply_perturbation(const QuadraticHamiltonian& h,
                                        const PerturbationSpec& p, bool pbc) {
  h.validate();
  QuadraticHamiltonian out = h;
  const auto fams = family_layout(h);

  switch (p.kind) {
    case PerturbationSpec::Kind::MagnonHopping: {
      const auto it = fams.find("m");
      if (it == fams.end()) {
        throw std::invalid_argument(
            "apply_perturbation: MagnonHopping needs a magnon family");
      }
      const auto& m = it->second;
      const int N = static_cast<int>(m.size());
      const Complex amp = -kI * p.strength;  // -i t_m m_{j+1}^dag m_j + h.c.
      const int last = pbc ? N : N - 1;
      for (int j = 0; j < last; ++j) {
        const int jp = (j + 1) % N;
        if (jp == j) continue;
        out.K(m[jp], m[j]) += amp;
        out.K(m[j], m[jp]) += std::conj(amp);
      }
      break;
    }
    case PerturbationSpec::Kind::SshChiralBreaking: {
      if (fams.find("a") == fams.end() || fams.find("b") == fams.end()) {
        throw std::invalid_argument(
            "apply_perturbation: SshChiralBreaking needs a/b sublattices");
      }
      const Complex amp = -kI * (p.strength / 2.0);
      for (const auto& fam : {fams.at("a"), fams.at("b")}) {
        const int N = static_cast<int>(fam.size());
        const int last = pbc ? N : N - 1;
        for (int j = 0; j < last; ++j) {
          const int jp = (j + 1) % N;
          if (jp == j) continue;
          out.K(fam[jp], fam[j]) += amp;
          out.K(fam[j], fam[jp]) += std::conj(amp);
        }
      }
      break;
    }
    case PerturbationSpec::Kind::LinearInterpolation: {
      if (!p.toward) {
        throw std::invalid_argument(
            "apply_perturbation: LinearInterpolation needs a target model");
      }
      const double x = p.strength;
      if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument(
            "apply_perturbation: interpolation parameter outside [0, 1]");
      }
      const QuadraticHamiltonian target = build_model(*p.toward);
      if (target.n_modes() != h.n_modes()) {
        throw std::invalid_argument(
            "apply_perturbation: interpolation endpoints differ in mode count");
      }
      out.K = (1.0 - x) * h.K + x * target.K;
      out.Delta = (1.0 - x) * h.Delta + x * target.Delta;
      break;
    }
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Model dispatch
// ---------------------------------------------------------------------------

QuadraticHamiltonian build_model(const ModelSpec& spec) {
  QuadraticHamiltonian h;
  switch (spec.name) {
    case ModelSpec::Name::PhotoMagnonic:
    case ModelSpec::Name::PhotoMagnonicRWA:
      h = photo_magnonic_chain(
          spec.N, spec.n_offset, spec.param("omega_a").real(),
          spec.param("omega_m").real(), spec.param("t"), spec.param("g"),
          spec.name == ModelSpec::Name::PhotoMagnonicRWA, spec.pbc);
      break;
    case ModelSpec::Name::BKC:
      h = bkc(spec.N, spec.param("t").real(), spec.param("delta").real(),
              spec.pbc);
      break;
    case ModelSpec::Name::BosonicSSH:
      h = bosonic_ssh(spec.N, spec.param("t1").real(), spec.param("t2").real(),
                      spec.pbc);
      break;
  }
  for (const auto& p : spec.perturbations) {
    h = apply_perturbation(h, p, spec.pbc);
  }
  return h;
}

std::vector<int> cell_layout(const QuadraticHamiltonian& h) {
  std::vector<int> cells(h.n_modes());
  if (h.mode_labels.empty()) {
    for (int j = 0; j < h.n_modes(); ++j) cells[j] = j;
    return cells;
  }
  for (int j = 0; j < h.n_modes(); ++j) {
    cells[j] = parse_label(h.mode_labels[j]).second;
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Bloch symbols
// ---------------------------------------------------------------------------

BlochSymbol bloch_symbol(const ModelSpec& spec) {
  BlochSymbol sym;
  const Complex t = spec.param("t");
  const Complex g = spec.param("g");

  switch (spec.name) {
    case ModelSpec::Name::PhotoMagnonic:
    case ModelSpec::Name::PhotoMagnonicRWA: {
      const bool rwa = spec.name == ModelSpec::Name::PhotoMagnonicRWA;
      const int n = spec.n_offset;
      sym.n_cell = 2;
      const Matrix zero = Matrix::Zero(2, 2);
      Matrix k0 = zero;
      k0(0, 0) = spec.param("omega_a");
      k0(1, 1) = spec.param("omega_m");
      sym.add_block(0, k0, zero);
      Matrix hop = zero;
      hop(0, 0) = -t;
      sym.add_block(1, hop, zero);
      sym.add_block(-1, hop.adjoint(), zero);
      Matrix cup = zero;  // coupling block at range +n: g on the magnon row
      cup(1, 0) = g;
      Matrix cdn = zero;
      cdn(0, 1) = std::conj(g);
      Matrix pup = zero;  // pairing carries g* on both off-diagonal blocks
      pup(1, 0) = std::conj(g);
      Matrix pdn = zero;
      pdn(0, 1) = std::conj(g);
      sym.add_block(n, cup, rwa ? zero : pup);
      sym.add_block(-n, cdn, rwa ? zero : pdn);
      break;
    }
    case ModelSpec::Name::BKC: {
      sym.n_cell = 1;
      const double tb = spec.param("t").real();
      const double db = spec.param("delta").real();
      Matrix kb(1, 1), dmat(1, 1);
      kb(0, 0) = kI * (tb / 2.0);
      dmat(0, 0) = kI * (db / 2.0);
      sym.add_block(1, kb, dmat);
      sym.add_block(-1, kb.adjoint(), dmat.transpose());
      break;
    }
    case ModelSpec::Name::BosonicSSH: {
      sym.n_cell = 2;
      const double t1 = spec.param("t1").real();
      const double t2 = spec.param("t2").real();
      const Matrix zero = Matrix::Zero(2, 2);
      Matrix k0 = zero;
      k0(0, 1) = t1;
      k0(1, 0) = t1;
      Matrix k1 = zero;
      k1(1, 0) = t2;
      sym.add_block(0, k0, zero);
      sym.add_block(1, k1, zero);
      sym.add_block(-1, k1.adjoint(), zero);
      break;
    }
  }

  for (const auto& p : spec.perturbations) {
    switch (p.kind) {
      case PerturbationSpec::Kind::MagnonHopping: {
        if (spec.name != ModelSpec::Name::PhotoMagnonic &&
            spec.name != ModelSpec::Name::PhotoMagnonicRWA) {
          throw std::invalid_argument(
              "bloch_symbol: MagnonHopping needs a photo-magnonic model");
        }
        const Matrix zero = Matrix::Zero(2, 2);
        Matrix hop = zero;
        hop(1, 1) = -kI * p.strength;
        sym.add_block(1, hop, zero);
        sym.add_block(-1, hop.adjoint(), zero);
        break;
      }
      case PerturbationSpec::Kind::SshChiralBreaking: {
        if (spec.name != ModelSpec::Name::BosonicSSH) {
          throw std::invalid_argument(
              "bloch_symbol: SshChiralBreaking needs the SSH model");
        }
        const Matrix zero = Matrix::Zero(2, 2);
        Matrix hop = zero;
        hop(0, 0) = -kI * (p.strength / 2.0);
        hop(1, 1) = -kI * (p.strength / 2.0);
        sym.add_block(1, hop, zero);
        sym.add_block(-1, hop.adjoint(), zero);
        break;
      }
      case PerturbationSpec::Kind::LinearInterpolation: {
        if (!p.toward) {
          throw std::invalid_argument(
              "bloch_symbol: LinearInterpolation needs a target model");
        }
        const double x = p.strength;
        if (x < 0.0 || x > 1.0) {
          throw std::invalid_argument(
              "bloch_symbol: interpolation parameter outside [0, 1]");
        }
        const BlochSymbol target = bloch_symbol(*p.toward);
        if (target.n_cell != sym.n_cell) {
          throw std::invalid_argument(
              "bloch_symbol: interpolation endpoints differ in cell size");
        }
        for (auto& [r, pair] : sym.blocks) {
          pair.first *= (1.0 - x);
          pair.second *= (1.0 - x);
        }
        for (const auto& [r, pair] : target.blocks) {
          sym.add_block(r, x * pair.first, x * pair.second);
        }
        break;
      }
    }
  }

  sym.validate();
  return sym;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

std::pair<double, double> closed_form_polaritons(double omega_a,
                                                 double omega_m, Complex g,
                                                 bool rwa) {
  const double g2 = std::norm(g);
  if (rwa) {
    const double mean = (omega_a + omega_m) / 2.0;
    const double split =
        std::sqrt((omega_a - omega_m) * (omega_a - omega_m) + 4.0 * g2) / 2.0;
    return {mean + split, mean - split};
  }
  if (omega_a <= 0.0 || omega_m <= 0.0) {
    throw std::invalid_argument(
        "closed_form_polaritons: full form needs omega_a, omega_m > 0");
  }
  const double wa2 = omega_a * omega_a;
  const double wm2 = omega_m * omega_m;
  const double rad =
      (wa2 - wm2) * (wa2 - wm2) + 16.0 * omega_a * omega_m * g2;
  const double plus2 = (wa2 + wm2) / 2.0 + std::sqrt(rad) / 2.0;
  const double minus2 = (wa2 + wm2) / 2.0 - std::sqrt(rad) / 2.0;
  if (minus2 < 0.0) {
    throw std::runtime_error(
        "closed_form_polaritons: lower polariton branch is unstable");
  }
  return {std::sqrt(plus2), std::sqrt(minus2)};
}

}  // namespace bosetopo
