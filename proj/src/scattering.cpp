#include "bosetopo/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bosetopo/models.hpp"
#include "bosetopo/parallel.hpp"

namespace bosetopo {

namespace {

constexpr Complex kI(0.0, 1.0);

void validate_setup(const ScatteringSetup& setup) {
  setup.h.validate();
  const int n = setup.h.n_modes();
  if (static_cast<int>(setup.kappa.size()) != n) {
    throw std::invalid_argument("scattering: kappa size != mode count");
  }
  for (const Port& port : setup.ports) {
    if (port.mode < 0 || port.mode >= n) {
      throw std::invalid_argument("scattering: port mode index out of range");
    }
  }
}

}  // namespace

std::vector<Complex> ScatteringSetup::total_kappa() const {
  std::vector<Complex> total = kappa;
  for (const Port& port : ports) total[port.mode] += port.kappa;
  return total;
}

Matrix response_matrix(const ScatteringSetup& setup, double omega) {
  validate_setup(setup);
  if (omega <= 0.0) {
    throw std::invalid_argument(
        "response_matrix: omega must be positive (positive-frequency sector)");
  }
  const int n = setup.h.n_modes();
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = -setup.h.K;
  g.topRightCorner(n, n) = -setup.h.Delta;
  g.bottomLeftCorner(n, n) = setup.h.Delta.conjugate();
  g.bottomRightCorner(n, n) = setup.h.K.conjugate();
  g += omega * Matrix::Identity(2 * n, 2 * n);
  const std::vector<Complex> total = setup.total_kappa();
  for (int j = 0; j < n; ++j) {
    g(j, j) += kI * (total[j] / 2.0);
  }
  return g;
}

namespace {

ScatteringResponse s_parameters_impl(const ScatteringSetup& setup,
                                     const RealVector& omega_grid, int jobs,
                                     bool serial) {
  validate_setup(setup);
  if (setup.ports.empty()) {
    throw std::invalid_argument("s_parameters: no ports defined");
  }
  const int n = setup.h.n_modes();
  const int n_ports = static_cast<int>(setup.ports.size());
  const int n_freq = static_cast<int>(omega_grid.size());

  ScatteringResponse response;
  response.frequencies = omega_grid;
  response.s_matrix.assign(n_freq, Matrix::Zero(n_ports, n_ports));
  response.mode_profiles.assign(n_freq,
                                std::vector<Vector>(n_ports,
                                                    Vector::Zero(2 * n)));
  response.flagged.assign(n_freq, 0);

  const auto body = [&](int i) {
    const Matrix g = response_matrix(setup, omega_grid(i));
    const Eigen::PartialPivLU<Matrix> lu(g);
    for (int p = 0; p < n_ports; ++p) {
      const Port& drive = setup.ports[p];
      Vector rhs = Vector::Zero(2 * n);
      rhs(drive.mode) = kI * std::sqrt(drive.kappa);
      const Vector v = lu.solve(rhs);
      const double residual = (g * v - rhs).norm();
      if (!v.allFinite() || residual > 1e-6 * rhs.norm() * (1.0 + v.norm())) {
        response.flagged[i] = 1;
        continue;
      }
      response.mode_profiles[i][p] = v;
      for (int q = 0; q < n_ports; ++q) {
        const Port& readout = setup.ports[q];
        response.s_matrix[i](q, p) =
            (p == q ? 1.0 : 0.0) -
            std::sqrt(std::conj(readout.kappa)) * v(readout.mode);
      }
    }
  };
  if (serial) {
    serial_for(n_freq, body);
  } else {
    parallel_for(n_freq, jobs, body);
  }
  return response;
}

}  // namespace

ScatteringResponse s_parameters(const ScatteringSetup& setup,
                                const RealVector& omega_grid, int jobs) {
  return s_parameters_impl(setup, omega_grid, jobs, /*serial=*/false);
}

ScatteringResponse s_parameters_serial(const ScatteringSetup& setup,
                                       const RealVector& omega_grid) {
  return s_parameters_impl(setup, omega_grid, /*jobs=*/1, /*serial=*/true);
}

DrivenProfile driven_mode_profile(const ScatteringSetup& setup, int drive_port,
                                  double omega) {
  validate_setup(setup);
  if (drive_port < 0 || drive_port >= static_cast<int>(setup.ports.size())) {
    throw std::invalid_argument("driven_mode_profile: drive port out of range");
  }
  const int n = setup.h.n_modes();
  const Matrix g = response_matrix(setup, omega);
  const Port& drive = setup.ports[drive_port];
  Vector rhs = Vector::Zero(2 * n);
  rhs(drive.mode) = kI * std::sqrt(drive.kappa);
  const Eigen::PartialPivLU<Matrix> lu(g);
  const Vector v = lu.solve(rhs);
  if (!v.allFinite() ||
      (g * v - rhs).norm() > 1e-6 * rhs.norm() * (1.0 + v.norm())) {
    throw std::runtime_error(
        "driven_mode_profile: response matrix singular at this frequency");
  }

  DrivenProfile profile;
  profile.expectation = v;
  profile.normalized = v.cwiseAbs();
  const double peak = profile.normalized.maxCoeff();
  if (peak > 0.0) profile.normalized /= peak;

  // Detection site: the photon mode whose cell is farthest from the drive.
  const std::vector<int> cells = cell_layout(setup.h);
  const int drive_cell = cells[drive.mode];
  int detection = drive.mode;
  int best_dist = -1;
  for (int j = 0; j < n; ++j) {
    const bool photon = setup.h.mode_labels.empty() ||
                        setup.h.mode_labels[j].rfind("a_", 0) == 0;
    if (!photon) continue;
    const int dist = std::abs(cells[j] - drive_cell);
    if (dist > best_dist) {
      best_dist = dist;
      detection = j;
    }
  }
  profile.detection_mode = detection;
  profile.detection_amplitude = v(detection);
  return profile;
}

ScatteringSetup photo_magnonic_setup(const QuadraticHamiltonian& h,
                                     double kappa_c, double kappa_m) {
  h.validate();
  const int n = h.n_modes();
  ScatteringSetup setup;
  setup.h = h;
  setup.kappa.assign(n, Complex(0.0));

  int first_photon = -1, last_photon = -1;
  int first_cell = 0, last_cell = 0;
  for (int j = 0; j < n; ++j) {
    const std::string& label = h.mode_labels.empty() ? "" : h.mode_labels[j];
    if (label.rfind("m_", 0) == 0) {
      setup.kappa[j] = kappa_m;
      continue;
    }
    const bool photon = label.empty() || label.rfind("a_", 0) == 0;
    if (!photon) continue;
    const int cell = label.empty() ? j : std::stoi(label.substr(2));
    if (first_photon < 0 || cell < first_cell) {
      first_photon = j;
      first_cell = cell;
    }
    if (last_photon < 0 || cell > last_cell) {
      last_photon = j;
      last_cell = cell;
    }
  }
  if (first_photon < 0) {
    throw std::invalid_argument("photo_magnonic_setup: no photon modes found");
  }
  setup.ports.push_back({first_photon, Complex(kappa_c)});
  setup.ports.push_back({last_photon, Complex(kappa_c)});
  return setup;
}

}  // namespace bosetopo
