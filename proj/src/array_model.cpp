// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#include "hcrb/array_model.hpp"

#include <cmath>

#include "hcrb/constants.hpp"
#include "hcrb/errors.hpp"
#include "hcrb/geometry.hpp"

namespace hcrb {

AntennaArray build_ura(int nx, int ny, Boresight boresight) {
  if (nx < 1 || ny < 1) {
    throw Error(ErrorKind::kInvalidArgument, "URA dimensions must be >= 1");
  }
  AntennaArray arr;
  arr.boresight = boresight;
  arr.locations.resize(static_cast<Eigen::Index>(nx) * ny, 3);
  Eigen::Index row = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j, ++row) {
      const double g0 = i - 0.5 * (nx - 1);
      const double g1 = j - 0.5 * (ny - 1);
      switch (boresight) {
        case Boresight::kPlusZ: arr.locations.row(row) << g0, g1, 0.0; break;
        case Boresight::kPlusX: arr.locations.row(row) << 0.0, g0, g1; break;
        case Boresight::kPlusY: arr.locations.row(row) << g0, 0.0, g1; break;
      }
    }
  }
  return arr;
}

Steering steering(const AntennaArray& arr, double theta, double phi, double wavelength_k,
                  double carrier_wavelength) {
  // Phase per unit of <L, u>: (2 pi / lambda_k) * (lambda_c / 2).
  const double beta = kPi * carrier_wavelength / wavelength_k;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const Vec3 u(cp * st, sp * st, ct);
  const Vec3 du_theta(cp * ct, sp * ct, -st);
  const Vec3 du_phi(-sp * st, cp * st, 0.0);

  const Eigen::Index n = arr.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const Eigen::VectorXd proj = arr.locations * u;
  const Eigen::VectorXd proj_t = arr.locations * du_theta;
  const Eigen::VectorXd proj_p = arr.locations * du_phi;

  Steering s;
  s.a.resize(n);
  s.d_theta.resize(n);
  s.d_phi.resize(n);
  const cdouble mj(0.0, -beta);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cdouble ai = norm * std::polar(1.0, -beta * proj(i));
    s.a(i) = ai;
    s.d_theta(i) = mj * proj_t(i) * ai;
    s.d_phi(i) = mj * proj_p(i) * ai;
  }
  return s;
}

Eigen::VectorXcd response(const AntennaArray& arr, double theta, double phi, double wavelength_k,
                          double carrier_wavelength) {
  return steering(arr, theta, phi, wavelength_k, carrier_wavelength).a;
}

SteeringDerivatives response_derivatives(const AntennaArray& arr, double theta, double phi,
                                         double wavelength_k, double carrier_wavelength) {
  Steering s = steering(arr, theta, phi, wavelength_k, carrier_wavelength);
  return {std::move(s.d_theta), std::move(s.d_phi)};
}

}  // namespace hcrb
