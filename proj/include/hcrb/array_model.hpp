// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcrb Authors

#ifndef HCRB_ARRAY_MODEL_HPP
#define HCRB_ARRAY_MODEL_HPP

#include <Eigen/Core>
#include <complex>

namespace hcrb {

using cdouble = std::complex<double>;

/// Axis a planar array faces. The element grid lies in the orthogonal plane.
enum class Boresight { kPlusX, kPlusY, kPlusZ };

/// Element positions in half-wavelength units of the carrier (one row per element).
struct AntennaArray {
  Eigen::Matrix<double, Eigen::Dynamic, 3> locations;
  Boresight boresight = Boresight::kPlusZ;

  Eigen::Index size() const { return locations.rows(); }
};

/// nx-by-ny half-wavelength grid, row-major, centred on the origin.
/// For +z the grid spans (x, y); for +x it spans (y, z); for +y it spans (x, z).
AntennaArray build_ura(int nx, int ny, Boresight boresight);

/// Normalised steering vector exp(-j (2 pi / lambda_k) (lambda_c / 2) L u(theta, phi)) / sqrt(N).
Eigen::VectorXcd response(const AntennaArray& arr, double theta, double phi, double wavelength_k,
                          double carrier_wavelength);

struct SteeringDerivatives {
  Eigen::VectorXcd d_theta;
  Eigen::VectorXcd d_phi;
};

SteeringDerivatives response_derivatives(const AntennaArray& arr, double theta, double phi,
                                         double wavelength_k, double carrier_wavelength);

/// Response plus both angle derivatives, sharing the exponentials.
struct Steering {
  Eigen::VectorXcd a;
  Eigen::VectorXcd d_theta;
  Eigen::VectorXcd d_phi;
};

Steering steering(const AntennaArray& arr, double theta, double phi, double wavelength_k,
                  double carrier_wavelength);

}  // namespace hcrb

#endif  // HCRB_ARRAY_MODEL_HPP
