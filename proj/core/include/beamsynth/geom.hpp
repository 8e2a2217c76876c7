// SPDX-License-Identifier: Apache-2.0
#pragma once

// Earth / GEO geometry for sizing a direct radiating array and for turning a
// ground target into antenna steering angles.
//
// Earth is a sphere. The antenna frame is nadir-pointing: +z toward the Earth
// centre, +x local east and +y local north at the sub-satellite point. The
// azimuth angle phi is measured from +x toward +y.

#include <numbers>

namespace beamsynth::geom {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct OrbitGeometry {
  double earth_radius_km = 6317.0;
  double altitude_km = 35786.0;
  double satellite_longitude_deg = 0.0;

  // Throws ConfigError when an invariant does not hold.
  void validate() const;

  double orbit_radius_km() const { return earth_radius_km + altitude_km; }
};

struct GroundTarget {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
};

struct SteeringAngles {
  double theta_deg = 0.0;  // off nadir
  double phi_deg = 0.0;    // [0, 360)
};

// Direction cosines of a unit vector in the antenna frame.
struct DirectionCosines {
  double u = 0.0;  // east
  double v = 0.0;  // north
  double w = 1.0;  // nadir
};

DirectionCosines to_direction_cosines(const SteeringAngles& s);
SteeringAngles to_steering_angles(const DirectionCosines& d);

// Half angle (degrees, seen from the Earth centre) of a spherical cap with
// the given area. Accepts 0 < area <= 2 pi Re^2 (the hemisphere maps to 90
// degrees); anything else throws DomainError.
double coverage_half_angle_deg(double coverage_area_km2, const OrbitGeometry& geo);

// Inverse of coverage_half_angle_deg.
double cap_area_km2(double half_angle_deg, const OrbitGeometry& geo);

// Full -3 dB beamwidth (degrees) needed to illuminate a cap of half angle
// alpha_c seen from the satellite at nadir. Solves
//   sin(theta) = Re / (Re + h) * sin(theta + alpha_c)
// by bisection on [0, 90] degrees and returns 2 * theta.
// Throws GeometryError when the cap edge lies beyond the horizon.
double required_beamwidth_deg(double alpha_c_deg, const OrbitGeometry& geo);

// Raw element count per dimension, 0.886 / (eta * bw * d), bw in radians and
// d in wavelengths.
double raw_elements_per_dimension(double beamwidth_deg, double efficiency,
                                  double element_pitch_wavelengths);

// raw_elements_per_dimension rounded up to a multiple of subarray_dim.
int elements_per_dimension(double beamwidth_deg, double efficiency,
                           double element_pitch_wavelengths, int subarray_dim);

// Half-angle field of view, atan(Re / (Re + h)), in degrees.
double field_of_view_deg(const OrbitGeometry& geo);

// Largest subarray pitch (wavelengths) keeping grating lobes out of +-fov.
double max_subarray_pitch_wavelengths(double fov_deg);

// Line-of-sight direction from the satellite to the target.
// Throws VisibilityError when the target is below the local horizon or its
// off-nadir angle exceeds field_of_view_deg(geo).
SteeringAngles target_to_steering(const GroundTarget& target, const OrbitGeometry& geo);

}  // namespace beamsynth::geom
