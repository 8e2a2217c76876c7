// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/geom.hpp"

#include <array>
#include <cmath>
#include <string>

#include "beamsynth/errors.hpp"

namespace beamsynth::geom {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 geocentric(double lat_deg, double lon_deg, double radius) {
  const double lat = lat_deg * kDegToRad;
  const double lon = lon_deg * kDegToRad;
  return {radius * std::cos(lat) * std::cos(lon), radius * std::cos(lat) * std::sin(lon),
          radius * std::sin(lat)};
}

double wrap_360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

}  // namespace

void OrbitGeometry::validate() const {
  if (!(earth_radius_km > 0.0)) throw ConfigError("orbit.earth_radius_km must be > 0");
  if (!(altitude_km > 0.0)) throw ConfigError("orbit.altitude_km must be > 0");
  if (!(satellite_longitude_deg >= -180.0 && satellite_longitude_deg <= 180.0)) {
    throw ConfigError("orbit.satellite_longitude_deg must be in [-180, 180]");
  }
}

DirectionCosines to_direction_cosines(const SteeringAngles& s) {
  const double t = s.theta_deg * kDegToRad;
  const double p = s.phi_deg * kDegToRad;
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

SteeringAngles to_steering_angles(const DirectionCosines& d) {
  const double rho = std::hypot(d.u, d.v);
  const double theta = std::atan2(rho, d.w) * kRadToDeg;
  const double phi = rho == 0.0 ? 0.0 : wrap_360(std::atan2(d.v, d.u) * kRadToDeg);
  return {theta, phi};
}

double coverage_half_angle_deg(double coverage_area_km2, const OrbitGeometry& geo) {
  const double sphere_half = 2.0 * std::numbers::pi * geo.earth_radius_km * geo.earth_radius_km;
  if (!(coverage_area_km2 > 0.0) || coverage_area_km2 > sphere_half) {
    throw DomainError("coverage area must be in (0, 2*pi*Re^2], got " +
                      std::to_string(coverage_area_km2) + " km^2");
  }
  // 1 - cos(a) = 2 sin^2(a/2); the half-angle form stays accurate for tiny caps.
  return 2.0 * std::asin(std::sqrt(0.5 * coverage_area_km2 / sphere_half)) * kRadToDeg;
}

double cap_area_km2(double half_angle_deg, const OrbitGeometry& geo) {
  return 2.0 * std::numbers::pi * geo.earth_radius_km * geo.earth_radius_km *
         2.0 * std::pow(std::sin(0.5 * half_angle_deg * kDegToRad), 2);
}

double required_beamwidth_deg(double alpha_c_deg, const OrbitGeometry& geo) {
  if (!(alpha_c_deg > 0.0)) throw DomainError("alpha_c must be > 0");
  const double k = geo.earth_radius_km / geo.orbit_radius_km();
  const double alpha = alpha_c_deg * kDegToRad;
  const auto residual = [&](double theta) {
    return std::sin(theta) - k * std::sin(theta + alpha);
  };

  double lo = 0.0;
  double hi = std::numbers::pi / 2.0;
  if (residual(lo) >= 0.0 || residual(hi) <= 0.0) {
    throw GeometryError("no beamwidth root in [0, 90] deg");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) < 1e-15 || hi - lo < 1e-16) break;
    (r < 0.0 ? lo : hi) = mid;
  }
  // The cap edge is visible only if the line of sight meets it above the
  // local horizon, i.e. theta + alpha <= 90 deg.
  if (mid + alpha > std::numbers::pi / 2.0) {
    throw GeometryError("coverage edge at alpha_c = " + std::to_string(alpha_c_deg) +
                        " deg lies beyond the horizon");
  }
  return 2.0 * mid * kRadToDeg;
}

double raw_elements_per_dimension(double beamwidth_deg, double efficiency,
                                  double element_pitch_wavelengths) {
  if (!(beamwidth_deg > 0.0) || !(efficiency > 0.0) || !(element_pitch_wavelengths > 0.0)) {
    throw DomainError("beamwidth, efficiency and element pitch must be > 0");
  }
  return 0.886 / (efficiency * beamwidth_deg * kDegToRad * element_pitch_wavelengths);
}

int elements_per_dimension(double beamwidth_deg, double efficiency,
                           double element_pitch_wavelengths, int subarray_dim) {
  if (subarray_dim < 1) throw DomainError("subarray_dim must be >= 1");
  const double raw = raw_elements_per_dimension(beamwidth_deg, efficiency, element_pitch_wavelengths);
  const double groups = raw / subarray_dim;
  // Values within rounding noise of an exact multiple are not bumped up.
  const double nearest = std::round(groups);
  const double whole = std::abs(groups - nearest) <= 1e-9 * std::max(1.0, groups)
                           ? nearest
                           : std::ceil(groups);
  return static_cast<int>(whole) * subarray_dim;
}

double field_of_view_deg(const OrbitGeometry& geo) {
  return std::atan(geo.earth_radius_km / geo.orbit_radius_km()) * kRadToDeg;
}

double max_subarray_pitch_wavelengths(double fov_deg) {
  if (!(fov_deg > 0.0) || fov_deg > 90.0) throw DomainError("fov must be in (0, 90] deg");
  return 1.0 / (2.0 * std::sin(fov_deg * kDegToRad));
}

SteeringAngles target_to_steering(const GroundTarget& target, const OrbitGeometry& geo) {
  if (!(target.latitude_deg >= -90.0 && target.latitude_deg <= 90.0) ||
      !(target.longitude_deg >= -180.0 && target.longitude_deg <= 180.0)) {
    throw DomainError("target latitude must be in [-90, 90] and longitude in [-180, 180]");
  }
  // Work in a frame rotated so the satellite sits on the +X axis; then east
  // is +Y, north is +Z and nadir is -X.
  const double dlon = std::remainder(target.longitude_deg - geo.satellite_longitude_deg, 360.0);
  const Vec3 sat{geo.orbit_radius_km(), 0.0, 0.0};
  const Vec3 tgt = geocentric(target.latitude_deg, dlon, geo.earth_radius_km);

  const Vec3 los{tgt[0] - sat[0], tgt[1] - sat[1], tgt[2] - sat[2]};
  const double range = std::sqrt(dot(los, los));

  // Satellite must be above the target's local horizon.
  const Vec3 to_sat{-los[0], -los[1], -los[2]};
  if (dot(tgt, to_sat) <= 0.0) {
    throw VisibilityError("target below the local horizon of the satellite");
  }

  const DirectionCosines d{los[1] / range, los[2] / range, -los[0] / range};
  SteeringAngles s = to_steering_angles(d);

  const double fov = field_of_view_deg(geo);
  if (s.theta_deg > fov) {
    throw VisibilityError("target off-nadir angle " + std::to_string(s.theta_deg) +
                          " deg exceeds the field of view " + std::to_string(fov) + " deg");
  }
  return s;
}

}  // namespace beamsynth::geom
