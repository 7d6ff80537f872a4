// Copyright 2026 The mmreflect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef MMREFLECT_GEOMETRY_HPP_
#define MMREFLECT_GEOMETRY_HPP_

#include <cmath>
#include <string_view>

namespace mmreflect {

// Scene frame: right-handed, origin at the inner vertex of the L-corridor
// corner, x parallel to the transmitter leg, y running into the NLoS leg,
// z up. The transmitter leg occupies y in [-w, 0] and extends towards -x;
// the NLoS leg occupies x in [0, w] and extends towards +y, so receiver grid
// coordinates are non-negative. The outer corner sits at (w, -w).

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Point3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Point3 operator*(double s, const Point3& p) {
    return {s * p.x, s * p.y, s * p.z};
  }
  friend bool operator==(const Point3&, const Point3&) = default;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline double dot(const Point3& a, const Point3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
inline double horizontal_distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Plane-side classification tolerance, meters.
inline constexpr double kPlaneTolerance = 1e-9;

enum class MaterialKind { kSilver, kCopper, kSilverCoatedMirror, kFoam };

std::string_view to_string(MaterialKind kind);
// Accepts silver, copper, mirror / silver_coated_mirror, foam.
MaterialKind parse_material(std::string_view name);

// Reflection loss per material, dB. The defaults keep the measured ranking:
// silver strongest, copper and mirror tied, bare foam board weakest.
struct MaterialTable {
  double silver = 0.0;
  double copper = 1.0;
  double mirror = 1.0;
  double foam = 12.0;

  double reflection_loss(MaterialKind kind) const;
  // Throws ConfigError unless silver < copper == mirror < foam.
  void validate() const;
};

// A flat, zero-thickness rectangular reflector standing vertically.
// `azimuth_deg` is the angle of the panel's horizontal edge measured from
// +x; at 45 degrees the panel spans the corner diagonal and faces both legs.
// `width` is the horizontal extent, `height` the vertical extent, and
// center.z is the mount height of the panel center.
struct ReflectorPanel {
  Point3 center;
  double azimuth_deg = 45.0;
  double width = 0.9;
  double height = 0.3;
  MaterialKind material = MaterialKind::kSilverCoatedMirror;

  double mount_height() const { return center.z; }
  // Unit vector along the horizontal edge.
  Point3 tangent() const;
  // Unit normal, pointing into the corridor.
  Point3 normal() const;
  void validate() const;
};

struct SceneConfig {
  double corridor_width = 2.5;
  Point3 tx_position;
  double rx_height = 1.5;
  Point3 lidar_position;
  ReflectorPanel panel;
  double carrier_frequency = 60e9;
  MaterialTable losses;

  // Defaults: 2.5 m corridor, panel centered on the 1.2 m foam
  // board across the outer corner at 1.35 m, transmitter and LiDAR
  // collocated 3.8 m up the transmitter leg at 1.5 m height.
  static SceneConfig Default();

  double reflection_loss() const { return losses.reflection_loss(panel.material); }
  // Throws ConfigError on any violated invariant.
  void validate() const;
};

// Panel center for a board of `board_width` pushed flush into the outer
// corner of a corridor of width `corridor_width`.
Point3 corner_panel_center(double corridor_width, double board_width,
                           double mount_height);

// Signed distance from p to the panel's infinite plane, positive on the
// corridor side.
double signed_distance(const Point3& p, const ReflectorPanel& panel);

// Mirror image of p across the panel's infinite plane.
Point3 image_point(const Point3& p, const ReflectorPanel& panel);

// True iff the open segment (a, b) crosses the finite panel rectangle.
// Throws GeometryError when a == b.
bool segment_intersects_panel(const Point3& a, const Point3& b,
                              const ReflectorPanel& panel);

// Unfolded specular path length |image(tx) - rx|. Throws GeometryError when
// tx and rx lie strictly on opposite sides of the plane.
double path_length_via_panel(const Point3& tx, const Point3& rx,
                             const ReflectorPanel& panel);

}  // namespace mmreflect

#endif  // MMREFLECT_GEOMETRY_HPP_
