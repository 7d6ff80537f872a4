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
#include "mmreflect/geometry.hpp"

#include <numbers>
#include <string>

#include "mmreflect/errors.hpp"

namespace mmreflect {

std::string_view to_string(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::kSilver:
      return "silver";
    case MaterialKind::kCopper:
      return "copper";
    case MaterialKind::kSilverCoatedMirror:
      return "mirror";
    case MaterialKind::kFoam:
      return "foam";
  }
  return "unknown";
}

MaterialKind parse_material(std::string_view name) {
  if (name == "silver") return MaterialKind::kSilver;
  if (name == "copper") return MaterialKind::kCopper;
  if (name == "mirror" || name == "silver_coated_mirror") {
    return MaterialKind::kSilverCoatedMirror;
  }
  if (name == "foam") return MaterialKind::kFoam;
  throw ConfigError("unknown material '" + std::string(name) +
                    "' (expected silver, copper, mirror or foam)");
}

double MaterialTable::reflection_loss(MaterialKind kind) const {
  switch (kind) {
    case MaterialKind::kSilver:
      return silver;
    case MaterialKind::kCopper:
      return copper;
    case MaterialKind::kSilverCoatedMirror:
      return mirror;
    case MaterialKind::kFoam:
      return foam;
  }
  return foam;
}

void MaterialTable::validate() const {
  if (!(std::isfinite(silver) && std::isfinite(copper) &&
        std::isfinite(mirror) && std::isfinite(foam))) {
    throw ConfigError("reflection losses must be finite");
  }
  if (!(silver < copper && copper == mirror && mirror < foam)) {
    throw ConfigError(
        "reflection losses must satisfy silver < copper = mirror < foam");
  }
}

Point3 ReflectorPanel::tangent() const {
  const double a = azimuth_deg * std::numbers::pi / 180.0;
  return {std::cos(a), std::sin(a), 0.0};
}

Point3 ReflectorPanel::normal() const {
  const double a = azimuth_deg * std::numbers::pi / 180.0;
  return {-std::sin(a), std::cos(a), 0.0};
}

void ReflectorPanel::validate() const {
  if (!center.finite()) throw ConfigError("panel center must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ConfigError("panel width must be > 0");
  }
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw ConfigError("panel height must be > 0");
  }
  if (!(azimuth_deg > 0.0 && azimuth_deg < 90.0)) {
    throw ConfigError("panel azimuth must lie in (0, 90) degrees");
  }
}

Point3 corner_panel_center(double corridor_width, double board_width,
                           double mount_height) {
  const double inset = 0.5 * board_width / std::numbers::sqrt2;
  return {corridor_width - inset, -corridor_width + inset, mount_height};
}

SceneConfig SceneConfig::Default() {
  SceneConfig scene;
  scene.corridor_width = 2.5;
  scene.panel.center = corner_panel_center(scene.corridor_width, 1.2, 1.35);
  scene.panel.azimuth_deg = 45.0;
  scene.panel.width = 0.9;
  scene.panel.height = 0.3;
  scene.panel.material = MaterialKind::kSilverCoatedMirror;
  scene.tx_position = {scene.panel.center.x - 3.8,
                       -0.5 * scene.corridor_width, 1.5};
  scene.lidar_position = scene.tx_position;
  scene.rx_height = 1.5;
  scene.carrier_frequency = 60e9;
  return scene;
}

void SceneConfig::validate() const {
  if (!(corridor_width > 0.0) || !std::isfinite(corridor_width)) {
    throw ConfigError("corridor_width must be > 0");
  }
  if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency)) {
    throw ConfigError("carrier_frequency must be > 0");
  }
  if (!std::isfinite(rx_height)) throw ConfigError("rx_height must be finite");
  if (!tx_position.finite()) throw ConfigError("tx_position must be finite");
  if (!lidar_position.finite()) {
    throw ConfigError("lidar_position must be finite");
  }
  panel.validate();
  losses.validate();
  // The transmitter lives in the transmitter leg, past the inner vertex.
  if (!(tx_position.x < 0.0 && tx_position.y <= 0.0 &&
        tx_position.y >= -corridor_width)) {
    throw ConfigError(
        "tx_position must lie in the transmitter leg (x < 0, -w <= y <= 0)");
  }
  if (signed_distance(tx_position, panel) <= kPlaneTolerance) {
    throw ConfigError("tx_position must lie on the corridor side of the panel");
  }
}

double signed_distance(const Point3& p, const ReflectorPanel& panel) {
  return dot(p - panel.center, panel.normal());
}

Point3 image_point(const Point3& p, const ReflectorPanel& panel) {
  const double s = signed_distance(p, panel);
  return p - (2.0 * s) * panel.normal();
}

bool segment_intersects_panel(const Point3& a, const Point3& b,
                              const ReflectorPanel& panel) {
  if (a == b) throw GeometryError("degenerate segment: endpoints coincide");
  const double da = signed_distance(a, panel);
  const double db = signed_distance(b, panel);
  // Endpoints on the plane do not count: the open segment must cross it.
  if (std::abs(da) <= kPlaneTolerance || std::abs(db) <= kPlaneTolerance) {
    return false;
  }
  if ((da > 0.0) == (db > 0.0)) return false;
  const double t = da / (da - db);
  const Point3 hit = a + t * (b - a);
  const Point3 local = hit - panel.center;
  const double u = dot(local, panel.tangent());
  const double v = local.z;
  return std::abs(u) <= 0.5 * panel.width && std::abs(v) <= 0.5 * panel.height;
}

double path_length_via_panel(const Point3& tx, const Point3& rx,
                             const ReflectorPanel& panel) {
  const double st = signed_distance(tx, panel);
  const double sr = signed_distance(rx, panel);
  if ((st > kPlaneTolerance && sr < -kPlaneTolerance) ||
      (st < -kPlaneTolerance && sr > kPlaneTolerance)) {
    throw GeometryError(
        "no specular path: transmitter and receiver on opposite sides of the "
        "reflector plane");
  }
  return distance(image_point(tx, panel), rx);
}

}  // namespace mmreflect
