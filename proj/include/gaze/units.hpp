#pragma once

#include "gaze/geometry.hpp"

namespace gaze {

// The 39-pixel maze spans 14 degrees of visual angle on the subject's
// display. Degree coordinates are centered on the maze; pixel coordinates
// run 0..side-1.
inline constexpr double kMazeDegExtent = 14.0;
inline constexpr double kMazePxExtent = 39.0;
inline constexpr double kDegPerPx = kMazeDegExtent / kMazePxExtent;

inline double maze_center_px(int image_side) { return (image_side - 1) / 2.0; }

inline Vec2 px_to_deg(const Vec2& p, int image_side = 39) {
  const double c = maze_center_px(image_side);
  return {(p.x - c) * kDegPerPx, (p.y - c) * kDegPerPx};
}

inline Vec2 deg_to_px(const Vec2& p, int image_side = 39) {
  const double c = maze_center_px(image_side);
  return {p.x / kDegPerPx + c, p.y / kDegPerPx + c};
}

// Displacements carry no center offset.
inline double deg_to_px_scale() { return 1.0 / kDegPerPx; }
inline double px_to_deg_scale() { return kDegPerPx; }

}  // namespace gaze
