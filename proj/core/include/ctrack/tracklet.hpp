#pragma once

#include "ctrack/geometry.hpp"

namespace ctrack {

/// A live identity. While unmatched its last state stays frozen; there is no
/// motion model.
struct Tracklet {
  int track_id = 0;
  Point2 last_center;
  BoxLTRB last_box;
  int class_id = 1;
  double last_confidence = 0.0;
  int age = 0;  // frames since last match, 0 = matched this frame

  friend bool operator==(const Tracklet&, const Tracklet&) = default;
};

}  // namespace ctrack
