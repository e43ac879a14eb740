#pragma once

#include <vector>

#include "ctrack/geometry.hpp"

namespace ctrack {

/// One detected object in one frame together with the per-object network
/// outputs consumed by association: displacement, tracked size and the
/// predicted adjacent-frame IOU.
struct Detection {
  int frame = 0;
  Point2 center;
  Size2 size;
  double confidence = 0.0;
  int class_id = 1;
  Displacement disp;
  TrackedSize tracked_size = TrackedSizeWH{};
  double iou_pred = 0.0;

  BoxLTRB box() const { return box_from_center_size(center, size); }
  Point2 previous_center() const { return {center.x - disp.dx, center.y - disp.dy}; }

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Previous-frame box regressed for this detection, under whichever
/// parameterization its tracked_size carries.
BoxLTRB tracked_box(const Detection& d);

struct FrameDetections {
  int frame = 0;
  std::vector<Detection> detections;

  friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

}  // namespace ctrack
