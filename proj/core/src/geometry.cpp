#include "ctrack/geometry.hpp"

#include "ctrack/detection.hpp"

#include <algorithm>

namespace ctrack {

TrackedSizeVariant variant_of(const TrackedSize& ts) {
  return std::holds_alternative<TrackedSizeWH>(ts) ? TrackedSizeVariant::wh
                                                   : TrackedSizeVariant::ltrb;
}

const char* to_string(TrackedSizeVariant v) {
  return v == TrackedSizeVariant::wh ? "wh" : "ltrb";
}

double intersection_area(const BoxLTRB& a, const BoxLTRB& b) {
  const double w = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double h = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double iou(const BoxLTRB& a, const BoxLTRB& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

BoxLTRB box_from_center_size(Point2 c, Size2 s) {
  const double hw = 0.5 * s.w;
  const double hh = 0.5 * s.h;
  return {c.x - hw, c.y - hh, c.x + hw, c.y + hh};
}

BoxLTRB tracked_box_wh(Point2 det_center, Size2 det_size, Displacement disp,
                       TrackedSizeWH ts) {
  const Point2 prev_center{det_center.x - disp.dx, det_center.y - disp.dy};
  const Size2 prev_size{std::max(0.0, det_size.w - ts.dw),
                        std::max(0.0, det_size.h - ts.dh)};
  return box_from_center_size(prev_center, prev_size);
}

BoxLTRB tracked_box_ltrb(const TrackedSizeLTRB& ts) {
  return {std::min(ts.left, ts.right), std::min(ts.top, ts.bottom),
          std::max(ts.left, ts.right), std::max(ts.top, ts.bottom)};
}

double size_gate(Size2 s) { return std::sqrt(std::max(0.0, s.w) * std::max(0.0, s.h)); }

BoxLTRB tracked_box(const Detection& d) {
  if (const auto* wh = std::get_if<TrackedSizeWH>(&d.tracked_size)) {
    return tracked_box_wh(d.center, d.size, d.disp, *wh);
  }
  return tracked_box_ltrb(std::get<TrackedSizeLTRB>(d.tracked_size));
}

}  // namespace ctrack
