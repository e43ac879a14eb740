#pragma once

#include <cmath>
#include <variant>

namespace ctrack {

// Image convention throughout: x grows rightward, y grows downward, so a
// box's top edge has the smaller y.

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Size2 {
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const Size2&, const Size2&) = default;
};

struct BoxLTRB {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  double width() const { return right - left; }
  double height() const { return bottom - top; }
  double area() const { return width() * height(); }
  Point2 center() const { return {0.5 * (left + right), 0.5 * (top + bottom)}; }
  Size2 size() const { return {width(), height()}; }

  friend bool operator==(const BoxLTRB&, const BoxLTRB&) = default;
};

/// Center displacement D = p(t) - p(t-1); the previous center is p(t) - D.
struct Displacement {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Width/height change of an object between frames, s(t) - s(t-1).
struct TrackedSizeWH {
  double dw = 0.0;
  double dh = 0.0;

  friend bool operator==(const TrackedSizeWH&, const TrackedSizeWH&) = default;
};

/// Absolute previous-frame box edges regressed from the current frame.
/// Either vertical ordering is accepted; tracked_box_ltrb normalizes it.
struct TrackedSizeLTRB {
  double left = 0.0;
  double top = 0.0;
  double right = 0.0;
  double bottom = 0.0;

  friend bool operator==(const TrackedSizeLTRB&, const TrackedSizeLTRB&) = default;
};

enum class TrackedSizeVariant { wh, ltrb };

using TrackedSize = std::variant<TrackedSizeWH, TrackedSizeLTRB>;

TrackedSizeVariant variant_of(const TrackedSize& ts);
const char* to_string(TrackedSizeVariant v);

/// Area of the overlap of two boxes; 0 when they do not intersect.
double intersection_area(const BoxLTRB& a, const BoxLTRB& b);

/// Intersection over union. Returns 0 when the union has zero area.
double iou(const BoxLTRB& a, const BoxLTRB& b);

BoxLTRB box_from_center_size(Point2 c, Size2 s);

/// Previous-frame box under the width/height parameterization: centered at
/// det_center - disp with size det_size - ts, negative sizes clamped to 0.
BoxLTRB tracked_box_wh(Point2 det_center, Size2 det_size, Displacement disp,
                       TrackedSizeWH ts);

BoxLTRB tracked_box_ltrb(const TrackedSizeLTRB& ts);

/// Admissibility radius for displacement matching: sqrt(w * h).
double size_gate(Size2 s);

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace ctrack
