#pragma once

#include <functional>
#include <vector>

#include "ctrack/dense_map.hpp"
#include "ctrack/geometry.hpp"

namespace ctrack {

struct FocalParams {
  double alpha = 2.0;
  double beta = 4.0;
};

inline constexpr double kFocalEpsilon = 1e-7;

/// One annotated object across a pair of frames. Centers are in input
/// pixels; prediction maps are sampled at floor(center / downsample).
struct GtObject {
  Point2 center;
  Size2 size;
  Point2 prev_center;
  BoxLTRB prev_box;
  BoxLTRB box;
};

struct GtAnnotations {
  std::vector<GtObject> objects;
  int downsample = 4;
};

/// Sign convention of the width/height tracked-size target.
enum class TrackedSizeSign {
  previous_minus_current,  // s(t-1) - s(t)
  current_minus_previous,  // s(t) - s(t-1)
};

/// Penalty-reduced pixelwise focal loss, normalized by n_objects and negated
/// so that it is non-negative. Predictions are clamped to [eps, 1 - eps].
double focal_loss(const DenseMap& pred, const DenseMap& gt, const FocalParams& params, int n_objects);

/// Analytic d(focal_loss)/d(pred), zero where the clamp is active.
DenseMap focal_loss_gradient(const DenseMap& pred, const DenseMap& gt, const FocalParams& params,
                             int n_objects);

// L1 regression objectives: mean over objects of the summed absolute
// componentwise error at each object's center cell.
double l1_size_loss(const DenseMap& pred_size, const GtAnnotations& gt);
double l1_offset_loss(const DenseMap& pred_disp, const GtAnnotations& gt);
double l1_tracked_size_wh_loss(const DenseMap& pred_ts, const GtAnnotations& gt,
                               TrackedSizeSign sign = TrackedSizeSign::previous_minus_current);
double l1_tracked_size_ltrb_loss(const DenseMap& pred_ts, const GtAnnotations& gt);
double l1_iou_loss(const DenseMap& pred_iou, const GtAnnotations& gt);

using MapFunction = std::function<double(const DenseMap&)>;

/// Central differences (f(x + eps e) - f(x - eps e)) / (2 eps) per cell.
DenseMap finite_diff_grad(const MapFunction& f, const DenseMap& point, double eps);

struct GradientCheckReport {
  int points = 0;
  double max_relative_error = 0.0;
};

/// Compares focal_loss_gradient with finite_diff_grad at random interior
/// points. Relative error is |a - n| / max(|a|, |n|, 1e-12).
GradientCheckReport check_focal_gradient(int points, unsigned seed, double eps = 1e-5);

}  // namespace ctrack
