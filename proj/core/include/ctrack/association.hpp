#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ctrack/detection.hpp"
#include "ctrack/geometry.hpp"
#include "ctrack/tracklet.hpp"

namespace ctrack {

/// Detections (rows) x tracklets (cols). Finite cells are non-negative
/// costs; kInadmissible marks a pair that must never be matched.
class CostMatrix {
 public:
  static constexpr double kInadmissible = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

  bool admissible(std::size_t r, std::size_t c) const { return (*this)(r, c) != kInadmissible; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

enum class Strategy { dis, iou, combined, iou_then_dis, dis_then_iou };

/// CLI names: dis, iou, combined, iou-dis, dis-iou.
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// How the predicted adjacent-frame IOU gates an IOU pair.
///   rationale: inadmissible when IOU(last box, tracked box) < predicted IOU
///   cost:      inadmissible when 1 - IOU > predicted IOU
enum class IouFilterForm { rationale, cost };

std::string_view to_string(IouFilterForm f);
std::optional<IouFilterForm> parse_iou_filter_form(std::string_view name);

struct AssociationOptions {
  TrackedSizeVariant variant = TrackedSizeVariant::ltrb;
  IouFilterForm filter = IouFilterForm::rationale;
  unsigned threads = 1;  // cost-matrix construction only
};

struct Match {
  std::size_t detection = 0;
  std::size_t tracklet = 0;

  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match&, const Match&) = default;
};

struct AssociationResult {
  std::vector<Match> matches;
  std::vector<std::size_t> unmatched_detections;  // ascending
  std::vector<std::size_t> unmatched_tracklets;   // ascending
};

/// Distance from each detection's back-projected center (center - disp) to
/// each tracklet's last center. Inadmissible beyond size_gate(det.size) or
/// across classes.
CostMatrix displacement_cost(std::span<const Detection> dets, std::span<const Tracklet> tracks,
                             unsigned threads = 1);

/// 1 - IOU(last box, tracked box). Inadmissible when the IOU is 0, the
/// classes differ, or the predicted-IOU filter rejects the pair. Throws
/// std::invalid_argument if a detection carries the other tracked-size
/// variant.
CostMatrix iou_cost(std::span<const Detection> dets, std::span<const Tracklet> tracks,
                    TrackedSizeVariant variant, IouFilterForm filter = IouFilterForm::rationale,
                    unsigned threads = 1);

/// Cellwise sum; inadmissible if either side is.
CostMatrix combine(const CostMatrix& a, const CostMatrix& b);

/// Detection indices by descending confidence, ties by ascending index.
std::vector<std::size_t> confidence_order(std::span<const Detection> dets);

/// Walks detections in det_order; each takes the cheapest admissible
/// unmatched tracklet (ties to the lowest tracklet index).
AssociationResult greedy_match(const CostMatrix& cost, std::span<const std::size_t> det_order);

/// Runs one greedy round for DIS/IOU/COMBINED; the sequential strategies run
/// a second round, on the other matrix, over the first round's leftovers.
AssociationResult associate(Strategy strategy, std::span<const Detection> dets,
                            std::span<const Tracklet> tracks, const AssociationOptions& options = {});

}  // namespace ctrack
