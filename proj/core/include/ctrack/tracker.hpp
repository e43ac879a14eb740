#pragma once

#include <span>
#include <vector>

#include "ctrack/association.hpp"
#include "ctrack/detection.hpp"
#include "ctrack/io.hpp"
#include "ctrack/tracklet.hpp"

namespace ctrack {

struct TrackerConfig {
  Strategy strategy = Strategy::iou;
  TrackedSizeVariant variant = TrackedSizeVariant::ltrb;
  int lifetime = 30;               // unmatched frames before a tracklet is retired
  double out_threshold = 0.4;      // detections must score strictly above this
  double render_threshold = 0.5;   // prior-heatmap rendering threshold
  IouFilterForm iou_filter_form = IouFilterForm::rationale;
  unsigned threads = 1;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct TrackerState {
  std::vector<Tracklet> live;
  int next_id = 1;
  int frame_index = 0;  // last processed frame
};

struct StepStats {
  int matched = 0;
  int spawned = 0;
  int retired = 0;
};

/// Advances the state by one frame. Every detection must belong to frame
/// state.frame_index + 1. Emits one record per matched or newly spawned
/// tracklet, ordered by track id.
std::vector<TrackRecord> step(TrackerState& state, std::span<const Detection> dets,
                              const TrackerConfig& cfg, StepStats* stats = nullptr);

struct SequenceStats {
  int frames = 0;
  int detections = 0;  // after the confidence threshold
  int spawned = 0;
};

/// Folds step over consecutive frames starting from an empty state,
/// dropping detections at or below cfg.out_threshold first. Throws
/// std::invalid_argument on non-contiguous frame numbers.
std::vector<TrackRecord> run_sequence(std::span<const FrameDetections> frames, const TrackerConfig& cfg,
                                      SequenceStats* stats = nullptr);

}  // namespace ctrack
