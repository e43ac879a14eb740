#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctrack/detection.hpp"
#include "ctrack/geometry.hpp"
#include "ctrack/io.hpp"

namespace ctrack {

struct Waypoint {
  int frame = 1;
  Point2 center;
  std::optional<Size2> size;  // falls back to the agent's size
};

/// A pedestrian moving piecewise-linearly between waypoints. It exists from
/// its first to its last waypoint frame and is visible while its whole box
/// lies inside the image; once it has left the image it never returns.
struct AgentSpec {
  std::vector<Waypoint> waypoints;
  Size2 size{40.0, 100.0};
  double depth = 0.0;  // larger is nearer to the camera
  int class_id = 1;
};

struct ScenarioConfig {
  int frames = 100;
  int width = 960;
  int height = 544;
  std::vector<AgentSpec> agents;
  TrackedSizeVariant variant = TrackedSizeVariant::ltrb;
  double occlusion_iou = 0.7;
  double confidence_min = 0.9;  // oracle confidences are uniform in [min, max]
  double confidence_max = 0.9;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

struct NoiseConfig {
  double center_sigma = 0.0;
  double size_sigma = 0.0;
  double disp_sigma = 0.0;
  double ts_sigma = 0.0;
  double iou_pred_bias = 0.0;
  double fp_rate = 0.0;  // probability of one injected false detection per frame
  double fn_rate = 0.0;  // probability of dropping each detection

  bool is_zero() const;
  void validate() const;

  /// Noise level used by the crossing benchmark.
  static NoiseConfig moderate();
};

struct Scenario {
  std::vector<GtEntry> gt;
  PredictionFile predictions;  // every frame 1..frames, possibly empty
};

/// Ground truth plus oracle predictions: exact displacement, tracked size
/// for cfg.variant, and predicted IOU equal to the true adjacent-frame IOU.
/// Occluded agents (IOU above cfg.occlusion_iou with a nearer agent) keep
/// their GT row but produce no detection.
Scenario generate(const ScenarioConfig& cfg);

/// Gaussian noise on every predicted channel, predicted-IOU bias, random
/// drops and injected false positives. Zero noise returns the input
/// unchanged.
PredictionFile perturb(const PredictionFile& oracle, const NoiseConfig& noise, Size2 image,
                       std::uint64_t seed);

/// Two pedestrians at different depths walking through each other: a small
/// far agent and a large near one whose centers pass within a few pixels.
ScenarioConfig crossing_scenario(TrackedSizeVariant variant, std::uint64_t seed);

/// Random scene for property tests: a few agents on random straight paths,
/// some of which leave the image.
ScenarioConfig random_scenario(std::uint64_t seed, int frames = 40);

}  // namespace ctrack
