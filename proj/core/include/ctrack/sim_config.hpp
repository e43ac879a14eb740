#pragma once

#include <iosfwd>

#include "ctrack/simulator.hpp"

namespace ctrack {

struct SimulationConfig {
  ScenarioConfig scenario;
  NoiseConfig noise;
};

/// Flat key = value text, one entry per line, '#' starts a comment.
///
///   frames = 100            width = 960          height = 544
///   variant = ltrb|wh       occlusion_iou = 0.7  seed = 1
///   confidence_min = 0.5    confidence_max = 1.0
///   noise.center, noise.size, noise.disp, noise.ts  (Gaussian sigmas, px)
///   noise.iou_bias, noise.fp_rate, noise.fn_rate
///   agent = <w> <h> <depth> <frame>:<x>:<y>[:<w>:<h>] ...
///
/// Each `agent` line adds one agent; its waypoints are whitespace separated.
/// Throws ParseError naming the line on malformed input.
SimulationConfig parse_sim_config(std::istream& in);

}  // namespace ctrack
