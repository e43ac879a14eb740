#include "ctrack/simulator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace ctrack {

namespace {

struct AgentFrame {
  Point2 center;
  Size2 size;
  BoxLTRB box() const { return box_from_center_size(center, size); }
};

AgentFrame agent_at(const AgentSpec& a, int frame) {
  const auto& wps = a.waypoints;
  const auto size_of = [&](const Waypoint& w) { return w.size.value_or(a.size); };
  if (frame <= wps.front().frame) return {wps.front().center, size_of(wps.front())};
  if (frame >= wps.back().frame) return {wps.back().center, size_of(wps.back())};
  auto next = std::upper_bound(wps.begin(), wps.end(), frame,
                               [](int f, const Waypoint& w) { return f < w.frame; });
  auto prev = std::prev(next);
  const double t = static_cast<double>(frame - prev->frame) / (next->frame - prev->frame);
  const auto lerp = [t](double a0, double a1) { return a0 + t * (a1 - a0); };
  const Size2 s0 = size_of(*prev);
  const Size2 s1 = size_of(*next);
  return {{lerp(prev->center.x, next->center.x), lerp(prev->center.y, next->center.y)},
          {lerp(s0.w, s1.w), lerp(s0.h, s1.h)}};
}

bool inside(const BoxLTRB& b, int width, int height) {
  return b.left >= 0.0 && b.top >= 0.0 && b.right <= width && b.bottom <= height;
}

// present[a][f - 1]: agent a is in the image at frame f.
std::vector<std::vector<char>> presence(const ScenarioConfig& cfg) {
  std::vector<std::vector<char>> out(cfg.agents.size(), std::vector<char>(cfg.frames, 0));
  for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
    const AgentSpec& spec = cfg.agents[a];
    bool entered = false;
    for (int f = 1; f <= cfg.frames; ++f) {
      if (f < spec.waypoints.front().frame || f > spec.waypoints.back().frame) continue;
      const bool in = inside(agent_at(spec, f).box(), cfg.width, cfg.height);
      if (in) {
        entered = true;
        out[a][f - 1] = 1;
      } else if (entered) {
        break;
      }
    }
  }
  return out;
}

double gauss(std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (frames < 1) throw std::invalid_argument("scenario: frames must be >= 1");
  if (width <= 0 || height <= 0) throw std::invalid_argument("scenario: image size must be positive");
  if (!(confidence_min >= 0.0 && confidence_max <= 1.0 && confidence_min <= confidence_max)) {
    throw std::invalid_argument("scenario: confidence range must lie in [0, 1]");
  }
  for (std::size_t a = 0; a < agents.size(); ++a) {
    const auto& spec = agents[a];
    const std::string who = "scenario: agent " + std::to_string(a + 1);
    if (spec.waypoints.empty()) throw std::invalid_argument(who + " has no waypoints");
    if (spec.size.w < 0.0 || spec.size.h < 0.0) throw std::invalid_argument(who + " has negative size");
    for (std::size_t k = 0; k < spec.waypoints.size(); ++k) {
      const auto& w = spec.waypoints[k];
      if (k > 0 && w.frame <= spec.waypoints[k - 1].frame) {
        throw std::invalid_argument(who + " waypoints must have increasing frames");
      }
      if (w.size && (w.size->w < 0.0 || w.size->h < 0.0)) {
        throw std::invalid_argument(who + " has a negative waypoint size");
      }
    }
  }
}

bool NoiseConfig::is_zero() const {
  return center_sigma == 0.0 && size_sigma == 0.0 && disp_sigma == 0.0 && ts_sigma == 0.0 &&
         iou_pred_bias == 0.0 && fp_rate == 0.0 && fn_rate == 0.0;
}

void NoiseConfig::validate() const {
  if (center_sigma < 0.0 || size_sigma < 0.0 || disp_sigma < 0.0 || ts_sigma < 0.0) {
    throw std::invalid_argument("noise: sigmas must be >= 0");
  }
  if (!(fp_rate >= 0.0 && fp_rate <= 1.0 && fn_rate >= 0.0 && fn_rate <= 1.0)) {
    throw std::invalid_argument("noise: rates must lie in [0, 1]");
  }
}

NoiseConfig NoiseConfig::moderate() {
  NoiseConfig n;
  n.center_sigma = 1.0;
  n.size_sigma = 1.0;
  n.disp_sigma = 2.5;
  n.ts_sigma = 1.5;
  n.iou_pred_bias = -0.2;
  n.fp_rate = 0.1;
  n.fn_rate = 0.05;
  return n;
}

Scenario generate(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto present = presence(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> conf(cfg.confidence_min, cfg.confidence_max);

  Scenario out;
  out.predictions.variant = cfg.variant;
  for (int f = 1; f <= cfg.frames; ++f) {
    FrameDetections frame{f, {}};
    for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
      if (!present[a][f - 1]) continue;
      const AgentSpec& spec = cfg.agents[a];
      const AgentFrame now = agent_at(spec, f);
      const BoxLTRB box = now.box();

      bool occluded = false;
      double covered = 0.0;
      for (std::size_t b = 0; b < cfg.agents.size(); ++b) {
        if (b == a || !present[b][f - 1] || cfg.agents[b].depth <= spec.depth) continue;
        const BoxLTRB other = agent_at(cfg.agents[b], f).box();
        if (iou(box, other) > cfg.occlusion_iou) occluded = true;
        if (box.area() > 0.0) covered = std::max(covered, intersection_area(box, other) / box.area());
      }

      GtEntry g;
      g.frame = f;
      g.track_id = static_cast<int>(a) + 1;
      g.box = box;
      g.class_id = spec.class_id;
      g.visibility = std::clamp(1.0 - covered, 0.0, 1.0);
      out.gt.push_back(g);

      // Drawn for every present agent so occlusion does not shift the stream.
      const double confidence = conf(rng);
      if (occluded) continue;

      const AgentFrame prev = agent_at(spec, f - 1);
      const BoxLTRB prev_box = prev.box();
      Detection d;
      d.frame = f;
      d.center = now.center;
      d.size = now.size;
      d.confidence = confidence;
      d.class_id = spec.class_id;
      d.disp = {now.center.x - prev.center.x, now.center.y - prev.center.y};
      if (cfg.variant == TrackedSizeVariant::wh) {
        d.tracked_size = TrackedSizeWH{now.size.w - prev.size.w, now.size.h - prev.size.h};
      } else {
        d.tracked_size = TrackedSizeLTRB{prev_box.left, prev_box.top, prev_box.right, prev_box.bottom};
      }
      d.iou_pred = iou(prev_box, box);
      frame.detections.push_back(d);
    }
    out.predictions.frames.push_back(std::move(frame));
  }
  return out;
}

PredictionFile perturb(const PredictionFile& oracle, const NoiseConfig& noise, Size2 image,
                       std::uint64_t seed) {
  noise.validate();
  if (noise.is_zero()) return oracle;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PredictionFile out;
  out.variant = oracle.variant;
  for (const auto& frame : oracle.frames) {
    FrameDetections noisy{frame.frame, {}};
    for (Detection d : frame.detections) {
      if (noise.fn_rate > 0.0 && unit(rng) < noise.fn_rate) continue;
      d.center.x += gauss(rng, noise.center_sigma);
      d.center.y += gauss(rng, noise.center_sigma);
      d.size.w = std::max(0.0, d.size.w + gauss(rng, noise.size_sigma));
      d.size.h = std::max(0.0, d.size.h + gauss(rng, noise.size_sigma));
      d.disp.dx += gauss(rng, noise.disp_sigma);
      d.disp.dy += gauss(rng, noise.disp_sigma);
      if (auto* wh = std::get_if<TrackedSizeWH>(&d.tracked_size)) {
        wh->dw += gauss(rng, noise.ts_sigma);
        wh->dh += gauss(rng, noise.ts_sigma);
      } else {
        auto& lt = std::get<TrackedSizeLTRB>(d.tracked_size);
        lt.left += gauss(rng, noise.ts_sigma);
        lt.top += gauss(rng, noise.ts_sigma);
        lt.right += gauss(rng, noise.ts_sigma);
        lt.bottom += gauss(rng, noise.ts_sigma);
      }
      d.iou_pred = std::clamp(d.iou_pred + noise.iou_pred_bias, 0.0, 1.0);
      noisy.detections.push_back(d);
    }
    if (noise.fp_rate > 0.0 && unit(rng) < noise.fp_rate) {
      const double w = 20.0 + 40.0 * unit(rng);
      const double h = std::min(2.5 * w, image.h);
      Detection fp;
      fp.frame = frame.frame;
      fp.size = {std::min(w, image.w), h};
      fp.center = {fp.size.w / 2 + unit(rng) * (image.w - fp.size.w),
                   fp.size.h / 2 + unit(rng) * (image.h - fp.size.h)};
      fp.confidence = 0.3 + 0.7 * unit(rng);
      fp.disp = {gauss(rng, 2.0), gauss(rng, 2.0)};
      if (oracle.variant == TrackedSizeVariant::wh) {
        fp.tracked_size = TrackedSizeWH{};
      } else {
        const BoxLTRB b = box_from_center_size(fp.previous_center(), fp.size);
        fp.tracked_size = TrackedSizeLTRB{b.left, b.top, b.right, b.bottom};
      }
      fp.iou_pred = unit(rng);
      noisy.detections.push_back(fp);
    }
    out.frames.push_back(std::move(noisy));
  }
  return out;
}

ScenarioConfig crossing_scenario(TrackedSizeVariant variant, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.frames = 100;
  cfg.width = 960;
  cfg.height = 544;
  cfg.variant = variant;
  cfg.confidence_min = 0.5;
  cfg.confidence_max = 1.0;
  cfg.seed = seed;

  AgentSpec far;
  far.size = {30.0, 75.0};
  far.depth = 0.0;
  far.waypoints = {{1, {280.0, 300.0}, {}}, {100, {676.0, 300.0}, {}}};

  AgentSpec near;
  near.size = {60.0, 150.0};
  near.depth = 1.0;
  near.waypoints = {{1, {680.0, 300.0}, {}}, {100, {284.0, 300.0}, {}}};

  cfg.agents = {far, near};
  return cfg;
}

ScenarioConfig random_scenario(std::uint64_t seed, int frames) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(2, 5);

  ScenarioConfig cfg;
  cfg.frames = frames;
  cfg.width = 640;
  cfg.height = 480;
  cfg.confidence_min = 0.5;
  cfg.confidence_max = 1.0;
  cfg.seed = seed;
  cfg.variant = unit(rng) < 0.5 ? TrackedSizeVariant::wh : TrackedSizeVariant::ltrb;

  const int n = count(rng);
  for (int a = 0; a < n; ++a) {
    AgentSpec spec;
    const double w = 20.0 + 40.0 * unit(rng);
    spec.size = {w, 2.5 * w};
    spec.depth = unit(rng);
    const Point2 start{spec.size.w / 2 + unit(rng) * (cfg.width - spec.size.w),
                       spec.size.h / 2 + unit(rng) * (cfg.height - spec.size.h)};
    const Point2 velocity{-6.0 + 12.0 * unit(rng), -3.0 + 6.0 * unit(rng)};
    const Size2 end_size{spec.size.w * (0.8 + 0.4 * unit(rng)), spec.size.h * (0.8 + 0.4 * unit(rng))};
    spec.waypoints = {{1, start, spec.size},
                      {frames, {start.x + velocity.x * (frames - 1), start.y + velocity.y * (frames - 1)},
                       end_size}};
    cfg.agents.push_back(spec);
  }
  return cfg;
}

}  // namespace ctrack
