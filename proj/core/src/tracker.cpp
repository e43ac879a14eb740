#include "ctrack/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctrack {

void TrackerConfig::validate() const {
  if (lifetime < 1) throw std::invalid_argument("tracker: lifetime must be >= 1");
  if (!(out_threshold >= 0.0 && out_threshold <= 1.0)) {
    throw std::invalid_argument("tracker: out_threshold must be in [0, 1]");
  }
  if (!(render_threshold >= 0.0 && render_threshold <= 1.0)) {
    throw std::invalid_argument("tracker: render_threshold must be in [0, 1]");
  }
}

std::vector<TrackRecord> step(TrackerState& state, std::span<const Detection> dets,
                              const TrackerConfig& cfg, StepStats* stats) {
  const int frame = state.frame_index + 1;
  for (const auto& d : dets) {
    if (d.frame != frame) {
      throw std::invalid_argument("step: detection for frame " + std::to_string(d.frame) +
                                  " while processing frame " + std::to_string(frame));
    }
  }

  const AssociationOptions options{cfg.variant, cfg.iou_filter_form, cfg.threads};
  const AssociationResult assoc = associate(cfg.strategy, dets, state.live, options);

  StepStats local;
  std::vector<TrackRecord> records;
  std::vector<char> matched(state.live.size(), 0);
  for (const Match& m : assoc.matches) {
    const Detection& d = dets[m.detection];
    Tracklet& t = state.live[m.tracklet];
    t.last_center = d.center;
    t.last_box = d.box();
    t.last_confidence = d.confidence;
    t.age = 0;
    matched[m.tracklet] = 1;
    records.push_back({frame, t.track_id, t.last_box, d.confidence});
    ++local.matched;
  }

  std::vector<Tracklet> next;
  next.reserve(state.live.size() + assoc.unmatched_detections.size());
  for (std::size_t j = 0; j < state.live.size(); ++j) {
    Tracklet t = state.live[j];
    if (!matched[j] && ++t.age >= cfg.lifetime) {
      ++local.retired;
      continue;
    }
    next.push_back(t);
  }
  for (std::size_t i : assoc.unmatched_detections) {
    const Detection& d = dets[i];
    Tracklet t{state.next_id++, d.center, d.box(), d.class_id, d.confidence, 0};
    records.push_back({frame, t.track_id, t.last_box, d.confidence});
    next.push_back(t);
    ++local.spawned;
  }

  state.live = std::move(next);
  state.frame_index = frame;
  std::sort(records.begin(), records.end(),
            [](const TrackRecord& a, const TrackRecord& b) { return a.track_id < b.track_id; });
  if (stats) *stats = local;
  return records;
}

std::vector<TrackRecord> run_sequence(std::span<const FrameDetections> frames, const TrackerConfig& cfg,
                                      SequenceStats* stats) {
  cfg.validate();
  SequenceStats local;
  std::vector<TrackRecord> out;
  if (frames.empty()) {
    if (stats) *stats = local;
    return out;
  }
  for (std::size_t k = 1; k < frames.size(); ++k) {
    if (frames[k].frame != frames[k - 1].frame + 1) {
      throw std::invalid_argument("run_sequence: frame " + std::to_string(frames[k].frame) +
                                  " does not follow frame " + std::to_string(frames[k - 1].frame));
    }
  }

  TrackerState state;
  state.frame_index = frames.front().frame - 1;
  std::vector<Detection> kept;
  for (const auto& f : frames) {
    kept.clear();
    for (const auto& d : f.detections) {
      if (d.confidence > cfg.out_threshold) {
        kept.push_back(d);
        kept.back().frame = f.frame;
      }
    }
    StepStats s;
    auto records = step(state, kept, cfg, &s);
    out.insert(out.end(), records.begin(), records.end());
    ++local.frames;
    local.detections += static_cast<int>(kept.size());
    local.spawned += s.spawned;
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace ctrack
