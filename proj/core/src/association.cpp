#include "ctrack/association.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace ctrack {

namespace {

AssociationResult single_round(Strategy s, std::span<const Detection> dets,
                               std::span<const Tracklet> tracks, const AssociationOptions& opt) {
  CostMatrix cost;
  switch (s) {
    case Strategy::dis:
      cost = displacement_cost(dets, tracks, opt.threads);
      break;
    case Strategy::iou:
      cost = iou_cost(dets, tracks, opt.variant, opt.filter, opt.threads);
      break;
    case Strategy::combined:
      cost = combine(displacement_cost(dets, tracks, opt.threads),
                     iou_cost(dets, tracks, opt.variant, opt.filter, opt.threads));
      break;
    default:
      throw std::logic_error("single_round: sequential strategy");
  }
  return greedy_match(cost, confidence_order(dets));
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::dis: return "dis";
    case Strategy::iou: return "iou";
    case Strategy::combined: return "combined";
    case Strategy::iou_then_dis: return "iou-dis";
    case Strategy::dis_then_iou: return "dis-iou";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::dis, Strategy::iou, Strategy::combined, Strategy::iou_then_dis,
                     Strategy::dis_then_iou}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(IouFilterForm f) {
  return f == IouFilterForm::rationale ? "rationale" : "cost";
}

std::optional<IouFilterForm> parse_iou_filter_form(std::string_view name) {
  if (name == "rationale") return IouFilterForm::rationale;
  if (name == "cost") return IouFilterForm::cost;
  return std::nullopt;
}

CostMatrix displacement_cost(std::span<const Detection> dets, std::span<const Tracklet> tracks,
                             unsigned threads) {
  CostMatrix cost(dets.size(), tracks.size());
  detail::parallel_for(dets.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Detection& d = dets[i];
      const Point2 back = d.previous_center();
      const double gate = size_gate(d.size);
      for (std::size_t j = 0; j < tracks.size(); ++j) {
        const double dist = distance(back, tracks[j].last_center);
        const bool ok = d.class_id == tracks[j].class_id && dist <= gate;
        cost(i, j) = ok ? dist : CostMatrix::kInadmissible;
      }
    }
  });
  return cost;
}

CostMatrix iou_cost(std::span<const Detection> dets, std::span<const Tracklet> tracks,
                    TrackedSizeVariant variant, IouFilterForm filter, unsigned threads) {
  for (const auto& d : dets) {
    if (variant_of(d.tracked_size) != variant) {
      throw std::invalid_argument("iou_cost: detection tracked-size variant does not match");
    }
  }
  CostMatrix cost(dets.size(), tracks.size());
  detail::parallel_for(dets.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Detection& d = dets[i];
      const BoxLTRB tb = tracked_box(d);
      for (std::size_t j = 0; j < tracks.size(); ++j) {
        const double overlap = iou(tracks[j].last_box, tb);
        const double c = 1.0 - overlap;
        const bool filtered = filter == IouFilterForm::rationale ? overlap < d.iou_pred : c > d.iou_pred;
        const bool ok = d.class_id == tracks[j].class_id && overlap > 0.0 && !filtered;
        cost(i, j) = ok ? c : CostMatrix::kInadmissible;
      }
    }
  });
  return cost;
}

CostMatrix combine(const CostMatrix& a, const CostMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("combine: cost matrix dimensions differ");
  }
  CostMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a.admissible(i, j) && b.admissible(i, j) ? a(i, j) + b(i, j)
                                                           : CostMatrix::kInadmissible;
    }
  }
  return out;
}

std::vector<std::size_t> confidence_order(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });
  return order;
}

AssociationResult greedy_match(const CostMatrix& cost, std::span<const std::size_t> det_order) {
  if (det_order.size() != cost.rows()) {
    throw std::invalid_argument("greedy_match: order must be a permutation of detection indices");
  }
  std::vector<char> det_seen(cost.rows(), 0);
  std::vector<char> track_taken(cost.cols(), 0);
  AssociationResult result;

  for (std::size_t i : det_order) {
    if (i >= cost.rows() || det_seen[i]) {
      throw std::invalid_argument("greedy_match: order must be a permutation of detection indices");
    }
    det_seen[i] = 1;
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (track_taken[j] || !cost.admissible(i, j)) continue;
      if (!best || cost(i, j) < cost(i, *best)) best = j;
    }
    if (best) {
      track_taken[*best] = 1;
      result.matches.push_back({i, *best});
    } else {
      result.unmatched_detections.push_back(i);
    }
  }
  std::sort(result.unmatched_detections.begin(), result.unmatched_detections.end());
  for (std::size_t j = 0; j < cost.cols(); ++j) {
    if (!track_taken[j]) result.unmatched_tracklets.push_back(j);
  }
  return result;
}

AssociationResult associate(Strategy strategy, std::span<const Detection> dets,
                            std::span<const Tracklet> tracks, const AssociationOptions& options) {
  if (strategy != Strategy::iou_then_dis && strategy != Strategy::dis_then_iou) {
    return single_round(strategy, dets, tracks, options);
  }
  const Strategy first = strategy == Strategy::iou_then_dis ? Strategy::iou : Strategy::dis;
  const Strategy second = strategy == Strategy::iou_then_dis ? Strategy::dis : Strategy::iou;

  AssociationResult round1 = single_round(first, dets, tracks, options);

  std::vector<Detection> rest_dets;
  std::vector<Tracklet> rest_tracks;
  for (std::size_t i : round1.unmatched_detections) rest_dets.push_back(dets[i]);
  for (std::size_t j : round1.unmatched_tracklets) rest_tracks.push_back(tracks[j]);
  const AssociationResult round2 = single_round(second, rest_dets, rest_tracks, options);

  AssociationResult result;
  result.matches = std::move(round1.matches);
  for (const Match& m : round2.matches) {
    result.matches.push_back({round1.unmatched_detections[m.detection],
                              round1.unmatched_tracklets[m.tracklet]});
  }
  for (std::size_t i : round2.unmatched_detections) {
    result.unmatched_detections.push_back(round1.unmatched_detections[i]);
  }
  for (std::size_t j : round2.unmatched_tracklets) {
    result.unmatched_tracklets.push_back(round1.unmatched_tracklets[j]);
  }
  return result;
}

}  // namespace ctrack
