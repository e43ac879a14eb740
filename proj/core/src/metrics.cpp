#include "ctrack/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ctrack/assignment.hpp"

namespace ctrack {

namespace {

struct Obj {
  int id = 0;
  BoxLTRB box;
};

struct Frames {
  std::map<int, std::vector<Obj>> gt;
  std::map<int, std::vector<Obj>> hyp;
  long num_gt = 0;
  long num_hyp = 0;
};

Frames group(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp) {
  Frames f;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : gt) {
    if (!e.consider) continue;
    if (!seen.emplace(e.frame, e.track_id).second) {
      throw std::invalid_argument("metrics: duplicate GT (frame " + std::to_string(e.frame) + ", id " +
                                  std::to_string(e.track_id) + ")");
    }
    f.gt[e.frame].push_back({e.track_id, e.box});
    ++f.num_gt;
  }
  seen.clear();
  for (const auto& r : hyp) {
    if (!seen.emplace(r.frame, r.track_id).second) {
      throw std::invalid_argument("metrics: duplicate hypothesis (frame " + std::to_string(r.frame) +
                                  ", id " + std::to_string(r.track_id) + ")");
    }
    f.hyp[r.frame].push_back({r.track_id, r.box});
    ++f.num_hyp;
  }
  // Canonical per-frame order makes the result independent of input order.
  const auto by_id = [](const Obj& a, const Obj& b) { return a.id < b.id; };
  for (auto& [_, v] : f.gt) std::sort(v.begin(), v.end(), by_id);
  for (auto& [_, v] : f.hyp) std::sort(v.begin(), v.end(), by_id);
  return f;
}

}  // namespace

ClearResult clear_mot(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp,
                      double iou_thresh) {
  const Frames f = group(gt, hyp);
  if (f.num_gt == 0) throw MetricDomainError("clear_mot: no ground truth, MOTA is undefined");

  ClearResult res;
  res.num_gt = f.num_gt;
  res.num_hyp = f.num_hyp;

  std::set<int> frames;
  for (const auto& [k, _] : f.gt) frames.insert(k);
  for (const auto& [k, _] : f.hyp) frames.insert(k);

  std::map<int, int> prev_pairs;  // gt id -> hyp id, previous frame only
  std::map<int, int> last_match;  // gt id -> most recent hyp id
  static const std::vector<Obj> none;

  for (int frame : frames) {
    const auto git = f.gt.find(frame);
    const auto hit = f.hyp.find(frame);
    const auto& gts = git == f.gt.end() ? none : git->second;
    const auto& hyps = hit == f.hyp.end() ? none : hit->second;

    std::vector<int> g_match(gts.size(), -1);
    std::vector<char> h_used(hyps.size(), 0);

    for (std::size_t g = 0; g < gts.size(); ++g) {
      const auto prev = prev_pairs.find(gts[g].id);
      if (prev == prev_pairs.end()) continue;
      for (std::size_t h = 0; h < hyps.size(); ++h) {
        if (hyps[h].id != prev->second || h_used[h]) continue;
        if (iou(gts[g].box, hyps[h].box) >= iou_thresh) {
          g_match[g] = static_cast<int>(h);
          h_used[h] = 1;
        }
        break;
      }
    }

    std::vector<std::size_t> free_g, free_h;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (g_match[g] < 0) free_g.push_back(g);
    }
    for (std::size_t h = 0; h < hyps.size(); ++h) {
      if (!h_used[h]) free_h.push_back(h);
    }
    AssignmentProblem prob{free_g.size(), free_h.size(), {}};
    prob.cost.reserve(free_g.size() * free_h.size());
    for (std::size_t g : free_g) {
      for (std::size_t h : free_h) {
        const double o = iou(gts[g].box, hyps[h].box);
        prob.cost.push_back(o >= iou_thresh ? 1.0 - o : kForbidden);
      }
    }
    for (const auto& [r, c] : solve_assignment(prob)) {
      g_match[free_g[r]] = static_cast<int>(free_h[c]);
      h_used[free_h[c]] = 1;
    }

    prev_pairs.clear();
    long matched = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (g_match[g] < 0) {
        ++res.fn;
        continue;
      }
      const int hid = hyps[static_cast<std::size_t>(g_match[g])].id;
      const auto last = last_match.find(gts[g].id);
      if (last != last_match.end() && last->second != hid) ++res.ids;
      last_match[gts[g].id] = hid;
      prev_pairs[gts[g].id] = hid;
      ++matched;
    }
    res.matches += matched;
    res.fp += static_cast<long>(hyps.size()) - matched;
  }

  res.mota = 1.0 - static_cast<double>(res.fp + res.fn + res.ids) / static_cast<double>(res.num_gt);
  return res;
}

IdResult idf1(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp, double iou_thresh) {
  const Frames f = group(gt, hyp);
  IdResult res;
  if (f.num_gt == 0 && f.num_hyp == 0) {
    res.idf1 = 1.0;
    return res;
  }

  std::map<int, std::size_t> gt_index, hyp_index;
  for (const auto& [_, v] : f.gt) {
    for (const auto& o : v) gt_index.emplace(o.id, 0);
  }
  for (const auto& [_, v] : f.hyp) {
    for (const auto& o : v) hyp_index.emplace(o.id, 0);
  }
  std::size_t k = 0;
  for (auto& [_, idx] : gt_index) idx = k++;
  k = 0;
  for (auto& [_, idx] : hyp_index) idx = k++;

  const std::size_t ng = gt_index.size();
  const std::size_t nh = hyp_index.size();
  std::vector<long> overlap(ng * nh, 0);
  for (const auto& [frame, gts] : f.gt) {
    const auto hit = f.hyp.find(frame);
    if (hit == f.hyp.end()) continue;
    for (const auto& g : gts) {
      for (const auto& h : hit->second) {
        if (iou(g.box, h.box) >= iou_thresh) ++overlap[gt_index[g.id] * nh + hyp_index[h.id]];
      }
    }
  }

  // Every pair is allowed (zero overlap costs 0), so a full-cardinality
  // minimum of -overlap is a maximum-weight partial assignment.
  AssignmentProblem prob{ng, nh, std::vector<double>(ng * nh, 0.0)};
  for (std::size_t i = 0; i < ng * nh; ++i) prob.cost[i] = -static_cast<double>(overlap[i]);
  long idtp = 0;
  for (const auto& [g, h] : solve_assignment(prob)) idtp += overlap[g * nh + h];

  res.idtp = idtp;
  res.idfn = f.num_gt - idtp;
  res.idfp = f.num_hyp - idtp;
  const double denom = 2.0 * static_cast<double>(idtp) + static_cast<double>(res.idfp + res.idfn);
  res.idf1 = denom > 0.0 ? 2.0 * static_cast<double>(idtp) / denom : 0.0;
  return res;
}

}  // namespace ctrack
