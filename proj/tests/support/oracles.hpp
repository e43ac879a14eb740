#pragma once

// Brute-force reference implementations. Deliberately written along a
// different path than the library code they check.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ctrack/association.hpp"
#include "ctrack/io.hpp"

namespace ctrack::oracle {

struct PixelAreas {
  long intersection = 0;
  long uni = 0;
};

// Rasterizes integer boxes onto unit pixels [x, x+1) x [y, y+1).
inline PixelAreas raster_areas(int al, int at, int ar, int ab, int bl, int bt, int br, int bb) {
  PixelAreas out;
  const int lo_x = std::min(al, bl), hi_x = std::max(ar, br);
  const int lo_y = std::min(at, bt), hi_y = std::max(ab, bb);
  for (int y = lo_y; y < hi_y; ++y) {
    for (int x = lo_x; x < hi_x; ++x) {
      const bool in_a = x >= al && x < ar && y >= at && y < ab;
      const bool in_b = x >= bl && x < br && y >= bt && y < bb;
      out.intersection += in_a && in_b;
      out.uni += in_a || in_b;
    }
  }
  return out;
}

// Greedy rule traced by sorting each detection's candidates.
inline std::vector<std::pair<std::size_t, std::size_t>> greedy_trace(
    const CostMatrix& cost, const std::vector<std::size_t>& order) {
  std::set<std::size_t> taken;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i : order) {
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (taken.count(j) == 0 && cost(i, j) != CostMatrix::kInadmissible) {
        candidates.emplace_back(cost(i, j), j);
      }
    }
    if (candidates.empty()) continue;
    std::sort(candidates.begin(), candidates.end());
    taken.insert(candidates.front().second);
    out.emplace_back(i, candidates.front().second);
  }
  return out;
}

// Exhaustive minimum-cost maximum-cardinality assignment.
inline std::pair<std::size_t, double> brute_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  const std::size_t cols = rows == 0 ? 0 : cost[0].size();
  std::size_t best_card = 0;
  double best_cost = 0.0;
  std::vector<char> used(cols, 0);
  std::function<void(std::size_t, std::size_t, double)> rec = [&](std::size_t r, std::size_t card, double c) {
    if (r == rows) {
      if (card > best_card || (card == best_card && c < best_cost)) {
        best_card = card;
        best_cost = c;
      }
      return;
    }
    rec(r + 1, card, c);
    for (std::size_t j = 0; j < cols; ++j) {
      if (used[j] || cost[r][j] == std::numeric_limits<double>::infinity()) continue;
      used[j] = 1;
      rec(r + 1, card + 1, c + cost[r][j]);
      used[j] = 0;
    }
  };
  rec(0, 0, 0.0);
  return {best_card, best_cost};
}

// IDTP by enumerating every injective partial map GT track -> hyp track and
// counting matching frames straight from the rows.
inline long brute_idtp(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp, double thresh) {
  std::vector<int> gids, hids;
  for (const auto& g : gt) {
    if (g.consider && std::find(gids.begin(), gids.end(), g.track_id) == gids.end()) gids.push_back(g.track_id);
  }
  for (const auto& h : hyp) {
    if (std::find(hids.begin(), hids.end(), h.track_id) == hids.end()) hids.push_back(h.track_id);
  }
  const auto count = [&](int gid, int hid) {
    long n = 0;
    for (const auto& g : gt) {
      if (!g.consider || g.track_id != gid) continue;
      for (const auto& h : hyp) {
        if (h.track_id == hid && h.frame == g.frame && iou(g.box, h.box) >= thresh) ++n;
      }
    }
    return n;
  };
  long best = 0;
  std::vector<char> used(hids.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t k, long acc) {
    if (k == gids.size()) {
      best = std::max(best, acc);
      return;
    }
    rec(k + 1, acc);
    for (std::size_t j = 0; j < hids.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      rec(k + 1, acc + count(gids[k], hids[j]));
      used[j] = 0;
    }
  };
  rec(0, 0);
  return best;
}

struct BruteClear {
  long fp = 0, fn = 0, ids = 0, num_gt = 0;
};

// CLEAR counts with every frame's assignment found by exhaustive search.
inline BruteClear brute_clear(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp, double thresh) {
  BruteClear out;
  std::set<int> frames;
  for (const auto& g : gt) {
    if (g.consider) frames.insert(g.frame);
  }
  for (const auto& h : hyp) frames.insert(h.frame);
  std::map<int, int> prev, last;
  for (int f : frames) {
    std::vector<GtEntry> gs;
    std::vector<TrackRecord> hs;
    for (const auto& g : gt) {
      if (g.consider && g.frame == f) gs.push_back(g);
    }
    for (const auto& h : hyp) {
      if (h.frame == f) hs.push_back(h);
    }
    out.num_gt += static_cast<long>(gs.size());
    std::vector<int> gm(gs.size(), -1);
    std::vector<char> hu(hs.size(), 0);
    for (std::size_t g = 0; g < gs.size(); ++g) {
      auto p = prev.find(gs[g].track_id);
      if (p == prev.end()) continue;
      for (std::size_t h = 0; h < hs.size(); ++h) {
        if (hs[h].track_id == p->second && iou(gs[g].box, hs[h].box) >= thresh) {
          gm[g] = static_cast<int>(h);
          hu[h] = 1;
        }
      }
    }
    // Exhaustive search over the remaining pairs.
    std::vector<int> best = gm, cur = gm;
    std::size_t best_card = 0;
    double best_cost = 0.0;
    std::vector<char> used = hu;
    std::function<void(std::size_t, std::size_t, double)> rec = [&](std::size_t g, std::size_t card, double c) {
      if (g == gs.size()) {
        if (card > best_card || (card == best_card && c < best_cost)) {
          best_card = card;
          best_cost = c;
          best = cur;
        }
        return;
      }
      if (gm[g] >= 0) {
        rec(g + 1, card, c);
        return;
      }
      rec(g + 1, card, c);
      for (std::size_t h = 0; h < hs.size(); ++h) {
        const double o = iou(gs[g].box, hs[h].box);
        if (used[h] || o < thresh) continue;
        used[h] = 1;
        cur[g] = static_cast<int>(h);
        rec(g + 1, card + 1, c + (1.0 - o));
        cur[g] = -1;
        used[h] = 0;
      }
    };
    rec(0, 0, 0.0);
    prev.clear();
    long matched = 0;
    for (std::size_t g = 0; g < gs.size(); ++g) {
      if (best[g] < 0) {
        ++out.fn;
        continue;
      }
      const int hid = hs[static_cast<std::size_t>(best[g])].track_id;
      auto l = last.find(gs[g].track_id);
      if (l != last.end() && l->second != hid) ++out.ids;
      last[gs[g].track_id] = hid;
      prev[gs[g].track_id] = hid;
      ++matched;
    }
    out.fp += static_cast<long>(hs.size()) - matched;
  }
  return out;
}

}  // namespace ctrack::oracle
