#pragma once

#include <stdexcept>
#include <vector>

#include "ctrack/io.hpp"

namespace ctrack {

/// Raised when a metric is undefined for the input, e.g. MOTA without any
/// ground truth.
class MetricDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ClearResult {
  double mota = 0.0;
  long fp = 0;
  long fn = 0;
  long ids = 0;
  long num_gt = 0;
  long num_hyp = 0;
  long matches = 0;
};

struct IdResult {
  double idf1 = 0.0;
  long idtp = 0;
  long idfp = 0;
  long idfn = 0;
};

/// CLEAR-MOT counts. Per frame, last frame's GT-hypothesis pairs are kept
/// while their IOU stays >= iou_thresh; the remaining objects are matched by
/// optimal assignment on 1 - IOU. A switch is counted whenever a GT track is
/// matched to a hypothesis other than the one it was most recently matched
/// to. GT entries with consider = false are dropped.
ClearResult clear_mot(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp,
                      double iou_thresh = 0.5);

/// Identity F1 under the optimal one-to-one GT/hypothesis trajectory
/// assignment. Both inputs empty gives idf1 = 1.
IdResult idf1(const std::vector<GtEntry>& gt, const std::vector<TrackRecord>& hyp,
              double iou_thresh = 0.5);

}  // namespace ctrack
