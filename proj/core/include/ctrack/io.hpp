#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctrack/detection.hpp"
#include "ctrack/geometry.hpp"

namespace ctrack {

/// Parse failure carrying the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct GtEntry {
  int frame = 0;
  int track_id = 0;
  BoxLTRB box;
  bool consider = true;  // MOT "conf" column; 0 marks an ignored entry
  int class_id = 1;
  double visibility = 1.0;

  friend bool operator==(const GtEntry&, const GtEntry&) = default;
};

struct TrackRecord {
  int frame = 0;
  int track_id = 0;
  BoxLTRB box;
  double confidence = 0.0;

  friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

// MOT ground truth: frame,id,bb_left,bb_top,bb_width,bb_height,conf,class,visibility
std::vector<GtEntry> parse_mot(std::istream& in);
void write_gt(std::ostream& out, const std::vector<GtEntry>& entries);

// MOT results: frame,id,bb_left,bb_top,bb_width,bb_height,conf,-1,-1,-1
// written sorted by (frame, id).
void write_mot(std::ostream& out, std::vector<TrackRecord> records);
std::vector<TrackRecord> parse_tracks(std::istream& in);

/// Prediction file: a `variant: wh|ltrb` header line followed by rows
///   frame,cx,cy,w,h,conf,class,dx,dy,<2 or 4 tracked-size values>,iou_pred
/// Returned frames are contiguous from 1 to the last frame present; frames
/// without rows come back empty.
struct PredictionFile {
  TrackedSizeVariant variant = TrackedSizeVariant::ltrb;
  std::vector<FrameDetections> frames;
};

PredictionFile parse_predictions(std::istream& in);
void write_predictions(std::ostream& out, const PredictionFile& file);

/// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

}  // namespace ctrack
