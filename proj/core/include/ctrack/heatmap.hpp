#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ctrack/dense_map.hpp"
#include "ctrack/detection.hpp"
#include "ctrack/geometry.hpp"

namespace ctrack {

/// Input resolution and output-grid layout. Heatmaps are (W/R) x (H/R) per
/// class. Class ids are 1-based; class k lives in channel k - 1.
struct GridSpec {
  int width_px = 960;
  int height_px = 544;
  int downsample = 4;
  int num_classes = 1;

  int cols() const { return width_px / downsample; }
  int rows() const { return height_px / downsample; }

  /// Throws std::invalid_argument when the layout is inconsistent.
  void validate() const;
};

/// Center-confidence heatmap, one channel per class, values in [0, 1].
using Heatmap = DenseMap;

Heatmap make_heatmap(const GridSpec& grid);

/// Per-pixel regression outputs sampled at peaks. Sizes, displacements and
/// tracked sizes are stored in input pixels.
struct ChannelMaps {
  DenseMap size;            // 2 channels: w, h
  DenseMap displacement;    // 2 channels: dx, dy
  DenseMap tracked_size;    // 2 channels (dw, dh) or 4 (l, t, r, b)
  DenseMap iou;             // 1 channel, values in [0, 1]

  static ChannelMaps zeros(const GridSpec& grid, TrackedSizeVariant variant);
  TrackedSizeVariant variant() const;
};

struct Peak {
  int row = 0;
  int col = 0;
  int class_id = 1;
  double confidence = 0.0;

  friend bool operator==(const Peak&, const Peak&) = default;
};

struct RenderObject {
  Point2 center;  // input pixels
  Size2 size;     // input pixels
  int class_id = 1;
};

struct RenderResult {
  Heatmap heatmap;
  int skipped = 0;  // objects outside the image or with an unknown class
};

/// Gaussian kernel width for an object of the given size in grid units:
/// the CornerNet min-overlap-0.7 radius, floored at 2, divided by 3.
double gaussian_sigma(Size2 grid_size);

/// Renders object centers as per-class max-combined Gaussian peaks.
RenderResult render_heatmap(const std::vector<RenderObject>& objects, const GridSpec& grid);

/// 3x3 local maxima strictly above threshold, sorted by descending
/// confidence. On a plateau of equal values only the (row, col)
/// lexicographically smallest cell is reported.
std::vector<Peak> extract_peaks(const Heatmap& h, double threshold);

/// Builds detections from peaks whose confidence exceeds out_threshold by
/// sampling every channel map at the peak cell.
std::vector<Detection> decode_detections(const std::vector<Peak>& peaks, const ChannelMaps& maps,
                                         const GridSpec& grid, double out_threshold,
                                         int frame = 0);

// Binary dump: "HMAP", u32 cols, u32 rows, u32 classes, then little-endian
// float32 values in (class, row, col) order.
void write_heatmap(std::ostream& out, const Heatmap& h);
Heatmap read_heatmap(std::istream& in);

}  // namespace ctrack
