#include "ctrack/heatmap.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ctrack {

namespace {

constexpr double kMinOverlap = 0.7;
constexpr double kRadiusFloor = 2.0;

bool in_grid(const Heatmap& h, long r, long c) {
  return r >= 0 && c >= 0 && r < static_cast<long>(h.rows()) && c < static_cast<long>(h.cols());
}

// A cell that is >= every neighbor but shares its value with some neighbor
// sits on a plateau. Only the lexicographically smallest plateau cell counts.
bool smallest_on_plateau(const Heatmap& h, std::size_t ch, long row, long col) {
  const double v = h(ch, row, col);
  std::vector<std::pair<long, long>> stack{{row, col}};
  std::vector<char> seen(h.rows() * h.cols(), 0);
  seen[row * h.cols() + col] = 1;
  while (!stack.empty()) {
    const auto [r, c] = stack.back();
    stack.pop_back();
    for (long dr = -1; dr <= 1; ++dr) {
      for (long dc = -1; dc <= 1; ++dc) {
        const long nr = r + dr;
        const long nc = c + dc;
        if (!in_grid(h, nr, nc) || seen[nr * h.cols() + nc]) continue;
        if (h(ch, nr, nc) != v) continue;
        if (std::pair{nr, nc} < std::pair{row, col}) return false;
        seen[nr * h.cols() + nc] = 1;
        stack.emplace_back(nr, nc);
      }
    }
  }
  return true;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                  static_cast<char>((v >> 16) & 0xff),
                                  static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw std::runtime_error("heatmap dump: truncated input");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void GridSpec::validate() const {
  if (downsample < 1) throw std::invalid_argument("grid: downsample must be >= 1");
  if (num_classes < 1) throw std::invalid_argument("grid: num_classes must be >= 1");
  if (width_px <= 0 || height_px <= 0) throw std::invalid_argument("grid: empty image");
  if (width_px % downsample != 0 || height_px % downsample != 0) {
    throw std::invalid_argument("grid: image size must be divisible by downsample");
  }
}

Heatmap make_heatmap(const GridSpec& grid) {
  grid.validate();
  return Heatmap(grid.num_classes, grid.rows(), grid.cols());
}

ChannelMaps ChannelMaps::zeros(const GridSpec& grid, TrackedSizeVariant variant) {
  grid.validate();
  const auto rows = static_cast<std::size_t>(grid.rows());
  const auto cols = static_cast<std::size_t>(grid.cols());
  return {DenseMap(2, rows, cols), DenseMap(2, rows, cols),
          DenseMap(variant == TrackedSizeVariant::wh ? 2 : 4, rows, cols), DenseMap(1, rows, cols)};
}

TrackedSizeVariant ChannelMaps::variant() const {
  return tracked_size.channels() == 4 ? TrackedSizeVariant::ltrb : TrackedSizeVariant::wh;
}

double gaussian_sigma(Size2 grid_size) {
  const double h = std::max(0.0, grid_size.h);
  const double w = std::max(0.0, grid_size.w);

  const double b1 = h + w;
  const double c1 = w * h * (1.0 - kMinOverlap) / (1.0 + kMinOverlap);
  const double r1 = (b1 + std::sqrt(b1 * b1 - 4.0 * c1)) / 2.0;

  const double a2 = 4.0;
  const double b2 = 2.0 * (h + w);
  const double c2 = (1.0 - kMinOverlap) * w * h;
  const double r2 = (b2 + std::sqrt(b2 * b2 - 4.0 * a2 * c2)) / 2.0;

  const double a3 = 4.0 * kMinOverlap;
  const double b3 = -2.0 * kMinOverlap * (h + w);
  const double c3 = (kMinOverlap - 1.0) * w * h;
  const double r3 = (b3 + std::sqrt(b3 * b3 - 4.0 * a3 * c3)) / 2.0;

  const double radius = std::max(kRadiusFloor, std::min({r1, r2, r3}));
  return radius / 3.0;
}

RenderResult render_heatmap(const std::vector<RenderObject>& objects, const GridSpec& grid) {
  RenderResult result{make_heatmap(grid), 0};
  Heatmap& hm = result.heatmap;
  const double r = grid.downsample;

  for (const auto& obj : objects) {
    const bool inside = obj.center.x >= 0.0 && obj.center.y >= 0.0 &&
                        obj.center.x < grid.width_px && obj.center.y < grid.height_px;
    if (!inside || obj.class_id < 1 || obj.class_id > grid.num_classes) {
      ++result.skipped;
      continue;
    }
    const std::size_t ch = static_cast<std::size_t>(obj.class_id - 1);
    const double gx = obj.center.x / r;
    const double gy = obj.center.y / r;
    const double sigma = gaussian_sigma({obj.size.w / r, obj.size.h / r});
    const double denom = 2.0 * sigma * sigma;
    for (std::size_t row = 0; row < hm.rows(); ++row) {
      const double dy = gy - static_cast<double>(row);
      for (std::size_t col = 0; col < hm.cols(); ++col) {
        const double dx = gx - static_cast<double>(col);
        const double v = std::exp(-(dx * dx + dy * dy) / denom);
        double& cell = hm(ch, row, col);
        cell = std::max(cell, v);
      }
    }
  }
  return result;
}

std::vector<Peak> extract_peaks(const Heatmap& h, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("extract_peaks: threshold must be in [0, 1]");
  }
  std::vector<Peak> peaks;
  for (std::size_t ch = 0; ch < h.channels(); ++ch) {
    for (long row = 0; row < static_cast<long>(h.rows()); ++row) {
      for (long col = 0; col < static_cast<long>(h.cols()); ++col) {
        const double v = h(ch, row, col);
        if (!(v > threshold)) continue;
        bool is_max = true;
        bool plateau = false;
        for (long dr = -1; dr <= 1 && is_max; ++dr) {
          for (long dc = -1; dc <= 1; ++dc) {
            if ((dr == 0 && dc == 0) || !in_grid(h, row + dr, col + dc)) continue;
            const double n = h(ch, row + dr, col + dc);
            if (n > v) {
              is_max = false;
              break;
            }
            if (n == v) plateau = true;
          }
        }
        if (!is_max) continue;
        if (plateau && !smallest_on_plateau(h, ch, row, col)) continue;
        peaks.push_back({static_cast<int>(row), static_cast<int>(col), static_cast<int>(ch) + 1, v});
      }
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.confidence > b.confidence; });
  return peaks;
}

std::vector<Detection> decode_detections(const std::vector<Peak>& peaks, const ChannelMaps& maps,
                                         const GridSpec& grid, double out_threshold, int frame) {
  grid.validate();
  const auto rows = static_cast<std::size_t>(grid.rows());
  const auto cols = static_cast<std::size_t>(grid.cols());
  for (const DenseMap* m : {&maps.size, &maps.displacement, &maps.tracked_size, &maps.iou}) {
    if (m->rows() != rows || m->cols() != cols) {
      throw std::invalid_argument("decode_detections: channel map does not match grid");
    }
  }
  if (maps.size.channels() != 2 || maps.displacement.channels() != 2 || maps.iou.channels() != 1 ||
      (maps.tracked_size.channels() != 2 && maps.tracked_size.channels() != 4)) {
    throw std::invalid_argument("decode_detections: unexpected channel count");
  }

  std::vector<Detection> out;
  const double r = grid.downsample;
  for (const auto& p : peaks) {
    if (!(p.confidence > out_threshold)) continue;
    const auto row = static_cast<std::size_t>(p.row);
    const auto col = static_cast<std::size_t>(p.col);
    Detection d;
    d.frame = frame;
    d.center = {static_cast<double>(p.col) * r, static_cast<double>(p.row) * r};
    d.size = {std::max(0.0, maps.size(0, row, col)), std::max(0.0, maps.size(1, row, col))};
    d.confidence = p.confidence;
    d.class_id = p.class_id;
    d.disp = {maps.displacement(0, row, col), maps.displacement(1, row, col)};
    if (maps.variant() == TrackedSizeVariant::wh) {
      d.tracked_size = TrackedSizeWH{maps.tracked_size(0, row, col), maps.tracked_size(1, row, col)};
    } else {
      d.tracked_size = TrackedSizeLTRB{maps.tracked_size(0, row, col), maps.tracked_size(1, row, col),
                                       maps.tracked_size(2, row, col), maps.tracked_size(3, row, col)};
    }
    d.iou_pred = std::clamp(maps.iou(0, row, col), 0.0, 1.0);
    out.push_back(d);
  }
  return out;
}

void write_heatmap(std::ostream& out, const Heatmap& h) {
  out.write("HMAP", 4);
  put_u32(out, static_cast<std::uint32_t>(h.cols()));
  put_u32(out, static_cast<std::uint32_t>(h.rows()));
  put_u32(out, static_cast<std::uint32_t>(h.channels()));
  for (double v : h.values()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
}

Heatmap read_heatmap(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || std::string(magic.data(), 4) != "HMAP") {
    throw std::runtime_error("heatmap dump: bad magic");
  }
  const std::uint32_t cols = get_u32(in);
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t classes = get_u32(in);
  Heatmap h(classes, rows, cols);
  for (double& v : h.values()) {
    v = static_cast<double>(std::bit_cast<float>(get_u32(in)));
  }
  return h;
}

}  // namespace ctrack
