#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ctrack/heatmap.hpp"

namespace ctrack {
namespace {

const GridSpec kGrid{256, 128, 4, 2};

TEST(GaussianSigma, TinyObjectHitsFloor) { EXPECT_DOUBLE_EQ(gaussian_sigma({1, 1}), 2.0 / 3.0); }

TEST(GaussianSigma, MonotoneInWidthAndHeight) {
  EXPECT_GE(gaussian_sigma({10, 10}), gaussian_sigma({5, 5}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  for (int k = 0; k < 2000; ++k) {
    const Size2 s{u(rng), u(rng)};
    const double base = gaussian_sigma(s);
    ASSERT_GT(base, 0.0);
    ASSERT_GE(gaussian_sigma({s.w + u(rng), s.h}), base);
    ASSERT_GE(gaussian_sigma({s.w, s.h + u(rng)}), base);
    ASSERT_GE(gaussian_sigma({2 * s.w, 2 * s.h}), base);
  }
}

TEST(GridSpec, Validation) {
  EXPECT_NO_THROW(kGrid.validate());
  EXPECT_THROW((GridSpec{250, 128, 4, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GridSpec{256, 128, 0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GridSpec{256, 128, 4, 0}.validate()), std::invalid_argument);
}

TEST(RenderHeatmap, OnGridCenterIsExactlyOne) {
  const auto r = render_heatmap({{{40, 20}, {16, 32}, 1}}, kGrid);
  EXPECT_EQ(r.skipped, 0);
  EXPECT_EQ(r.heatmap(0, 5, 10), 1.0);
  EXPECT_EQ(r.heatmap(1, 5, 10), 0.0);
  for (double v : r.heatmap.values()) ASSERT_LE(v, 1.0);
}

TEST(RenderHeatmap, CellAtOneSigma) {
  // Tiny object: sigma = 2/3 grid units. Offset the center by sigma from cell (5, 10).
  const double sigma = 2.0 / 3.0;
  const GridSpec grid{64, 64, 4, 1};
  const auto r = render_heatmap({{{4.0 * (10 + sigma), 4.0 * 5}, {4, 4}, 1}}, grid);
  EXPECT_NEAR(r.heatmap(0, 5, 10), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(r.heatmap(0, 5, 10), 0.60653, 1e-5);
}

TEST(RenderHeatmap, MaxNotSum) {
  const RenderObject a{{40, 40}, {40, 40}, 1};
  const RenderObject b{{56, 40}, {40, 40}, 1};
  const Heatmap both = render_heatmap({a, b}, kGrid).heatmap;
  const Heatmap ha = render_heatmap({a}, kGrid).heatmap;
  const Heatmap hb = render_heatmap({b}, kGrid).heatmap;
  for (std::size_t i = 0; i < both.size(); ++i) {
    ASSERT_EQ(both.values()[i], std::max(ha.values()[i], hb.values()[i]));
  }
  EXPECT_EQ(both(0, 10, 12), std::max(ha(0, 10, 12), hb(0, 10, 12)));
  EXPECT_LE(both(0, 10, 12), 1.0);
}

TEST(RenderHeatmap, EmptyAndOutOfBounds) {
  const auto empty = render_heatmap({}, kGrid);
  for (double v : empty.heatmap.values()) ASSERT_EQ(v, 0.0);
  const auto r = render_heatmap({{{-1, 5}, {4, 4}, 1}, {{5, 500}, {4, 4}, 1}, {{5, 5}, {4, 4}, 3}}, kGrid);
  EXPECT_EQ(r.skipped, 3);
  for (double v : r.heatmap.values()) ASSERT_EQ(v, 0.0);
}

TEST(RenderHeatmap, OrderIndependent) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> x(0, 255), y(0, 127), s(2, 60);
  std::vector<RenderObject> objs;
  for (int i = 0; i < 8; ++i) objs.push_back({{x(rng), y(rng)}, {s(rng), s(rng)}, 1 + i % 2});
  const Heatmap ref = render_heatmap(objs, kGrid).heatmap;
  for (int k = 0; k < 5; ++k) {
    std::shuffle(objs.begin(), objs.end(), rng);
    ASSERT_EQ(render_heatmap(objs, kGrid).heatmap, ref);
  }
}

TEST(ExtractPeaks, SingleCenter) {
  const auto hm = render_heatmap({{{40, 20}, {16, 32}, 1}}, kGrid).heatmap;
  const auto peaks = extract_peaks(hm, 0.4);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0], (Peak{5, 10, 1, 1.0}));
}

TEST(ExtractPeaks, EmptyHeatmap) { EXPECT_TRUE(extract_peaks(make_heatmap(kGrid), 0.0).empty()); }

TEST(ExtractPeaks, TwoSeparatedCenters) {
  const auto hm = render_heatmap({{{40, 40}, {8, 8}, 1}, {{40 + 4 * 8, 40}, {8, 8}, 1}}, kGrid).heatmap;
  const auto peaks = extract_peaks(hm, 0.5);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0], (Peak{10, 10, 1, 1.0}));
  EXPECT_EQ(peaks[1], (Peak{10, 18, 1, 1.0}));
}

TEST(ExtractPeaks, PlateauYieldsOnePeak) {
  Heatmap h(1, 5, 5);
  // U-shaped plateau at 0.9 around a lower middle.
  for (auto [r, c] : {std::pair{1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {2, 3}, {1, 3}}) h(0, r, c) = 0.9;
  h(0, 2, 2) = 0.5;
  const auto peaks = extract_peaks(h, 0.1);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0].row, 1);
  EXPECT_EQ(peaks[0].col, 1);
}

TEST(ExtractPeaks, EdgeCellsUseClippedNeighborhood) {
  Heatmap h(1, 3, 3);
  h(0, 0, 0) = 0.8;
  h(0, 2, 2) = 0.7;
  const auto peaks = extract_peaks(h, 0.5);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].confidence, 0.8);
  EXPECT_EQ(peaks[1].confidence, 0.7);
}

TEST(ExtractPeaks, PropertiesOnRandomMaps) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Heatmap h(2, 12, 9);
    for (double& v : h.values()) v = std::round(u(rng) * 8) / 8;  // coarse values create plateaus
    const double thr = u(rng);
    const auto peaks = extract_peaks(h, thr);
    const auto above = std::count_if(h.values().begin(), h.values().end(), [&](double v) { return v > thr; });
    ASSERT_LE(static_cast<long>(peaks.size()), above);
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      ASSERT_GT(peaks[i].confidence, thr);
      if (i > 0) ASSERT_GE(peaks[i - 1].confidence, peaks[i].confidence);
    }
  }
}

TEST(ExtractPeaks, RejectsBadThreshold) {
  EXPECT_THROW(extract_peaks(make_heatmap(kGrid), 1.5), std::invalid_argument);
}

TEST(DecodeDetections, GridToPixelAndChannels) {
  auto maps = ChannelMaps::zeros(kGrid, TrackedSizeVariant::ltrb);
  maps.size(0, 5, 5) = 12;
  maps.size(1, 5, 5) = 30;
  maps.displacement(0, 5, 5) = 2;
  maps.displacement(1, 5, 5) = -1;
  for (std::size_t k = 0; k < 4; ++k) maps.tracked_size(k, 5, 5) = 10.0 + k;
  maps.iou(0, 5, 5) = 0.7;
  const auto dets = decode_detections({{5, 5, 1, 0.9}, {1, 1, 1, 0.3}}, maps, kGrid, 0.4, 7);
  ASSERT_EQ(dets.size(), 1u);
  const Detection& d = dets[0];
  EXPECT_EQ(d.center, (Point2{20, 20}));
  EXPECT_EQ(d.size, (Size2{12, 30}));
  EXPECT_EQ(d.disp, (Displacement{2, -1}));
  EXPECT_EQ(std::get<TrackedSizeLTRB>(d.tracked_size), (TrackedSizeLTRB{10, 11, 12, 13}));
  EXPECT_EQ(d.iou_pred, 0.7);
  EXPECT_EQ(d.frame, 7);
  EXPECT_TRUE(decode_detections({}, maps, kGrid, 0.4).empty());
}

TEST(DecodeDetections, RejectsMismatchedMaps) {
  auto maps = ChannelMaps::zeros(GridSpec{64, 64, 4, 1}, TrackedSizeVariant::wh);
  EXPECT_THROW(decode_detections({}, maps, kGrid, 0.4), std::invalid_argument);
}

TEST(HeatmapRoundTrip, RenderExtractDecode) {
  std::mt19937_64 rng(2);
  for (int scene = 0; scene < 20; ++scene) {
    std::vector<RenderObject> objs;
    std::uniform_int_distribution<int> col(0, kGrid.cols() - 1), row(0, kGrid.rows() - 1);
    while (objs.size() < 5) {
      const Point2 c{4.0 * col(rng), 4.0 * row(rng)};
      const bool far = std::all_of(objs.begin(), objs.end(), [&](const RenderObject& o) {
        return std::max(std::abs(o.center.x - c.x), std::abs(o.center.y - c.y)) >= 32.0;
      });
      if (far) objs.push_back({c, {8, 8}, 1});
    }
    const auto hm = render_heatmap(objs, kGrid).heatmap;
    const auto peaks = extract_peaks(hm, 0.5);
    const auto dets = decode_detections(peaks, ChannelMaps::zeros(kGrid, TrackedSizeVariant::wh), kGrid, 0.4);
    ASSERT_EQ(dets.size(), objs.size());
    for (const auto& o : objs) {
      const bool found = std::any_of(dets.begin(), dets.end(), [&](const Detection& d) {
        return std::abs(d.center.x - o.center.x) <= 2.0 && std::abs(d.center.y - o.center.y) <= 2.0 &&
               d.confidence == 1.0;
      });
      ASSERT_TRUE(found);
    }
  }
}

TEST(HeatmapDump, RoundTripsAtFloatPrecision) {
  const auto hm = render_heatmap({{{40, 20}, {16, 32}, 1}, {{100, 60}, {20, 40}, 2}}, kGrid).heatmap;
  std::stringstream buf;
  write_heatmap(buf, hm);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 16 + 4 * hm.size());
  EXPECT_EQ(bytes.substr(0, 4), "HMAP");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 64);  // cols, little endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 32);  // rows
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 2);  // classes
  const Heatmap back = read_heatmap(buf);
  ASSERT_TRUE(back.same_shape(hm));
  for (std::size_t i = 0; i < hm.size(); ++i) {
    ASSERT_EQ(back.values()[i], static_cast<double>(static_cast<float>(hm.values()[i])));
  }
  std::stringstream bad("HMAX");
  EXPECT_THROW(read_heatmap(bad), std::runtime_error);
}

}  // namespace
}  // namespace ctrack
