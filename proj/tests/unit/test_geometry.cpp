#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ctrack/detection.hpp"
#include "ctrack/geometry.hpp"
#include "oracles.hpp"

namespace ctrack {
namespace {

TEST(Iou, IdentityDisjointAndPartial) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 1, 1}, {0, 0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 1, 1}, {5, 5, 6, 6}), 0.0);
  // intersection 2, union 6
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {1, 0, 3, 2}), 1.0 / 3.0);
}

TEST(Iou, DegenerateBoxesGiveZero) {
  EXPECT_EQ(iou({1, 1, 1, 1}, {1, 1, 1, 1}), 0.0);
  EXPECT_EQ(iou({0, 0, 0, 5}, {0, 0, 2, 5}), 0.0);
  EXPECT_EQ(iou({0, 0, 0, 0}, {0, 0, 0, 0}), 0.0);
}

TEST(Iou, TouchingEdgesDoNotOverlap) { EXPECT_EQ(iou({0, 0, 2, 2}, {2, 0, 4, 2}), 0.0); }

BoxLTRB random_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-100.0, 100.0);
  std::uniform_real_distribution<double> ext(0.0, 50.0);
  const double l = pos(rng), t = pos(rng);
  return {l, t, l + ext(rng), t + ext(rng)};
}

TEST(IouProperty, SymmetricBoundedTranslationInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shift(-1000.0, 1000.0);
  for (int k = 0; k < 5000; ++k) {
    const BoxLTRB a = random_box(rng);
    const BoxLTRB b = random_box(rng);
    const double v = iou(a, b);
    ASSERT_EQ(v, iou(b, a));
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    if (a.area() > 0.0) ASSERT_DOUBLE_EQ(iou(a, a), 1.0);
    const double dx = shift(rng), dy = shift(rng);
    const BoxLTRB as{a.left + dx, a.top + dy, a.right + dx, a.bottom + dy};
    const BoxLTRB bs{b.left + dx, b.top + dy, b.right + dx, b.bottom + dy};
    ASSERT_NEAR(iou(as, bs), v, 1e-12);
  }
}

TEST(IouProperty, MatchesPixelRasterization) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(0, 64);
  for (int k = 0; k < 2000; ++k) {
    int c[8];
    for (int& v : c) v = coord(rng);
    const BoxLTRB a{double(std::min(c[0], c[2])), double(std::min(c[1], c[3])),
                    double(std::max(c[0], c[2])), double(std::max(c[1], c[3]))};
    const BoxLTRB b{double(std::min(c[4], c[6])), double(std::min(c[5], c[7])),
                    double(std::max(c[4], c[6])), double(std::max(c[5], c[7]))};
    const auto px = oracle::raster_areas(int(a.left), int(a.top), int(a.right), int(a.bottom), int(b.left),
                                         int(b.top), int(b.right), int(b.bottom));
    ASSERT_EQ(intersection_area(a, b), double(px.intersection));
    ASSERT_EQ(a.area() + b.area() - intersection_area(a, b), double(px.uni));
  }
}

TEST(BoxFromCenterSize, Examples) {
  EXPECT_EQ(box_from_center_size({10, 10}, {4, 2}), (BoxLTRB{8, 9, 12, 11}));
  EXPECT_EQ(box_from_center_size({0, 0}, {0, 0}), (BoxLTRB{0, 0, 0, 0}));
  const Point2 c{3.25, -7.5};
  EXPECT_EQ(box_from_center_size(c, {6.5, 1.0}).center(), c);
}

TEST(TrackedBoxWh, Examples) {
  const BoxLTRB moved = tracked_box_wh({10, 10}, {4, 4}, {2, 0}, {0, 0});
  EXPECT_EQ(moved.center(), (Point2{8, 10}));
  EXPECT_EQ(moved.size(), (Size2{4, 4}));

  EXPECT_EQ(tracked_box_wh({10, 10}, {6, 4}, {0, 0}, {2, 0}), (BoxLTRB{8, 8, 12, 12}));

  const BoxLTRB clamped = tracked_box_wh({10, 10}, {4, 4}, {1, 1}, {9, -2});
  EXPECT_EQ(clamped.width(), 0.0);
  EXPECT_EQ(clamped.height(), 6.0);
  EXPECT_EQ(clamped.center(), (Point2{9, 9}));
}

TEST(TrackedBoxWh, ZeroMotionIsTheDetectionBox) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int k = 0; k < 200; ++k) {
    const Point2 c{u(rng), u(rng)};
    const Size2 s{u(rng), u(rng)};
    ASSERT_EQ(tracked_box_wh(c, s, {}, {}), box_from_center_size(c, s));
  }
}

TEST(TrackedBoxLtrb, PassThroughAndNormalization) {
  EXPECT_EQ(tracked_box_ltrb({8, 8, 12, 12}), (BoxLTRB{8, 8, 12, 12}));
  // y-up convention: top written as y + h/2, bottom as y - h/2
  const double x = 10, y = 10, w = 4, h = 4;
  EXPECT_EQ(tracked_box_ltrb({x - w / 2, y + h / 2, x + w / 2, y - h / 2}), (BoxLTRB{8, 8, 12, 12}));
  EXPECT_EQ(tracked_box_ltrb({5, 5, 5, 5}), (BoxLTRB{5, 5, 5, 5}));
}

TEST(TrackedBox, DispatchesOnVariant) {
  Detection d;
  d.center = {10, 10};
  d.size = {6, 4};
  d.tracked_size = TrackedSizeWH{2, 0};
  EXPECT_EQ(tracked_box(d), (BoxLTRB{8, 8, 12, 12}));
  d.tracked_size = TrackedSizeLTRB{1, 2, 3, 4};
  EXPECT_EQ(tracked_box(d), (BoxLTRB{1, 2, 3, 4}));
}

TEST(SizeGate, Examples) {
  EXPECT_DOUBLE_EQ(size_gate({4, 9}), 6.0);
  EXPECT_DOUBLE_EQ(size_gate({0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(size_gate({5, 5}), 5.0);
}

}  // namespace
}  // namespace ctrack
