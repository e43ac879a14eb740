#include "ctrack/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ctrack/heatmap.hpp"

namespace ctrack {

namespace {

void require_objects(const GtAnnotations& gt) {
  if (gt.objects.empty()) throw std::invalid_argument("loss: at least one object is required");
  if (gt.downsample < 1) throw std::invalid_argument("loss: downsample must be >= 1");
}

std::pair<std::size_t, std::size_t> center_cell(const DenseMap& map, Point2 c, int downsample) {
  const auto clamp_to = [](double v, std::size_t n) {
    const double f = std::floor(v);
    if (f < 0.0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(f), n - 1);
  };
  if (map.rows() == 0 || map.cols() == 0) throw std::invalid_argument("loss: empty prediction map");
  return {clamp_to(c.y / downsample, map.rows()), clamp_to(c.x / downsample, map.cols())};
}

// Mean over objects of sum_k |pred_k(cell) - target_k|.
template <typename Target>
double mean_l1(const DenseMap& pred, const GtAnnotations& gt, std::size_t channels, Target&& target) {
  require_objects(gt);
  if (pred.channels() != channels) throw std::invalid_argument("loss: unexpected channel count");
  double total = 0.0;
  for (const auto& obj : gt.objects) {
    const auto [row, col] = center_cell(pred, obj.center, gt.downsample);
    const std::vector<double> t = target(obj);
    for (std::size_t k = 0; k < channels; ++k) total += std::abs(pred(k, row, col) - t[k]);
  }
  return total / static_cast<double>(gt.objects.size());
}

void check_focal_inputs(const DenseMap& pred, const DenseMap& gt, int n_objects) {
  if (!pred.same_shape(gt)) throw std::invalid_argument("focal_loss: shape mismatch");
  if (n_objects < 1) throw std::invalid_argument("focal_loss: n_objects must be >= 1");
}

}  // namespace

double focal_loss(const DenseMap& pred, const DenseMap& gt, const FocalParams& params, int n_objects) {
  check_focal_inputs(pred, gt, n_objects);
  const auto p = pred.values();
  const auto y = gt.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double yh = std::clamp(p[i], kFocalEpsilon, 1.0 - kFocalEpsilon);
    if (y[i] == 1.0) {
      sum += std::pow(1.0 - yh, params.alpha) * std::log(yh);
    } else {
      sum += std::pow(1.0 - y[i], params.beta) * std::pow(yh, params.alpha) * std::log(1.0 - yh);
    }
  }
  return -sum / n_objects;
}

DenseMap focal_loss_gradient(const DenseMap& pred, const DenseMap& gt, const FocalParams& params,
                             int n_objects) {
  check_focal_inputs(pred, gt, n_objects);
  DenseMap grad(pred.channels(), pred.rows(), pred.cols());
  const auto p = pred.values();
  const auto y = gt.values();
  auto g = grad.values();
  const double a = params.alpha;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < kFocalEpsilon || p[i] > 1.0 - kFocalEpsilon) continue;
    const double yh = p[i];
    double d = 0.0;
    if (y[i] == 1.0) {
      // d/dp (1-p)^a log p
      d = -a * std::pow(1.0 - yh, a - 1.0) * std::log(yh) + std::pow(1.0 - yh, a) / yh;
    } else {
      // d/dp (1-y)^b p^a log(1-p)
      d = std::pow(1.0 - y[i], params.beta) *
          (a * std::pow(yh, a - 1.0) * std::log(1.0 - yh) - std::pow(yh, a) / (1.0 - yh));
    }
    g[i] = -d / n_objects;
  }
  return grad;
}

double l1_size_loss(const DenseMap& pred_size, const GtAnnotations& gt) {
  return mean_l1(pred_size, gt, 2, [](const GtObject& o) {
    return std::vector<double>{o.size.w, o.size.h};
  });
}

double l1_offset_loss(const DenseMap& pred_disp, const GtAnnotations& gt) {
  return mean_l1(pred_disp, gt, 2, [](const GtObject& o) {
    return std::vector<double>{o.prev_center.x - o.center.x, o.prev_center.y - o.center.y};
  });
}

double l1_tracked_size_wh_loss(const DenseMap& pred_ts, const GtAnnotations& gt, TrackedSizeSign sign) {
  const double s = sign == TrackedSizeSign::previous_minus_current ? 1.0 : -1.0;
  return mean_l1(pred_ts, gt, 2, [s](const GtObject& o) {
    return std::vector<double>{s * (o.prev_box.width() - o.box.width()),
                               s * (o.prev_box.height() - o.box.height())};
  });
}

double l1_tracked_size_ltrb_loss(const DenseMap& pred_ts, const GtAnnotations& gt) {
  return mean_l1(pred_ts, gt, 4, [](const GtObject& o) {
    return std::vector<double>{o.prev_box.left, o.prev_box.top, o.prev_box.right, o.prev_box.bottom};
  });
}

double l1_iou_loss(const DenseMap& pred_iou, const GtAnnotations& gt) {
  require_objects(gt);
  for (const auto& obj : gt.objects) {
    const auto [row, col] = center_cell(pred_iou, obj.center, gt.downsample);
    const double v = pred_iou(0, row, col);
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("l1_iou_loss: prediction outside [0, 1]");
  }
  return mean_l1(pred_iou, gt, 1, [](const GtObject& o) {
    return std::vector<double>{iou(o.prev_box, o.box)};
  });
}

DenseMap finite_diff_grad(const MapFunction& f, const DenseMap& point, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("finite_diff_grad: eps must be positive");
  DenseMap grad(point.channels(), point.rows(), point.cols());
  DenseMap probe = point;
  auto x = probe.values();
  auto g = grad.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double up = f(probe);
    x[i] = saved - eps;
    const double down = f(probe);
    x[i] = saved;
    g[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

GradientCheckReport check_focal_gradient(int points, unsigned seed, double eps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> interior(0.05, 0.95);
  std::uniform_real_distribution<double> coord(2.0, 30.0);
  std::uniform_int_distribution<int> count(1, 3);

  const GridSpec grid{32, 32, 4, 1};
  const FocalParams params;
  GradientCheckReport report;
  for (int k = 0; k < points; ++k) {
    std::vector<RenderObject> objects;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      // Even pixel coordinates on a multiple of R put the center on a cell, giving Y = 1 there.
      const double x = 4.0 * std::floor(coord(rng) / 4.0);
      const double y = 4.0 * std::floor(coord(rng) / 4.0);
      objects.push_back({{x, y}, {8.0, 16.0}, 1});
    }
    const DenseMap gt = render_heatmap(objects, grid).heatmap;
    DenseMap pred(gt.channels(), gt.rows(), gt.cols());
    for (double& v : pred.values()) v = interior(rng);

    const auto f = [&](const DenseMap& p) { return focal_loss(p, gt, params, n); };
    const DenseMap analytic = focal_loss_gradient(pred, gt, params, n);
    const DenseMap numeric = finite_diff_grad(f, pred, eps);
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      const double a = analytic.values()[i];
      const double m = numeric.values()[i];
      const double rel = std::abs(a - m) / std::max({std::abs(a), std::abs(m), 1e-12});
      report.max_relative_error = std::max(report.max_relative_error, rel);
    }
    ++report.points;
  }
  return report;
}

}  // namespace ctrack
