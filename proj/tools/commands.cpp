#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ctrack/io.hpp"
#include "ctrack/metrics.hpp"
#include "ctrack/objectives.hpp"
#include "ctrack/sim_config.hpp"
#include "ctrack/simulator.hpp"
#include "ctrack/tracker.hpp"

namespace ctrack::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::ifstream> open_input(const fs::path& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path.string() << "'\n";
    return std::nullopt;
  }
  return in;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

int cmd_track(const TrackOptions& opt, std::ostream& out, std::ostream& err) {
  auto in = open_input(opt.predictions, err);
  if (!in) return kInputError;

  PredictionFile preds;
  try {
    preds = parse_predictions(*in);
  } catch (const ParseError& e) {
    err << "error: " << opt.predictions.string() << ": " << e.what() << '\n';
    return kInputError;
  }
  if (opt.variant && *opt.variant != preds.variant) {
    err << "error: --variant " << to_string(*opt.variant) << " does not match file header variant "
        << to_string(preds.variant) << '\n';
    return kInputError;
  }

  TrackerConfig cfg;
  cfg.strategy = opt.strategy;
  cfg.variant = preds.variant;
  cfg.lifetime = opt.lifetime;
  cfg.out_threshold = opt.theta;
  cfg.iou_filter_form = opt.iou_filter_form;
  cfg.threads = opt.threads;

  std::vector<TrackRecord> records;
  SequenceStats stats;
  try {
    records = run_sequence(preds.frames, cfg, &stats);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  std::ostringstream text;
  write_mot(text, records);
  std::ostream* summary = &out;
  if (opt.out) {
    write_file_atomic(*opt.out, text.str());
  } else {
    out << text.str();
    summary = &err;
  }
  *summary << "frames=" << stats.frames << " detections=" << stats.detections
           << " tracks_spawned=" << stats.spawned << " strategy=" << to_string(cfg.strategy)
           << " variant=" << to_string(cfg.variant) << '\n';
  return kOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  auto gt_in = open_input(opt.gt, err);
  if (!gt_in) return kInputError;
  auto hyp_in = open_input(opt.hyp, err);
  if (!hyp_in) return kInputError;

  std::vector<GtEntry> gt;
  std::vector<TrackRecord> hyp;
  try {
    gt = parse_mot(*gt_in);
  } catch (const ParseError& e) {
    err << "error: " << opt.gt.string() << ": " << e.what() << '\n';
    return kInputError;
  }
  try {
    hyp = parse_tracks(*hyp_in);
  } catch (const ParseError& e) {
    err << "error: " << opt.hyp.string() << ": " << e.what() << '\n';
    return kInputError;
  }

  ClearResult clear;
  IdResult id;
  try {
    clear = clear_mot(gt, hyp, opt.iou_thresh);
    id = idf1(gt, hyp, opt.iou_thresh);
  } catch (const MetricDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (opt.json) {
    const double n = static_cast<double>(clear.num_gt);
    nlohmann::ordered_json j;
    j["mota"] = clear.mota;
    j["idf1"] = id.idf1;
    j["ids"] = clear.ids;
    j["fp"] = clear.fp;
    j["fn"] = clear.fn;
    j["fp_ratio"] = static_cast<double>(clear.fp) / n;
    j["fn_ratio"] = static_cast<double>(clear.fn) / n;
    j["num_gt"] = clear.num_gt;
    j["num_hyp"] = clear.num_hyp;
    j["idtp"] = id.idtp;
    j["idfp"] = id.idfp;
    j["idfn"] = id.idfn;
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << std::left << std::setw(8) << "MOTA" << std::setw(8) << "IDF1" << std::setw(8) << "IDs"
      << std::setw(8) << "FP" << "FN" << '\n';
  out << std::fixed << std::setprecision(3) << std::setw(8) << clear.mota << std::setw(8) << id.idf1
      << std::setw(8) << clear.ids << std::setw(8) << clear.fp << clear.fn << '\n';
  return kOk;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  auto in = open_input(opt.config, err);
  if (!in) return kInputError;
  SimulationConfig cfg;
  try {
    cfg = parse_sim_config(*in);
  } catch (const ParseError& e) {
    err << "error: " << opt.config.string() << ": " << e.what() << '\n';
    return kInputError;
  }
  if (opt.seed) cfg.scenario.seed = *opt.seed;

  const Scenario scene = generate(cfg.scenario);
  const Size2 image{static_cast<double>(cfg.scenario.width), static_cast<double>(cfg.scenario.height)};
  // The noise stream is offset from the scenario stream so the two never share draws.
  const PredictionFile preds =
      perturb(scene.predictions, cfg.noise, image, cfg.scenario.seed ^ 0x9e3779b97f4a7c15ULL);

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    err << "error: cannot create '" << opt.out_dir.string() << "': " << ec.message() << '\n';
    return kInputError;
  }
  std::ostringstream gt_text, pred_text;
  write_gt(gt_text, scene.gt);
  write_predictions(pred_text, preds);
  write_file_atomic(opt.out_dir / "gt.txt", gt_text.str());
  write_file_atomic(opt.out_dir / "preds.csv", pred_text.str());

  std::size_t dets = 0;
  for (const auto& f : preds.frames) dets += f.detections.size();
  out << "frames=" << cfg.scenario.frames << " agents=" << cfg.scenario.agents.size()
      << " gt_rows=" << scene.gt.size() << " detections=" << dets << " seed=" << cfg.scenario.seed
      << '\n';
  return kOk;
}

int cmd_check_losses(const CheckLossesOptions& opt, std::ostream& out, std::ostream& err) {
  const GradientCheckReport report = check_focal_gradient(opt.points, static_cast<unsigned>(opt.seed));
  out << "focal_loss gradient: points=" << report.points << " max_rel_err=" << std::scientific
      << std::setprecision(3) << report.max_relative_error << '\n'
      << std::defaultfloat;

  // L1 objectives against their hand-evaluated values.
  GtAnnotations gt;
  gt.downsample = 1;
  gt.objects.push_back({{0.0, 0.0}, {4.0, 4.0}, {2.0, 0.0}, {0.0, 0.0, 2.0, 2.0}, {1.0, 0.0, 3.0, 2.0}});
  DenseMap size(2, 1, 1), disp(2, 1, 1), ltrb(4, 1, 1), ts(2, 1, 1), iou_map(1, 1, 1);
  size(0, 0, 0) = 5.0;
  size(1, 0, 0) = 5.0;
  iou_map(0, 0, 0) = 0.5;
  ltrb(3, 0, 0) = 3.0;
  struct Row {
    const char* name;
    double got;
    double want;
  };
  const Row rows[] = {
      {"l1_size", l1_size_loss(size, gt), 2.0},
      {"l1_offset", l1_offset_loss(disp, gt), 2.0},
      {"l1_tracked_size_wh", l1_tracked_size_wh_loss(ts, gt), 0.0},
      {"l1_tracked_size_ltrb", l1_tracked_size_ltrb_loss(ltrb, gt), 3.0},
      {"l1_iou", l1_iou_loss(iou_map, gt), 0.5 - 1.0 / 3.0},
  };
  bool ok = report.max_relative_error < opt.tolerance;
  for (const auto& r : rows) {
    const double diff = std::abs(r.got - r.want);
    out << r.name << ": value=" << format_number(r.got) << " expected=" << format_number(r.want) << (diff <= 1e-12 ? " ok" : " FAIL")
        << '\n';
    ok = ok && diff <= 1e-12;
  }
  if (!ok) {
    err << "check-losses: tolerance exceeded\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace ctrack::cli
