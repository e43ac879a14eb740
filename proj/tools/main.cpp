#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

template <typename Enum>
std::vector<std::string> names_of(const std::map<std::string, Enum>& names) {
  std::vector<std::string> out;
  for (const auto& [k, _] : names) out.push_back(k);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ctrack;
  using namespace ctrack::cli;

  CLI::App app{"ctrack: box-association multi-object tracker and evaluation toolkit"};
  app.require_subcommand(1);

  const std::map<std::string, Strategy> strategies{{"dis", Strategy::dis},
                                                   {"iou", Strategy::iou},
                                                   {"combined", Strategy::combined},
                                                   {"iou-dis", Strategy::iou_then_dis},
                                                   {"dis-iou", Strategy::dis_then_iou}};
  const std::map<std::string, TrackedSizeVariant> variants{{"wh", TrackedSizeVariant::wh},
                                                           {"ltrb", TrackedSizeVariant::ltrb}};
  const std::map<std::string, IouFilterForm> forms{{"rationale", IouFilterForm::rationale},
                                                   {"cost", IouFilterForm::cost}};

  TrackOptions track;
  std::string track_out;
  std::string track_strategy = "iou";
  std::string track_variant;
  std::string track_form = "rationale";
  auto* track_cmd = app.add_subcommand("track", "Associate detections from a prediction file");
  track_cmd->add_option("predictions", track.predictions, "Prediction CSV file")->required();
  track_cmd->add_option("--strategy", track_strategy, "dis|iou|combined|iou-dis|dis-iou")
      ->check(CLI::IsMember(names_of(strategies)))
      ->capture_default_str();
  auto* variant_opt = track_cmd->add_option("--variant", track_variant, "wh|ltrb (must match the file header)")
                          ->check(CLI::IsMember(names_of(variants)));
  track_cmd->add_option("--lifetime", track.lifetime, "Frames an unmatched tracklet survives")
      ->default_val(30)
      ->check(CLI::PositiveNumber);
  track_cmd->add_option("--theta", track.theta, "Output confidence threshold")
      ->default_val(0.4)
      ->check(CLI::Range(0.0, 1.0));
  track_cmd->add_option("--iou-filter-form", track_form, "rationale|cost")
      ->check(CLI::IsMember(names_of(forms)))
      ->capture_default_str();
  track_cmd->add_option("--out", track_out, "Output MOT file (stdout if omitted)");
  track_cmd->add_option("--threads", track.threads, "Worker threads for cost matrices")
      ->default_val(1u)
      ->check(CLI::PositiveNumber);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "CLEAR-MOT and IDF1 of a result file");
  eval_cmd->add_option("gt", eval.gt, "Ground-truth MOT file")->required();
  eval_cmd->add_option("hyp", eval.hyp, "Tracker output MOT file")->required();
  eval_cmd->add_option("--iou-thresh", eval.iou_thresh, "Correspondence IOU threshold")
      ->default_val(0.5)
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_flag("--json", eval.json, "Machine-readable output");

  SimulateOptions sim;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic sequence");
  sim_cmd->add_option("config", sim.config, "Scenario config file")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", sim_seed, "Overrides the config seed");
  sim_cmd->add_option("--out-dir", sim.out_dir, "Directory for gt.txt and preds.csv")->default_val(".");

  CheckLossesOptions check;
  auto* check_cmd = app.add_subcommand("check-losses", "Gradient and fixture checks of the losses");
  check_cmd->add_option("--points", check.points, "Random interior points")->default_val(100);
  check_cmd->add_option("--seed", check.seed, "RNG seed")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*track_cmd) {
      if (!track_out.empty()) track.out = track_out;
      track.strategy = strategies.at(track_strategy);
      track.iou_filter_form = forms.at(track_form);
      if (*variant_opt) track.variant = variants.at(track_variant);
      return cmd_track(track, std::cout, std::cerr);
    }
    if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
    if (*sim_cmd) {
      if (*seed_opt) sim.seed = sim_seed;
      return cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*check_cmd) return cmd_check_losses(check, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
