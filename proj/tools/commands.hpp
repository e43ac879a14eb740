#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ctrack/association.hpp"
#include "ctrack/geometry.hpp"

namespace ctrack::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kDomainError = 3 };

struct TrackOptions {
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> out;  // stdout when empty
  Strategy strategy = Strategy::iou;
  std::optional<TrackedSizeVariant> variant;  // defaults to the file header
  int lifetime = 30;
  double theta = 0.4;
  IouFilterForm iou_filter_form = IouFilterForm::rationale;
  unsigned threads = 1;
};

struct EvalOptions {
  std::filesystem::path gt;
  std::filesystem::path hyp;
  double iou_thresh = 0.5;
  bool json = false;
};

struct SimulateOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
};

struct CheckLossesOptions {
  int points = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-4;
};

int cmd_track(const TrackOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_check_losses(const CheckLossesOptions& opt, std::ostream& out, std::ostream& err);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ctrack::cli
