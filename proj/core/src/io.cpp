#include "ctrack/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

namespace ctrack {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("invalid number in field '") + name + "'");
  }
  return v;
}

int to_int(std::string_view field, std::size_t line, const char* name) {
  const double v = to_double(field, line, name);
  const auto i = static_cast<long long>(v);
  if (static_cast<double>(i) != v || i < INT32_MIN || i > INT32_MAX) {
    throw ParseError(line, std::string("expected integer in field '") + name + "'");
  }
  return static_cast<int>(i);
}

// Iterates non-blank lines with their 1-based numbers.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    fn(view, number);
  }
}

BoxLTRB box_from_tlwh(double left, double top, double w, double h) {
  return {left, top, left + w, top + h};
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<GtEntry> parse_mot(std::istream& in) {
  std::vector<GtEntry> out;
  for_each_line(in, [&](std::string_view line, std::size_t n) {
    const auto f = split_fields(line);
    if (f.size() < 9) throw ParseError(n, "expected at least 9 fields, got " + std::to_string(f.size()));
    GtEntry e;
    e.frame = to_int(f[0], n, "frame");
    e.track_id = to_int(f[1], n, "id");
    const double w = to_double(f[4], n, "bb_width");
    const double h = to_double(f[5], n, "bb_height");
    if (w < 0.0 || h < 0.0) throw ParseError(n, "negative box size");
    e.box = box_from_tlwh(to_double(f[2], n, "bb_left"), to_double(f[3], n, "bb_top"), w, h);
    e.consider = to_double(f[6], n, "conf") != 0.0;
    e.class_id = to_int(f[7], n, "class");
    e.visibility = to_double(f[8], n, "visibility");
    if (e.frame < 1) throw ParseError(n, "frame must be >= 1");
    if (e.track_id < 1) throw ParseError(n, "track id must be positive");
    if (e.visibility < 0.0 || e.visibility > 1.0) throw ParseError(n, "visibility outside [0, 1]");
    out.push_back(e);
  });
  return out;
}

void write_gt(std::ostream& out, const std::vector<GtEntry>& entries) {
  for (const auto& e : entries) {
    out << e.frame << ',' << e.track_id << ',' << format_number(e.box.left) << ','
        << format_number(e.box.top) << ',' << format_number(e.box.width()) << ','
        << format_number(e.box.height()) << ',' << (e.consider ? 1 : 0) << ',' << e.class_id << ','
        << format_number(e.visibility) << '\n';
  }
}

void write_mot(std::ostream& out, std::vector<TrackRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const TrackRecord& a, const TrackRecord& b) {
    return std::pair{a.frame, a.track_id} < std::pair{b.frame, b.track_id};
  });
  for (const auto& r : records) {
    out << r.frame << ',' << r.track_id << ',' << format_number(r.box.left) << ','
        << format_number(r.box.top) << ',' << format_number(r.box.width()) << ','
        << format_number(r.box.height()) << ',' << format_number(r.confidence) << ",-1,-1,-1\n";
  }
}

std::vector<TrackRecord> parse_tracks(std::istream& in) {
  std::vector<TrackRecord> out;
  for_each_line(in, [&](std::string_view line, std::size_t n) {
    const auto f = split_fields(line);
    if (f.size() < 7) throw ParseError(n, "expected at least 7 fields, got " + std::to_string(f.size()));
    TrackRecord r;
    r.frame = to_int(f[0], n, "frame");
    r.track_id = to_int(f[1], n, "id");
    const double w = to_double(f[4], n, "bb_width");
    const double h = to_double(f[5], n, "bb_height");
    if (w < 0.0 || h < 0.0) throw ParseError(n, "negative box size");
    r.box = box_from_tlwh(to_double(f[2], n, "bb_left"), to_double(f[3], n, "bb_top"), w, h);
    r.confidence = to_double(f[6], n, "conf");
    if (r.frame < 1) throw ParseError(n, "frame must be >= 1");
    if (r.track_id < 1) throw ParseError(n, "track id must be positive");
    out.push_back(r);
  });
  return out;
}

PredictionFile parse_predictions(std::istream& in) {
  PredictionFile file;
  bool have_header = false;
  std::map<int, std::vector<Detection>> by_frame;

  for_each_line(in, [&](std::string_view line, std::size_t n) {
    if (!have_header) {
      constexpr std::string_view key = "variant:";
      if (!line.starts_with(key)) throw ParseError(n, "expected 'variant: wh' or 'variant: ltrb' header");
      const std::string_view value = trim(line.substr(key.size()));
      if (value == "wh") {
        file.variant = TrackedSizeVariant::wh;
      } else if (value == "ltrb") {
        file.variant = TrackedSizeVariant::ltrb;
      } else {
        throw ParseError(n, "unknown variant '" + std::string(value) + "'");
      }
      have_header = true;
      return;
    }

    const auto f = split_fields(line);
    const std::size_t ts_fields = file.variant == TrackedSizeVariant::wh ? 2 : 4;
    const std::size_t expected = 9 + ts_fields + 1;
    if (f.size() != expected) {
      throw ParseError(n, "expected " + std::to_string(expected) + " fields for variant " +
                              to_string(file.variant) + ", got " + std::to_string(f.size()));
    }
    Detection d;
    d.frame = to_int(f[0], n, "frame");
    d.center = {to_double(f[1], n, "cx"), to_double(f[2], n, "cy")};
    d.size = {to_double(f[3], n, "w"), to_double(f[4], n, "h")};
    d.confidence = to_double(f[5], n, "conf");
    d.class_id = to_int(f[6], n, "class");
    d.disp = {to_double(f[7], n, "dx"), to_double(f[8], n, "dy")};
    if (ts_fields == 2) {
      d.tracked_size = TrackedSizeWH{to_double(f[9], n, "ts_w"), to_double(f[10], n, "ts_h")};
    } else {
      d.tracked_size = TrackedSizeLTRB{to_double(f[9], n, "ts_left"), to_double(f[10], n, "ts_top"),
                                       to_double(f[11], n, "ts_right"), to_double(f[12], n, "ts_bottom")};
    }
    d.iou_pred = to_double(f[expected - 1], n, "iou_pred");

    if (d.frame < 1) throw ParseError(n, "frame must be >= 1");
    if (d.size.w < 0.0 || d.size.h < 0.0) throw ParseError(n, "negative size");
    if (d.confidence < 0.0 || d.confidence > 1.0) throw ParseError(n, "confidence outside [0, 1]");
    if (d.iou_pred < 0.0 || d.iou_pred > 1.0) throw ParseError(n, "iou_pred outside [0, 1]");
    by_frame[d.frame].push_back(d);
  });

  if (!have_header) return file;
  const int last = by_frame.empty() ? 0 : by_frame.rbegin()->first;
  file.frames.reserve(static_cast<std::size_t>(last));
  for (int frame = 1; frame <= last; ++frame) {
    FrameDetections fd{frame, {}};
    if (auto it = by_frame.find(frame); it != by_frame.end()) fd.detections = std::move(it->second);
    file.frames.push_back(std::move(fd));
  }
  return file;
}

void write_predictions(std::ostream& out, const PredictionFile& file) {
  out << "variant: " << to_string(file.variant) << '\n';
  for (const auto& frame : file.frames) {
    for (const auto& d : frame.detections) {
      if (variant_of(d.tracked_size) != file.variant) {
        throw std::invalid_argument("write_predictions: detection variant does not match file");
      }
      out << frame.frame << ',' << format_number(d.center.x) << ',' << format_number(d.center.y) << ','
          << format_number(d.size.w) << ',' << format_number(d.size.h) << ','
          << format_number(d.confidence) << ',' << d.class_id << ',' << format_number(d.disp.dx) << ','
          << format_number(d.disp.dy) << ',';
      if (const auto* wh = std::get_if<TrackedSizeWH>(&d.tracked_size)) {
        out << format_number(wh->dw) << ',' << format_number(wh->dh);
      } else {
        const auto& lt = std::get<TrackedSizeLTRB>(d.tracked_size);
        out << format_number(lt.left) << ',' << format_number(lt.top) << ','
            << format_number(lt.right) << ',' << format_number(lt.bottom);
      }
      out << ',' << format_number(d.iou_pred) << '\n';
    }
  }
}

}  // namespace ctrack
