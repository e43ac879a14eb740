#include "ctrack/sim_config.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "ctrack/io.hpp"

namespace ctrack {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double number(std::string_view text, std::size_t line) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "invalid number '" + std::string(text) + "'");
  }
  return v;
}

int integer(std::string_view text, std::size_t line) {
  const double v = number(text, line);
  if (v != static_cast<double>(static_cast<long long>(v))) {
    throw ParseError(line, "expected an integer, got '" + std::string(trim(text)) + "'");
  }
  return static_cast<int>(v);
}

Waypoint parse_waypoint(std::string_view token, std::size_t line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = token.find(':', start);
    parts.push_back(token.substr(start, colon == token.npos ? token.npos : colon - start));
    if (colon == token.npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 5) {
    throw ParseError(line, "waypoint must be frame:x:y or frame:x:y:w:h");
  }
  Waypoint w;
  w.frame = integer(parts[0], line);
  w.center = {number(parts[1], line), number(parts[2], line)};
  if (parts.size() == 5) w.size = Size2{number(parts[3], line), number(parts[4], line)};
  return w;
}

AgentSpec parse_agent(std::string_view value, std::size_t line) {
  std::istringstream tokens{std::string(value)};
  std::string w, h, depth;
  if (!(tokens >> w >> h >> depth)) throw ParseError(line, "agent needs <w> <h> <depth> waypoints...");
  AgentSpec a;
  a.size = {number(w, line), number(h, line)};
  a.depth = number(depth, line);
  std::string wp;
  while (tokens >> wp) a.waypoints.push_back(parse_waypoint(wp, line));
  if (a.waypoints.empty()) throw ParseError(line, "agent needs at least one waypoint");
  return a;
}

}  // namespace

SimulationConfig parse_sim_config(std::istream& in) {
  SimulationConfig cfg;
  cfg.scenario.agents.clear();
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == line.npos) throw ParseError(n, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    auto& s = cfg.scenario;
    auto& z = cfg.noise;
    if (key == "frames") s.frames = integer(value, n);
    else if (key == "width") s.width = integer(value, n);
    else if (key == "height") s.height = integer(value, n);
    else if (key == "occlusion_iou") s.occlusion_iou = number(value, n);
    else if (key == "confidence_min") s.confidence_min = number(value, n);
    else if (key == "confidence_max") s.confidence_max = number(value, n);
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(integer(value, n));
    else if (key == "variant") {
      if (value == "wh") s.variant = TrackedSizeVariant::wh;
      else if (value == "ltrb") s.variant = TrackedSizeVariant::ltrb;
      else throw ParseError(n, "variant must be wh or ltrb");
    }
    else if (key == "noise.center") z.center_sigma = number(value, n);
    else if (key == "noise.size") z.size_sigma = number(value, n);
    else if (key == "noise.disp") z.disp_sigma = number(value, n);
    else if (key == "noise.ts") z.ts_sigma = number(value, n);
    else if (key == "noise.iou_bias") z.iou_pred_bias = number(value, n);
    else if (key == "noise.fp_rate") z.fp_rate = number(value, n);
    else if (key == "noise.fn_rate") z.fn_rate = number(value, n);
    else if (key == "agent") s.agents.push_back(parse_agent(value, n));
    else throw ParseError(n, "unknown key '" + std::string(key) + "'");
  }
  try {
    cfg.scenario.validate();
    cfg.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(n, e.what());
  }
  return cfg;
}

}  // namespace ctrack
