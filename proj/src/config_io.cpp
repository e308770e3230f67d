#include "binloc/config_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "binloc/errors.hpp"

namespace binloc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

struct Parser {
  const std::string& origin;
  int line = 0;

  double number(const std::string& v) const {
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
      fail(origin, line, "expected a number, got '" + v + "'");
    }
    return d;
  }

  std::vector<double> numbers(const std::string& v, std::size_t n) const {
    std::istringstream in(v);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(number(tok));
    if (out.size() != n) {
      fail(origin, line,
           "expected " + std::to_string(n) + " numbers, got '" + v + "'");
    }
    return out;
  }

  int integer(const std::string& v) const {
    double d = number(v);
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
      fail(origin, line, "expected an integer, got '" + v + "'");
    }
    return i;
  }

  bool boolean(const std::string& v) const {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(origin, line, "expected true/false, got '" + v + "'");
  }
};

}  // namespace

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
  ScenarioConfig cfg;
  Parser p{origin};
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::vector<std::pair<int, Vec2>> starts;  // (index, position)

  while (std::getline(in, raw)) {
    ++p.line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, p.line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "region" && section != "grid" && section != "agents" &&
          section != "model" && section != "world" && section != "timing" &&
          section != "control" && section != "run") {
        fail(origin, p.line, "unknown section [" + section + "]");
      }
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(origin, p.line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (section.empty()) fail(origin, p.line, "key outside any section");

    if (section == "region") {
      auto box = [&](const std::string& v) {
        auto q = p.numbers(v, 4);
        return Box{{q[0], q[1]}, {q[2], q[3]}};
      };
      if (key == "search") cfg.search_region = box(value);
      else if (key == "grid") cfg.grid_region = box(value);
      else fail(origin, p.line, "unknown key 'region." + key + "'");
    } else if (section == "grid") {
      if (key == "per_side") cfg.grid_per_side = p.integer(value);
      else fail(origin, p.line, "unknown key 'grid." + key + "'");
    } else if (section == "agents") {
      if (key == "count") {
        cfg.agent_count = p.integer(value);
      } else if (key.rfind("start", 0) == 0) {
        int idx = 0;
        try {
          idx = std::stoi(key.substr(5));
        } catch (...) {
          fail(origin, p.line, "unknown key 'agents." + key + "'");
        }
        auto xy = p.numbers(value, 2);
        starts.emplace_back(idx, Vec2{xy[0], xy[1]});
      } else {
        fail(origin, p.line, "unknown key 'agents." + key + "'");
      }
    } else if (section == "model") {
      if (key == "rx_area_m2") cfg.model.rx_area = p.number(value);
      else if (key == "tx_area_m2") cfg.model.tx_area = p.number(value);
      else if (key == "tx_power_w") cfg.model.tx_power = p.number(value);
      else if (key == "wavelength_m") cfg.model.wavelength = p.number(value);
      else if (key == "altitude_m") cfg.model.altitude = p.number(value);
      else if (key == "threshold_w") cfg.model.threshold = p.number(value);
      else if (key == "noise_sigma_w") cfg.model.noise_sigma = p.number(value);
      else fail(origin, p.line, "unknown key 'model." + key + "'");
    } else if (section == "world") {
      if (key == "tx_power_w") cfg.world_tx_power = p.number(value);
      else fail(origin, p.line, "unknown key 'world." + key + "'");
    } else if (section == "timing") {
      if (key == "period_s") cfg.timing.period = p.number(value);
      else if (key == "delay_s") cfg.timing.delay = p.number(value);
      else if (key == "dt_s") cfg.timing.dt = p.number(value);
      else fail(origin, p.line, "unknown key 'timing." + key + "'");
    } else if (section == "control") {
      if (key == "enabled") cfg.control.enabled = p.boolean(value);
      else if (key == "guidance") {
        if (value == "posterior_mean") cfg.control.guidance = Guidance::posterior_mean;
        else if (value == "map_estimate") cfg.control.guidance = Guidance::map_estimate;
        else fail(origin, p.line, "guidance must be posterior_mean or map_estimate");
      } else if (key == "radius_m") {
        if (value == "auto") {
          cfg.control.radius = std::numeric_limits<double>::quiet_NaN();
        } else {
          cfg.control.radius = p.number(value);
        }
      } else if (key == "radius_min_m") cfg.control.radius_min = p.number(value);
      else if (key == "radius_max_m") cfg.control.radius_max = p.number(value);
      else fail(origin, p.line, "unknown key 'control." + key + "'");
    } else if (section == "run") {
      if (key == "measurements") cfg.measurements = p.integer(value);
      else if (key == "source") {
        auto xy = p.numbers(value, 2);
        cfg.source = {xy[0], xy[1]};
      } else {
        fail(origin, p.line, "unknown key 'run." + key + "'");
      }
    }
  }

  if (!starts.empty()) {
    cfg.agent_start.assign(starts.size(), Vec2{});
    std::vector<bool> seen(starts.size(), false);
    for (auto& [idx, pos] : starts) {
      if (idx < 1 || idx > static_cast<int>(starts.size())) {
        throw ConfigError(origin + ": agent start indices must be 1..count");
      }
      if (seen[idx - 1]) {
        throw ConfigError(origin + ": duplicate agent start index " +
                          std::to_string(idx));
      }
      seen[idx - 1] = true;
      cfg.agent_start[idx - 1] = pos;
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  auto fd = format_double;
  os << "[region]\n";
  os << "search = " << fd(cfg.search_region.lo.x) << ' '
     << fd(cfg.search_region.lo.y) << ' ' << fd(cfg.search_region.hi.x) << ' '
     << fd(cfg.search_region.hi.y) << "\n";
  os << "grid = " << fd(cfg.grid_region.lo.x) << ' ' << fd(cfg.grid_region.lo.y)
     << ' ' << fd(cfg.grid_region.hi.x) << ' ' << fd(cfg.grid_region.hi.y)
     << "\n\n";
  os << "[grid]\n";
  os << "per_side = " << cfg.grid_per_side << "\n\n";
  os << "[agents]\n";
  os << "count = " << cfg.agent_count << "\n";
  for (std::size_t i = 0; i < cfg.agent_start.size(); ++i) {
    os << "start" << (i + 1) << " = " << fd(cfg.agent_start[i].x) << ' '
       << fd(cfg.agent_start[i].y) << "\n";
  }
  os << "\n[model]\n";
  os << "rx_area_m2 = " << fd(cfg.model.rx_area) << "\n";
  os << "tx_area_m2 = " << fd(cfg.model.tx_area) << "\n";
  os << "tx_power_w = " << fd(cfg.model.tx_power) << "\n";
  os << "wavelength_m = " << fd(cfg.model.wavelength) << "\n";
  os << "altitude_m = " << fd(cfg.model.altitude) << "\n";
  os << "threshold_w = " << fd(cfg.model.threshold) << "\n";
  os << "noise_sigma_w = " << fd(cfg.model.noise_sigma) << "\n";
  if (cfg.has_world_power()) {
    os << "\n[world]\n";
    os << "tx_power_w = " << fd(cfg.world_tx_power) << "\n";
  }
  os << "\n[timing]\n";
  os << "period_s = " << fd(cfg.timing.period) << "\n";
  os << "delay_s = " << fd(cfg.timing.delay) << "\n";
  os << "dt_s = " << fd(cfg.timing.dt) << "\n";
  os << "\n[control]\n";
  os << "enabled = " << (cfg.control.enabled ? "true" : "false") << "\n";
  os << "guidance = "
     << (cfg.control.guidance == Guidance::map_estimate ? "map_estimate"
                                                        : "posterior_mean")
     << "\n";
  if (std::isfinite(cfg.control.radius)) {
    os << "radius_m = " << fd(cfg.control.radius) << "\n";
  } else {
    os << "radius_m = auto\n";
  }
  os << "radius_min_m = " << fd(cfg.control.radius_min) << "\n";
  os << "radius_max_m = " << fd(cfg.control.radius_max) << "\n";
  os << "\n[run]\n";
  os << "measurements = " << cfg.measurements << "\n";
  if (cfg.has_fixed_source()) {
    os << "source = " << fd(cfg.source.x) << ' ' << fd(cfg.source.y) << "\n";
  }
  return os.str();
}

}  // namespace binloc
