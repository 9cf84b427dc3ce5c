#include "burnett/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace burnett {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw config_error(where + ": not a number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw config_error(where + ": not an integer: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw config_error(where + ": not a boolean: '" + s + "'");
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::string emit_vec3(const Vec3& v) {
  return fmt_double(v[0]) + ", " + fmt_double(v[1]) + ", " + fmt_double(v[2]);
}

Vec3 parse_vec3(const std::string& s, const std::string& where) {
  const auto parts = split_commas(s);
  if (parts.size() != 3)
    throw config_error(where + ": expected three comma-separated numbers");
  return {parse_double(parts[0], where), parse_double(parts[1], where),
          parse_double(parts[2], where)};
}

std::string emit_boundary(const BoundarySpec& b) {
  switch (b.kind) {
    case BoundaryKind::periodic:
      return "periodic";
    case BoundaryKind::neumann:
      return "neumann";
    case BoundaryKind::diffusive_wall:
      return "wall " + fmt_double(b.u_wall[0]) + " " + fmt_double(b.u_wall[1]) +
             " " + fmt_double(b.u_wall[2]) + " " + fmt_double(b.theta_wall);
  }
  return "periodic";
}

BoundarySpec parse_boundary(const std::string& s, const std::string& where) {
  BoundarySpec b;
  std::istringstream in(s);
  std::string kind;
  in >> kind;
  if (kind == "periodic") {
    b.kind = BoundaryKind::periodic;
  } else if (kind == "neumann") {
    b.kind = BoundaryKind::neumann;
  } else if (kind == "wall") {
    b.kind = BoundaryKind::diffusive_wall;
    if (!(in >> b.u_wall[0] >> b.u_wall[1] >> b.u_wall[2] >> b.theta_wall))
      throw config_error(where + ": wall needs 'wall ux uy uz theta'");
  } else {
    throw config_error(where + ": unknown boundary '" + kind + "'");
  }
  std::string rest;
  if (in >> rest)
    throw config_error(where + ": trailing tokens after boundary spec");
  return b;
}

struct KeyDef {
  const char* section;
  const char* key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
};

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = [] {
    std::vector<KeyDef> t;
    auto add_d = [&t](const char* sec, const char* key, double ScenarioConfig::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return fmt_double(c.*f); },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.*f = parse_double(v, w);
                   }});
    };
    auto add_i = [&t](const char* sec, const char* key, int ScenarioConfig::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return std::to_string(c.*f); },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.*f = static_cast<int>(parse_long(v, w));
                   }});
    };
    auto add_b = [&t](const char* sec, const char* key, bool ScenarioConfig::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return (c.*f) ? "true" : "false"; },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.*f = parse_bool(v, w);
                   }});
    };
    auto add_s = [&t](const char* sec, const char* key, std::string ScenarioConfig::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return c.*f; },
                   [f](ScenarioConfig& c, const std::string& v, const std::string&) {
                     c.*f = v;
                   }});
    };
    auto add_cd = [&t](const char* sec, const char* key, double CalibrationSpec::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return fmt_double(c.calibration.*f); },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.calibration.*f = parse_double(v, w);
                   }});
    };
    auto add_gi = [&t](const char* sec, const char* key, int GridSpec::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return std::to_string(c.grid.*f); },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.grid.*f = static_cast<int>(parse_long(v, w));
                   }});
    };
    auto add_gd = [&t](const char* sec, const char* key, double GridSpec::* f) {
      t.push_back({sec, key,
                   [f](const ScenarioConfig& c) { return fmt_double(c.grid.*f); },
                   [f](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.grid.*f = parse_double(v, w);
                   }});
    };
    auto add_bc = [&t](const char* key, int side) {
      t.push_back({"grid", key,
                   [side](const ScenarioConfig& c) { return emit_boundary(c.grid.bc[side]); },
                   [side](ScenarioConfig& c, const std::string& v, const std::string& w) {
                     c.grid.bc[side] = parse_boundary(v, w);
                   }});
    };

    t.push_back({"scenario", "kind",
                 [](const ScenarioConfig& c) { return scenario_name(c.scenario); },
                 [](ScenarioConfig& c, const std::string& v, const std::string& w) {
                   try {
                     c.scenario = scenario_from_name(v);
                   } catch (const config_error&) {
                     throw config_error(w + ": unknown scenario '" + v + "'");
                   }
                 }});
    add_d("scenario", "kn", &ScenarioConfig::kn);
    add_d("scenario", "wall_speed", &ScenarioConfig::wall_speed);
    add_d("scenario", "wall_theta", &ScenarioConfig::wall_theta);
    add_d("scenario", "lid_speed", &ScenarioConfig::lid_speed);
    add_d("scenario", "collide_speed", &ScenarioConfig::collide_speed);
    add_d("scenario", "collide_theta", &ScenarioConfig::collide_theta);
    add_d("scenario", "diffusion_density", &ScenarioConfig::diffusion_density);
    add_d("scenario", "diffusion_half_width", &ScenarioConfig::diffusion_half_width);

    add_i("basis", "m", &ScenarioConfig::M);
    add_i("basis", "m0_cap", &ScenarioConfig::m0_cap);
    add_i("basis", "m0_init", &ScenarioConfig::m0_init);
    add_i("basis", "tensor_cap", &ScenarioConfig::tensor_cap);
    t.push_back({"basis", "u_bar",
                 [](const ScenarioConfig& c) { return emit_vec3(c.u_bar); },
                 [](ScenarioConfig& c, const std::string& v, const std::string& w) {
                   c.u_bar = parse_vec3(v, w);
                 }});
    add_d("basis", "theta_bar", &ScenarioConfig::theta_bar);
    add_d("basis", "nu", &ScenarioConfig::nu);

    add_gi("grid", "dimension", &GridSpec::dimension);
    add_gi("grid", "nx", &GridSpec::nx);
    add_gi("grid", "ny", &GridSpec::ny);
    add_gd("grid", "x0", &GridSpec::x0);
    add_gd("grid", "x1", &GridSpec::x1);
    add_gd("grid", "y0", &GridSpec::y0);
    add_gd("grid", "y1", &GridSpec::y1);
    add_gi("grid", "axis", &GridSpec::axis);
    add_bc("bc_left", 0);
    add_bc("bc_right", 1);
    add_bc("bc_bottom", 2);
    add_bc("bc_top", 3);

    add_d("time", "cfl", &ScenarioConfig::cfl);
    add_d("time", "t_final", &ScenarioConfig::t_final);
    add_b("time", "steady", &ScenarioConfig::steady);
    add_d("time", "steady_tol", &ScenarioConfig::steady_tol);
    add_i("time", "steady_window", &ScenarioConfig::steady_window);
    add_d("time", "max_time", &ScenarioConfig::max_time);

    add_b("adapt", "adaptive", &ScenarioConfig::adaptive);
    add_d("adapt", "eps1", &ScenarioConfig::eps1);
    add_d("adapt", "eps2", &ScenarioConfig::eps2);
    add_i("adapt", "indicator_stride", &ScenarioConfig::indicator_stride);
    add_b("adapt", "probe_indicator", &ScenarioConfig::probe_indicator);
    add_i("adapt", "dense_directions", &ScenarioConfig::dense_directions);
    add_s("adapt", "spatial_thresholds", &ScenarioConfig::spatial_thresholds);

    add_cd("calibration", "closeness_tol", &CalibrationSpec::closeness_tol);
    add_cd("calibration", "halve_factor", &CalibrationSpec::halve_factor);
    t.push_back({"calibration", "max_runs",
                 [](const ScenarioConfig& c) { return std::to_string(c.calibration.max_runs); },
                 [](ScenarioConfig& c, const std::string& v, const std::string& w) {
                   c.calibration.max_runs = static_cast<int>(parse_long(v, w));
                 }});
    add_cd("calibration", "min_eps1", &CalibrationSpec::min_eps1);
    add_cd("calibration", "min_eps2", &CalibrationSpec::min_eps2);
    add_cd("calibration", "equilibrium_eps", &CalibrationSpec::equilibrium_eps);

    add_s("io", "cache", &ScenarioConfig::cache_path);
    add_s("io", "out_dir", &ScenarioConfig::out_dir);
    add_i("io", "workers", &ScenarioConfig::workers);
    t.push_back({"io", "seed",
                 [](const ScenarioConfig& c) { return std::to_string(c.seed); },
                 [](ScenarioConfig& c, const std::string& v, const std::string& w) {
                   char* end = nullptr;
                   c.seed = std::strtoul(v.c_str(), &end, 10);
                   if (end == v.c_str() || *end != '\0')
                     throw config_error(w + ": not an unsigned integer: '" + v + "'");
                 }});
    t.push_back({"io", "snapshot_times",
                 [](const ScenarioConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
                     if (i) s += ", ";
                     s += fmt_double(c.snapshot_times[i]);
                   }
                   return s;
                 },
                 [](ScenarioConfig& c, const std::string& v, const std::string& w) {
                   c.snapshot_times.clear();
                   for (const std::string& p : split_commas(v))
                     if (!p.empty()) c.snapshot_times.push_back(parse_double(p, w));
                 }});
    return t;
  }();
  return table;
}

}  // namespace

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::colliding_flow: return "colliding_flow";
    case ScenarioKind::couette: return "couette";
    case ScenarioKind::diffusion: return "diffusion";
    case ScenarioKind::cavity: return "cavity";
    case ScenarioKind::custom: return "custom";
  }
  return "custom";
}

ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "colliding_flow") return ScenarioKind::colliding_flow;
  if (name == "couette") return ScenarioKind::couette;
  if (name == "diffusion") return ScenarioKind::diffusion;
  if (name == "cavity") return ScenarioKind::cavity;
  if (name == "custom") return ScenarioKind::custom;
  throw config_error("unknown scenario name '" + name + "'");
}

ScenarioConfig preset_config(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::colliding_flow:
      c.M = 10;
      c.m0_cap = 8;
      c.kn = 0.5;
      c.u_bar = {0.0, 0.0, 0.0};
      c.theta_bar = 1.0;
      c.collide_speed = 1.0;
      c.collide_theta = 1.0 / 3.0;
      c.grid.dimension = 1;
      c.grid.nx = 100;
      c.grid.x0 = -20.0;
      c.grid.x1 = 20.0;
      c.grid.axis = 0;
      c.grid.bc[0].kind = BoundaryKind::neumann;
      c.grid.bc[1].kind = BoundaryKind::neumann;
      c.t_final = 5.0;
      c.eps1 = 1.0;
      c.eps2 = 4.0;
      break;
    case ScenarioKind::couette:
      c.M = 10;
      c.m0_cap = 8;
      c.kn = 0.5;
      c.wall_speed = 0.5;
      c.wall_theta = 1.0;
      c.grid.dimension = 1;
      c.grid.nx = 100;
      c.grid.x0 = -0.5;
      c.grid.x1 = 0.5;
      c.grid.axis = 1;  // plate-normal direction; u_1 is the tangential flow
      for (int side : {0, 1}) {
        c.grid.bc[side].kind = BoundaryKind::diffusive_wall;
        c.grid.bc[side].theta_wall = 1.0;
      }
      c.grid.bc[0].u_wall = {-0.5, 0.0, 0.0};
      c.grid.bc[1].u_wall = {0.5, 0.0, 0.0};
      c.steady = true;
      c.t_final = 0.0;
      c.eps1 = 1.0;
      c.eps2 = 8.0;
      break;
    case ScenarioKind::diffusion:
      c.M = 8;
      c.m0_cap = 8;
      c.kn = 0.05;
      c.diffusion_density = 10.0;
      c.diffusion_half_width = 0.05;
      c.grid.dimension = 2;
      c.grid.nx = 50;
      c.grid.ny = 50;
      c.grid.x0 = -0.5;
      c.grid.x1 = 0.5;
      c.grid.y0 = -0.5;
      c.grid.y1 = 0.5;
      for (int side = 0; side < 4; ++side)
        c.grid.bc[side].kind = BoundaryKind::neumann;
      c.t_final = 0.15;
      c.snapshot_times = {0.04, 0.08, 0.12, 0.15};
      c.eps1 = 2.5;
      c.eps2 = 8.5;
      break;
    case ScenarioKind::cavity:
      c.M = 8;
      c.m0_cap = 8;
      c.kn = 0.1;
      c.lid_speed = 0.0208;
      c.wall_theta = 1.0;
      c.grid.dimension = 2;
      c.grid.nx = 100;
      c.grid.ny = 100;
      c.grid.x0 = 0.0;
      c.grid.x1 = 1.0;
      c.grid.y0 = 0.0;
      c.grid.y1 = 1.0;
      for (int side = 0; side < 4; ++side) {
        c.grid.bc[side].kind = BoundaryKind::diffusive_wall;
        c.grid.bc[side].theta_wall = 1.0;
      }
      c.grid.bc[3].u_wall = {0.0208, 0.0, 0.0};  // moving lid on the top side
      c.steady = true;
      c.t_final = 0.0;
      c.eps1 = 0.05;
      c.eps2 = 0.20;
      break;
    case ScenarioKind::custom:
      break;
  }
  validate_config(c);
  return c;
}

void validate_config(const ScenarioConfig& c) {
  auto fail = [](const std::string& msg) { throw config_error("config: " + msg); };
  if (c.M < 3) fail("basis.m must be >= 3");
  if (c.m0_cap < 3 || c.m0_cap > c.M) fail("basis.m0_cap must be in [3, m]");
  if (c.m0_init != -1 && (c.m0_init < 3 || c.m0_init > c.m0_cap))
    fail("basis.m0_init must be -1 or in [3, m0_cap]");
  if (c.tensor_cap != -1 && (c.tensor_cap < 3 || c.tensor_cap > 12))
    fail("basis.tensor_cap must be -1 or in [3, 12]");
  if (!(c.theta_bar > 0.0)) fail("basis.theta_bar must be positive");
  if (!(c.nu >= 0.0 && c.nu <= 1.0)) fail("basis.nu must lie in [0, 1]");
  if (!(c.kn > 0.0)) fail("scenario.kn must be positive");
  if (c.grid.dimension != 1 && c.grid.dimension != 2)
    fail("grid.dimension must be 1 or 2");
  if (c.grid.nx < 1) fail("grid.nx must be >= 1");
  if (c.grid.dimension == 2 && c.grid.ny < 1) fail("grid.ny must be >= 1");
  if (!(c.grid.x1 > c.grid.x0)) fail("grid.x1 must exceed grid.x0");
  if (c.grid.dimension == 2 && !(c.grid.y1 > c.grid.y0))
    fail("grid.y1 must exceed grid.y0");
  if (c.grid.axis < 0 || c.grid.axis > 2) fail("grid.axis must be 0, 1, or 2");
  const int sides = c.grid.dimension == 1 ? 2 : 4;
  const bool p0 = c.grid.bc[0].kind == BoundaryKind::periodic;
  if ((c.grid.bc[1].kind == BoundaryKind::periodic) != p0)
    fail("grid.bc_left/bc_right must be both periodic or both not");
  if (sides == 4) {
    const bool p2 = c.grid.bc[2].kind == BoundaryKind::periodic;
    if ((c.grid.bc[3].kind == BoundaryKind::periodic) != p2)
      fail("grid.bc_bottom/bc_top must be both periodic or both not");
  }
  for (int side = 0; side < sides; ++side)
    if (c.grid.bc[side].kind == BoundaryKind::diffusive_wall &&
        !(c.grid.bc[side].theta_wall > 0.0))
      fail("wall temperature must be positive");
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) fail("time.cfl must lie in (0, 1)");
  if (!(c.t_final >= 0.0)) fail("time.t_final must be >= 0");
  if (c.steady && !(c.steady_tol > 0.0)) fail("time.steady_tol must be positive");
  if (c.steady && c.steady_window < 1) fail("time.steady_window must be >= 1");
  if (c.steady && !(c.max_time > 0.0)) fail("time.max_time must be positive");
  if (c.adaptive) {
    if (!(c.eps1 >= 0.0)) fail("adapt.eps1 must be >= 0");
    if (!(c.eps2 > c.eps1)) fail("adapt.eps1 must be less than adapt.eps2");
  }
  if (c.indicator_stride < 1) fail("adapt.indicator_stride must be >= 1");
  if (c.dense_directions < 0) fail("adapt.dense_directions must be >= 0");
  if (!c.spatial_thresholds.empty())
    fail("adapt.spatial_thresholds is reserved and must be empty");
  const CalibrationSpec& cal = c.calibration;
  if (!(cal.closeness_tol >= 0.0)) fail("calibration.closeness_tol must be >= 0");
  if (!(cal.halve_factor > 1.0)) fail("calibration.halve_factor must exceed 1");
  if (cal.max_runs < 1) fail("calibration.max_runs must be >= 1");
  if (!(cal.min_eps1 > 0.0 && cal.min_eps2 > cal.min_eps1))
    fail("calibration minimum thresholds must satisfy 0 < min_eps1 < min_eps2");
  if (c.workers < 1) fail("io.workers must be >= 1");
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    if (!(c.snapshot_times[i] >= 0.0)) fail("io.snapshot_times must be >= 0");
    if (i > 0 && !(c.snapshot_times[i] > c.snapshot_times[i - 1]))
      fail("io.snapshot_times must be strictly increasing");
  }
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
  // First pass: the named scenario supplies the baseline defaults, which the
  // remaining keys then override. A file that only names a preset is valid.
  ScenarioConfig c;
  {
    std::istringstream scan(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(scan, line)) {
      ++lineno;
      std::string s = trim(line);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() == ']') section = trim(s.substr(1, s.size() - 2));
        continue;
      }
      const std::size_t eq = s.find('=');
      if (eq == std::string::npos || section != "scenario") continue;
      if (trim(s.substr(0, eq)) == "kind") {
        const std::string where = origin + ":" + std::to_string(lineno);
        try {
          c = preset_config(scenario_from_name(trim(s.substr(eq + 1))));
        } catch (const config_error&) {
          throw config_error(where + ": unknown scenario '" +
                             trim(s.substr(eq + 1)) + "'");
        }
        break;
      }
    }
  }
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw config_error(where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      bool known = false;
      for (const KeyDef& k : key_table())
        if (section == k.section) { known = true; break; }
      if (!known) throw config_error(where + ": unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw config_error(where + ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty())
      throw config_error(where + ": key '" + key + "' outside any section");
    const KeyDef* def = nullptr;
    for (const KeyDef& k : key_table())
      if (section == k.section && key == k.key) { def = &k; break; }
    if (!def)
      throw config_error(where + ": unknown key '" + key + "' in section [" +
                         section + "]");
    def->set(c, value, where + " (" + section + "." + key + ")");
  }
  validate_config(c);
  return c;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string emit_config(const ScenarioConfig& c) {
  std::string out;
  std::string section;
  for (const KeyDef& k : key_table()) {
    if (section != k.section) {
      if (!out.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += std::string(k.key) + " = " + k.get(c) + "\n";
  }
  return out;
}

}  // namespace burnett
