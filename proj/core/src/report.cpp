#include "burnett/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "burnett/types.hpp"

namespace burnett {
namespace {

namespace fs = std::filesystem;

// All quantities are nondimensionalized; every column carries the unit tag
// [1] so headers stay self-describing.
std::string col(const std::string& name) { return name + " [1]"; }

double cell_x(const GridSpec& g, int ix) {
  return g.x0 + (ix + 0.5) * (g.x1 - g.x0) / g.nx;
}
double cell_y(const GridSpec& g, int iy) {
  return g.y0 + (iy + 0.5) * (g.y1 - g.y0) / g.ny;
}

std::string snapshot_stem(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%03zu", index);
  return buf;
}

double quantity_value(const SnapshotGrid& snap, const std::string& q, int c) {
  const MomentSet& m = snap.moments[c];
  if (q == "rho") return m.rho;
  if (q == "u1") return m.u[0];
  if (q == "u2") return m.u[1];
  if (q == "theta") return m.theta;
  if (q == "q1") return m.q[0];
  if (q == "q2") return m.q[1];
  if (q == "sigma12") return m.sigma(0, 1);
  if (q == "m0") return static_cast<double>(snap.m0[c]);
  if (q == "indicator") return snap.indicator[c];
  throw std::logic_error("unknown report quantity: " + q);
}

void quantity_store(SnapshotGrid& snap, const std::string& q, int c, double v) {
  MomentSet& m = snap.moments[c];
  if (q == "rho") m.rho = v;
  else if (q == "u1") m.u[0] = v;
  else if (q == "u2") m.u[1] = v;
  else if (q == "theta") m.theta = v;
  else if (q == "q1") m.q[0] = v;
  else if (q == "q2") m.q[1] = v;
  else if (q == "sigma12") { m.sigma(0, 1) = v; m.sigma(1, 0) = v; }
  else if (q == "m0") snap.m0[c] = static_cast<int>(std::lround(v));
  else if (q == "indicator") snap.indicator[c] = v;
  else throw std::logic_error("unknown report quantity: " + q);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') { field += '"'; ++i; }
        else quoted = false;
      } else field += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("report: cannot read " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(split_csv_line(line));
  return rows;
}

double parse_field(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("report: bad numeric field '" + s + "' in " + path);
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("report: cannot write " + path.string());
  out << text;
}

const std::vector<std::string>& comparison_quantities(int dimension) {
  static const std::vector<std::string> q1{"rho", "u1", "theta", "q1"};
  static const std::vector<std::string> q2{"rho",    "u1", "u2",     "theta",
                                           "q1",     "q2", "sigma12"};
  return dimension == 1 ? q1 : q2;
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_snapshot_csv_1d(const GridSpec& grid, const SnapshotGrid& snap,
                           std::ostream& out) {
  out << col("x") << ',' << col("rho") << ',' << col("u1") << ','
      << col("theta") << ',' << col("q1") << ',' << col("m0") << ','
      << col("indicator") << "\r\n";
  for (int ix = 0; ix < grid.nx; ++ix) {
    const MomentSet& m = snap.moments[ix];
    out << csv_num(cell_x(grid, ix)) << ',' << csv_num(m.rho) << ','
        << csv_num(m.u[0]) << ',' << csv_num(m.theta) << ','
        << csv_num(m.q[0]) << ',' << snap.m0[ix] << ','
        << csv_num(snap.indicator[ix]) << "\r\n";
  }
}

const std::vector<std::string>& grid_quantities_2d() {
  static const std::vector<std::string> q{"rho",     "u1", "u2",
                                          "theta",   "q1", "q2",
                                          "sigma12", "m0", "indicator"};
  return q;
}

void write_snapshot_csv_2d(const GridSpec& grid, const SnapshotGrid& snap,
                           const std::string& quantity, std::ostream& out) {
  out << csv_field(col("y\\x"));
  for (int ix = 0; ix < grid.nx; ++ix) out << ',' << csv_num(cell_x(grid, ix));
  out << "\r\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    out << csv_num(cell_y(grid, iy));
    for (int ix = 0; ix < grid.nx; ++ix)
      out << ',' << csv_num(quantity_value(snap, quantity, iy * grid.nx + ix));
    out << "\r\n";
  }
}

void write_timing_csv(const PhaseTimes& timing, std::ostream& out,
                      double t_ref_seconds) {
  const double total =
      timing.transport + timing.collision + timing.indicator + timing.adaptation;
  out << "key,value\r\n";
  out << "steps," << timing.steps << "\r\n";
  out << "transport_seconds," << csv_num(timing.transport) << "\r\n";
  out << "collision_seconds," << csv_num(timing.collision) << "\r\n";
  out << "indicator_seconds," << csv_num(timing.indicator) << "\r\n";
  out << "adaptation_seconds," << csv_num(timing.adaptation) << "\r\n";
  out << "total_seconds," << csv_num(total) << "\r\n";
  out << "mean_step_seconds,"
      << csv_num(timing.steps > 0 ? total / timing.steps : 0.0) << "\r\n";
  out << "indicator_share,"
      << csv_num(total > 0.0 ? (timing.indicator + timing.adaptation) / total
                             : 0.0)
      << "\r\n";
  if (t_ref_seconds >= 0.0) {
    out << "reference_total_seconds," << csv_num(t_ref_seconds) << "\r\n";
    out << "speedup,"
        << csv_num(total > 0.0 ? t_ref_seconds / total : 0.0) << "\r\n";
  }
}

LoadedRun read_run_report(const std::string& dir, const GridSpec& grid) {
  LoadedRun result;
  const fs::path base(dir);

  const auto index = read_csv((base / "snapshots.csv").string());
  for (std::size_t r = 1; r < index.size(); ++r) {
    const auto& row = index[r];
    if (row.size() < 2)
      throw config_error("report: malformed snapshots.csv in " + dir);
    SnapshotGrid snap;
    snap.t = parse_field(row[1], "snapshots.csv");
    const int cells = grid.nx * grid.ny;
    snap.moments.assign(cells, MomentSet{});
    snap.m0.assign(cells, 0);
    snap.indicator.assign(cells, 0.0);
    const std::string stem = snapshot_stem(r - 1);
    if (grid.dimension == 1) {
      const auto rows = read_csv((base / (stem + ".csv")).string());
      if (static_cast<int>(rows.size()) != grid.nx + 1)
        throw config_error("report: wrong row count in " + stem + ".csv");
      for (int ix = 0; ix < grid.nx; ++ix) {
        const auto& cr = rows[ix + 1];
        if (cr.size() != 7)
          throw config_error("report: wrong column count in " + stem + ".csv");
        quantity_store(snap, "rho", ix, parse_field(cr[1], stem));
        quantity_store(snap, "u1", ix, parse_field(cr[2], stem));
        quantity_store(snap, "theta", ix, parse_field(cr[3], stem));
        quantity_store(snap, "q1", ix, parse_field(cr[4], stem));
        quantity_store(snap, "m0", ix, parse_field(cr[5], stem));
        quantity_store(snap, "indicator", ix, parse_field(cr[6], stem));
      }
    } else {
      for (const std::string& q : grid_quantities_2d()) {
        const std::string name = stem + "_" + q + ".csv";
        const auto rows = read_csv((base / name).string());
        if (static_cast<int>(rows.size()) != grid.ny + 1)
          throw config_error("report: wrong row count in " + name);
        for (int iy = 0; iy < grid.ny; ++iy) {
          const auto& cr = rows[iy + 1];
          if (static_cast<int>(cr.size()) != grid.nx + 1)
            throw config_error("report: wrong column count in " + name);
          for (int ix = 0; ix < grid.nx; ++ix)
            quantity_store(snap, q, iy * grid.nx + ix,
                           parse_field(cr[ix + 1], name));
        }
      }
    }
    result.snapshots.push_back(std::move(snap));
  }

  for (const auto& row : read_csv((base / "timing.csv").string()))
    if (row.size() == 2 && row[0] == "total_seconds")
      result.wall_seconds = parse_field(row[1], "timing.csv");
  return result;
}

void write_comparison_csv(const GridSpec& grid,
                          const std::vector<SnapshotGrid>& run,
                          const std::vector<SnapshotGrid>& ref,
                          std::ostream& out) {
  if (run.size() != ref.size())
    throw config_error("report: reference has a different snapshot count");
  out << "snapshot,t,t_ref,quantity,rel_l2\r\n";
  const int cells = grid.nx * grid.ny;
  for (std::size_t s = 0; s < run.size(); ++s) {
    for (const std::string& q : comparison_quantities(grid.dimension)) {
      std::vector<double> a(cells), b(cells);
      for (int c = 0; c < cells; ++c) {
        a[c] = quantity_value(run[s], q, c);
        b[c] = quantity_value(ref[s], q, c);
      }
      out << s << ',' << csv_num(run[s].t) << ',' << csv_num(ref[s].t) << ','
          << q << ',' << csv_num(rel_l2(a, b)) << "\r\n";
    }
  }
}

std::vector<std::string> write_run_report(const ScenarioConfig& config,
                                          const RunResult& run,
                                          const std::string& dir,
                                          const LoadedRun* reference) {
  const fs::path base(dir);
  fs::create_directories(base);
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    write_file(base / name, text);
    written.push_back(name);
  };

  emit("config.ini", emit_config(config));

  std::ostringstream index;
  index << "snapshot,t,files\r\n";
  for (std::size_t s = 0; s < run.snapshots.size(); ++s) {
    const std::string stem = snapshot_stem(s);
    if (config.grid.dimension == 1) {
      std::ostringstream os;
      write_snapshot_csv_1d(config.grid, run.snapshots[s], os);
      emit(stem + ".csv", os.str());
      index << s << ',' << csv_num(run.snapshots[s].t) << ',' << stem
            << ".csv\r\n";
    } else {
      std::string files;
      for (const std::string& q : grid_quantities_2d()) {
        std::ostringstream os;
        write_snapshot_csv_2d(config.grid, run.snapshots[s], q, os);
        emit(stem + "_" + q + ".csv", os.str());
        files += (files.empty() ? "" : ";") + stem + "_" + q + ".csv";
      }
      index << s << ',' << csv_num(run.snapshots[s].t) << ','
            << csv_field(files) << "\r\n";
    }
  }
  emit("snapshots.csv", index.str());

  {
    std::ostringstream os;
    write_timing_csv(run.timing, os,
                     reference ? reference->wall_seconds : -1.0);
    emit("timing.csv", os.str());
  }

  if (reference) {
    std::ostringstream os;
    write_comparison_csv(config.grid, run.snapshots, reference->snapshots, os);
    emit("comparison.csv", os.str());
  }
  return written;
}

}  // namespace burnett
