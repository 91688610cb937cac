#include "savch/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

namespace savch {

namespace pt = boost::property_tree;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, const std::string& key) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a real number, got '" + std::string(text) + "'");
  }
  return v;
}

long parse_long(std::string_view text, const std::string& key) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + std::string(text) + "'");
}

std::vector<int> parse_points(std::string_view text, const std::string& key) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(static_cast<int>(parse_long(item, key)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::set<std::string> kScenarioKeys = {"name", "points", "dt", "t_final", "seed", "value", "dealias"};
const std::set<std::string> kParamKeys = {"eps", "alpha", "beta", "s1", "s2", "s3", "m0", "b", "delta_n", "kind"};
const std::set<std::string> kOutputKeys = {"dir", "snapshot_every", "trace_every", "images"};
const std::set<std::string> kCheckKeys = {"energy_law", "mass", "oracle"};

const std::set<std::string>* keys_for(const std::string& section) {
  if (section == "scenario") return &kScenarioKeys;
  if (section == "params") return &kParamKeys;
  if (section == "output") return &kOutputKeys;
  if (section == "checks") return &kCheckKeys;
  return nullptr;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  const auto& x = a.scenario;
  const auto& y = b.scenario;
  return x.name == y.name && x.grid == y.grid && x.params == y.params && x.dt == y.dt && x.t_final == y.t_final &&
         x.seed == y.seed && x.constant_value == y.constant_value && a.dealias == b.dealias &&
         a.output_dir == b.output_dir && a.snapshot_every == b.snapshot_every && a.trace_every == b.trace_every &&
         a.images == b.images && a.checks == b.checks;
}

RunConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto* allowed = keys_for(section);
    if (allowed == nullptr) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside of any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (allowed->count(key) == 0) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }

  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    const auto child = tree.get_child_optional(pt::ptree::path_type(section + "/" + key, '/'));
    if (!child) return std::nullopt;
    return child->data();
  };

  const auto name = get("scenario", "name");
  if (!name) throw ConfigError("missing required key 'name' in [scenario]");
  Scenario scenario;
  try {
    scenario = parse_scenario(*name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  cfg.scenario = default_scenario(scenario);
  ScenarioSpec& spec = cfg.scenario;
  ModelParams& p = spec.params;

  if (auto v = get("scenario", "points")) {
    std::vector<int> pts = parse_points(*v, "points");
    const int dim = scenario_dim(scenario);
    if (pts.size() == 1) pts.assign(static_cast<std::size_t>(dim), pts.front());
    try {
      spec.grid = Grid(dim, pts);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("key 'points': ") + e.what());
    }
  }
  if (auto v = get("scenario", "dt")) spec.dt = parse_double(*v, "dt");
  if (auto v = get("scenario", "t_final")) spec.t_final = parse_double(*v, "t_final");
  if (auto v = get("scenario", "seed")) {
    const long seed = parse_long(*v, "seed");
    if (seed < 0) throw ConfigError("key 'seed' must be >= 0");
    spec.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto v = get("scenario", "value")) spec.constant_value = parse_double(*v, "value");
  if (auto v = get("scenario", "dealias")) cfg.dealias = parse_bool(*v, "dealias");

  const bool m0_given = get("params", "m0").has_value();
  struct RealKey {
    const char* key;
    double* target;
  };
  const RealKey reals[] = {{"eps", &p.eps}, {"alpha", &p.alpha}, {"beta", &p.beta}, {"s1", &p.s1},
                           {"s2", &p.s2},   {"s3", &p.s3},       {"m0", &p.m0},     {"b", &p.b},
                           {"delta_n", &p.delta_n}};
  for (const auto& r : reals) {
    if (auto v = get("params", r.key)) *r.target = parse_double(*v, r.key);
  }
  if (auto v = get("params", "kind")) {
    try {
      p.kind = parse_regularization(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  // The manufactured test ties the mobility to eps^2 unless overridden.
  if (scenario == Scenario::ExactTrig && !m0_given) p.m0 = p.eps * p.eps;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (auto v = get("output", "dir")) cfg.output_dir = *v;
  if (auto v = get("output", "snapshot_every")) cfg.snapshot_every = parse_long(*v, "snapshot_every");
  if (auto v = get("output", "trace_every")) cfg.trace_every = parse_long(*v, "trace_every");
  if (auto v = get("output", "images")) cfg.images = parse_bool(*v, "images");
  if (auto v = get("checks", "energy_law")) cfg.checks.energy_law = parse_bool(*v, "energy_law");
  if (auto v = get("checks", "mass")) cfg.checks.mass = parse_bool(*v, "mass");
  if (auto v = get("checks", "oracle")) cfg.checks.oracle = parse_bool(*v, "oracle");

  if (!(spec.dt > 0.0)) throw ConfigError("key 'dt' must be > 0");
  if (!(spec.t_final > 0.0)) throw ConfigError("key 't_final' must be > 0");
  if (cfg.snapshot_every < 1) throw ConfigError("key 'snapshot_every' must be >= 1");
  if (cfg.trace_every < 1) throw ConfigError("key 'trace_every' must be >= 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  const auto& s = cfg.scenario;
  const auto& p = s.params;
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream out;
  out << "[scenario]\n";
  out << "name = " << to_string(s.name) << "\n";
  out << "points = ";
  for (int a = 0; a < s.grid.dim(); ++a) out << (a ? "," : "") << s.grid.points(a);
  out << "\n";
  out << "dt = " << format_double(s.dt) << "\n";
  out << "t_final = " << format_double(s.t_final) << "\n";
  out << "seed = " << s.seed << "\n";
  out << "value = " << format_double(s.constant_value) << "\n";
  out << "dealias = " << b(cfg.dealias) << "\n\n";
  out << "[params]\n";
  out << "eps = " << format_double(p.eps) << "\n";
  out << "alpha = " << format_double(p.alpha) << "\n";
  out << "beta = " << format_double(p.beta) << "\n";
  out << "s1 = " << format_double(p.s1) << "\n";
  out << "s2 = " << format_double(p.s2) << "\n";
  out << "s3 = " << format_double(p.s3) << "\n";
  out << "m0 = " << format_double(p.m0) << "\n";
  out << "b = " << format_double(p.b) << "\n";
  out << "delta_n = " << format_double(p.delta_n) << "\n";
  out << "kind = " << to_string(p.kind) << "\n\n";
  out << "[output]\n";
  out << "dir = " << cfg.output_dir.string() << "\n";
  out << "snapshot_every = " << cfg.snapshot_every << "\n";
  out << "trace_every = " << cfg.trace_every << "\n";
  out << "images = " << b(cfg.images) << "\n\n";
  out << "[checks]\n";
  out << "energy_law = " << b(cfg.checks.energy_law) << "\n";
  out << "mass = " << b(cfg.checks.mass) << "\n";
  out << "oracle = " << b(cfg.checks.oracle) << "\n";
  return out.str();
}

void write_energy_csv(std::span<const EnergyRecord> records, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << kEnergyCsvHeader << "\n";
  for (const auto& r : records) {
    out << format_double(r.time) << ',' << format_double(r.discrete_modified) << ','
        << format_double(r.continuous_modified) << ',' << format_double(r.original) << ',' << format_double(r.mass)
        << ',' << format_double(r.dissipation) << "\n";
  }
  finish(out, path);
}

std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kEnergyCsvHeader) {
    throw IoError("'" + path.string() + "' does not start with the energy trace header");
  }
  std::vector<EnergyRecord> out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v[6];
    std::size_t start = 0;
    for (int c = 0; c < 6; ++c) {
      const std::size_t comma = line.find(',', start);
      if ((c < 5) == (comma == std::string::npos)) {
        throw IoError("'" + path.string() + "' line " + std::to_string(line_no) + ": expected 6 columns");
      }
      const std::string_view cell = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v[c]);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw IoError("'" + path.string() + "' line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
      }
      start = comma + 1;
    }
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return out;
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

}  // namespace

void write_snapshot(const ScalarField& field, double time, const std::filesystem::path& path) {
  const Grid& g = field.grid();
  std::string meta = std::to_string(g.dim());
  for (int a = 0; a < g.dim(); ++a) meta += "," + std::to_string(g.points(a));
  meta += "," + format_double(time);

  std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
  out.write(kSnapshotMagic.data(), static_cast<std::streamsize>(kSnapshotMagic.size()));
  const std::uint32_t len = to_little(static_cast<std::uint32_t>(meta.size()));
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(meta.data(), static_cast<std::streamsize>(meta.size()));
  for (double v : field.values()) {
    const auto bits = to_little(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  finish(out, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = "'" + path.string() + "': ";
  if (bytes.size() < kSnapshotMagic.size() + 4 || std::string_view(bytes).substr(0, 8) != kSnapshotMagic) {
    throw IoError(where + "magic mismatch (not a SAVFLD01 snapshot)");
  }
  std::uint32_t len = 0;
  std::memcpy(&len, bytes.data() + 8, sizeof len);
  len = to_little(len);
  const std::size_t header = 12 + static_cast<std::size_t>(len);
  if (bytes.size() < header) throw IoError(where + "size mismatch (truncated metadata)");
  const std::string meta = bytes.substr(12, len);

  std::vector<std::string> parts;
  std::stringstream ss(meta);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() < 4) throw IoError(where + "malformed metadata '" + meta + "'");
  int dim = 0;
  std::vector<int> pts;
  double time = 0.0;
  try {
    dim = std::stoi(parts[0]);
    if (parts.size() != static_cast<std::size_t>(dim) + 2) throw std::invalid_argument("field count");
    for (int a = 0; a < dim; ++a) pts.push_back(std::stoi(parts[1 + a]));
    time = std::stod(parts.back());
  } catch (const std::exception&) {
    throw IoError(where + "malformed metadata '" + meta + "'");
  }
  Grid grid(dim, pts);
  const std::size_t expected = header + grid.size() * sizeof(double);
  if (bytes.size() != expected) {
    throw IoError(where + "size mismatch: expected " + std::to_string(expected) + " bytes, found " +
                  std::to_string(bytes.size()));
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + header + i * sizeof bits, sizeof bits);
    values[i] = std::bit_cast<double>(to_little(bits));
  }
  return {ScalarField(grid, std::move(values)), time};
}

unsigned char grey_level(double value) noexcept {
  const double scaled = (value + 1.05) / 2.1 * 255.0;
  const double rounded = std::round(scaled);
  if (!(rounded > 0.0)) return 0;
  if (rounded >= 255.0) return 255;
  return static_cast<unsigned char>(rounded);
}

void export_slice_image(const ScalarField& field, const std::filesystem::path& path, int axis, int index) {
  const Grid& g = field.grid();
  int rows_axis = 0;
  int cols_axis = 1;
  if (g.dim() == 3) {
    if (axis < 0 || axis > 2) throw std::out_of_range("slice axis " + std::to_string(axis) + " out of range");
    if (index < 0 || index >= g.points(axis)) {
      throw std::out_of_range("slice index " + std::to_string(index) + " out of range for axis of " +
                              std::to_string(g.points(axis)) + " points");
    }
    rows_axis = axis == 0 ? 1 : 0;
    cols_axis = axis == 2 ? 1 : 2;
  }
  const int rows = g.points(rows_axis);
  const int cols = g.points(cols_axis);
  std::string pixels(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), '\0');
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::array<int, 3> idx{};
      if (g.dim() == 3) idx[axis] = index;
      idx[rows_axis] = r;
      idx[cols_axis] = c;
      pixels[static_cast<std::size_t>(r) * cols + c] = static_cast<char>(grey_level(field[g.flat_index(idx)]));
    }
  }
  std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  finish(out, path);
}

std::string format_convergence_table(std::span<const ConvergenceRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "dt" << std::setw(14) << "l2_error" << "order\n";
  for (const auto& r : rows) {
    char dt[32];
    char err[32];
    std::snprintf(dt, sizeof dt, "%.6g", r.dt);
    std::snprintf(err, sizeof err, "%.3e", r.l2_error);
    out << std::setw(14) << dt << std::setw(14) << err;
    if (r.observed_order) {
      char ord[32];
      std::snprintf(ord, sizeof ord, "%.2f", *r.observed_order);
      out << ord;
    } else {
      out << "-";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace savch
