#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "savch/diagnostics.hpp"
#include "savch/experiments.hpp"

namespace savch {

/// Raised for malformed configuration text.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for unreadable, unwritable or malformed files; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckFlags {
  bool energy_law = true;
  bool mass = true;
  bool oracle = false;

  bool operator==(const CheckFlags&) const = default;
};

struct RunConfig {
  ScenarioSpec scenario;
  bool dealias = false;
  std::filesystem::path output_dir = "out";
  long snapshot_every = 100;
  long trace_every = 1;
  bool images = true;
  CheckFlags checks;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses the INI-style run configuration (sections [scenario], [params],
/// [output], [checks]; `key = value` lines; `;` or `#` comments). Absent keys
/// take the scenario defaults; unknown keys, malformed values and a missing
/// scenario name are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

inline constexpr std::string_view kEnergyCsvHeader = "time,discrete_modified,continuous_modified,original,mass,dissipation";

void write_energy_csv(std::span<const EnergyRecord> records, const std::filesystem::path& path);
std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path);

struct Snapshot {
  ScalarField field;
  double time = 0.0;
};

inline constexpr std::string_view kSnapshotMagic = "SAVFLD01";

/// Binary layout: 8-byte magic, little-endian uint32 metadata length, metadata
/// text `dim,n1,n2[,n3],time`, then the samples as little-endian float64, row-major.
void write_snapshot(const ScalarField& field, double time, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);

/// 8-bit binary PGM of a 2D field, or of the slice `index` normal to `axis`
/// of a 3D field. Values map affinely from [-1.05, 1.05] onto [0, 255].
void export_slice_image(const ScalarField& field, const std::filesystem::path& path, int axis = 0, int index = 0);

/// Grey level for one sample; rounds half away from zero and clamps.
unsigned char grey_level(double value) noexcept;

/// Formats a ConvergenceRow table with one row per time step.
std::string format_convergence_table(std::span<const ConvergenceRow> rows);

}  // namespace savch
